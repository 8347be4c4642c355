"""Lubin-Tate formal groups built degree by degree in exact arithmetic.

Every construction here solves a functional equation against a Frobenius
series phi = pi*X + ... one homogeneous degree at a time.  The unknown
degree-d part c enters one side multiplied by pi and the other by pi^d.
The correction is therefore c = Delta / (pi^d - pi).  This division is
exact in the field and loses only valuation v(pi) per degree.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadFrobeniusReduction,
    BadLinearTerm,
    FieldMismatch,
    InputError,
    LevelTooLarge,
    NonIntegralCoefficients,
    NotInMaximalIdeal,
    NotPolynomialFrobenius,
    PrecisionExhausted,
    UniformizerMismatch,
)
from .poly import vp
from .padic import LocalFieldModel, PadicNumber, default_precision, determinant
from .series import (
    DEFAULT_ORDER,
    Series,
    compose1,
    embed,
    evaluate,
    evaluate_raw,
    series1,
    substitute,
)

MAX_LEVEL = 4


@dataclass(frozen=True, eq=False)
class FrobeniusSeries:
    """A series phi with phi = pi*X mod X^2 and phi = X^q mod pi."""

    field: LocalFieldModel
    phi: Series

    @property
    def pi(self) -> PadicNumber:
        return self.phi[1]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def is_polynomial(self) -> bool:
        return self.phi.trunc is None

    def to_json(self) -> dict:
        return self.phi.to_json()


def default_frobenius(field: LocalFieldModel, pi=None) -> FrobeniusSeries:
    """pi*X + X^q, with pi the model's Eisenstein generator unless given."""
    pi = field.uniformizer if pi is None else field.coerce(pi)
    phi = series1(field, {1: pi, field.q: 1}, None)
    return validate_frobenius(field, phi)


def validate_frobenius(field: LocalFieldModel, f: Series) -> FrobeniusSeries:
    if f.field != field:
        raise FieldMismatch(f"{f.field!r} vs {field!r}")
    if f.nvars != 1:
        raise InputError("a Frobenius series has one variable")
    if not f.constant_term.is_zero():
        raise BadLinearTerm("phi must vanish at 0")
    lin = f[1].valuation()
    if lin.at_least or lin.value != Fraction(1, field.e):
        raise BadLinearTerm(f"linear coefficient has valuation {lin}, need 1/{field.e}")
    q = field.q
    if f.trunc is not None and f.trunc < q:
        raise BadFrobeniusReduction(f"truncation order {f.trunc} hides the X^{q} term")
    for exp, c in f.coeffs.items():
        c_red = c - 1 if exp == (q,) else c
        v = c_red.valuation()
        if v.value is not None and not v.at_least and v.value <= 0:
            raise BadFrobeniusReduction(f"phi - X^{q} has a unit coefficient at degree {exp[0]}")
    if (q,) not in f.coeffs:
        raise BadFrobeniusReduction(f"phi has no X^{q} term")
    return FrobeniusSeries(field, f)


def _correction(delta: PadicNumber, pi: PadicNumber, d: int) -> PadicNumber:
    return delta / (pi ** d - pi)


def _phi_at(phi: FrobeniusSeries, D: int) -> Series:
    return phi.phi.truncate(D)


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    frobenius: FrobeniusSeries
    F: Series
    D: int

    @property
    def field(self) -> LocalFieldModel:
        return self.frobenius.field

    def to_json(self) -> dict:
        return {"phi": self.frobenius.to_json(), "F": self.F.to_json(), "D": self.D}


def formal_group_law(phi: FrobeniusSeries, D: int = DEFAULT_ORDER) -> FormalGroupLaw:
    """The unique F = X + Y + ... with phi(F(X, Y)) = F(phi(X), phi(Y))."""
    if D < 2:
        raise InputError("truncation order must be at least 2")
    k = phi.field
    X, Y = Series.variable(k, 0, 2, D), Series.variable(k, 1, 2, D)
    F = X + Y
    pi = phi.pi
    for d in range(2, D + 1):
        Fd = F.truncate(d)
        ph = _phi_at(phi, d)
        lhs = substitute(ph, Fd)
        rhs = substitute(Fd, embed(ph, 2, 0), embed(ph, 2, 1))
        corr = {}
        for exp, c in (lhs - rhs).homogeneous(d).items():
            if not c.is_zero():
                corr[exp] = _correction(c, pi, d)
        if corr:
            F = F + Series(k, 2, corr, D)
    return FormalGroupLaw(phi, F, D)


def multiplication_by(a, phi: FrobeniusSeries, D: int = DEFAULT_ORDER) -> Series:
    """[a]_phi: the unique a*X + ... commuting with phi."""
    k = phi.field
    a = k.coerce(a)
    va = a.valuation()
    if va.value is not None and not va.at_least and va.value < 0:
        raise NonIntegralCoefficients("a must be integral")
    A = series1(k, {1: a}, D)
    pi = phi.pi
    for d in range(2, D + 1):
        Ad = A.truncate(d)
        ph = _phi_at(phi, d)
        delta = (compose1(ph, Ad) - compose1(Ad, ph))[d]
        if not delta.is_zero():
            A = A + series1(k, {d: _correction(delta, pi, d)}, D)
    return A


def isomorphism_theta(phi: FrobeniusSeries, phi2: FrobeniusSeries, D: int = DEFAULT_ORDER) -> Series:
    """The unique theta = X + ... with phi2(theta) = theta(phi)."""
    if phi.field != phi2.field:
        raise FieldMismatch(f"{phi.field!r} vs {phi2.field!r}")
    if not (phi.pi.is_exact and phi2.pi.is_exact and phi.pi.coeffs == phi2.pi.coeffs):
        raise UniformizerMismatch("the two Frobenius series have different linear terms")
    k = phi.field
    T = series1(k, {1: 1}, D)
    pi = phi.pi
    for d in range(2, D + 1):
        Td = T.truncate(d)
        delta = (compose1(_phi_at(phi2, d), Td) - compose1(Td, _phi_at(phi, d)))[d]
        if not delta.is_zero():
            T = T + series1(k, {d: _correction(delta, pi, d)}, D)
    return T


def formal_log(phi: FrobeniusSeries, D: int = DEFAULT_ORDER) -> Series:
    """The logarithm: lambda = X + ... with lambda(phi(X)) = pi * lambda(X)."""
    if D < 1:
        raise InputError("truncation order must be at least 1")
    k = phi.field
    L = series1(k, {1: 1}, D)
    pi = phi.pi
    for d in range(2, D + 1):
        Ld = L.truncate(d)
        delta = (Ld * pi - compose1(Ld, _phi_at(phi, d)))[d]
        if not delta.is_zero():
            L = L + series1(k, {d: _correction(delta, pi, d)}, D)
    return L


def inverse_series(law: FormalGroupLaw) -> Series:
    """iota = -X + ... with F(X, iota(X)) = 0."""
    k = law.field
    D = law.D
    I = series1(k, {1: -1}, D)
    X = series1(k, {1: 1}, D)
    for d in range(2, D + 1):
        val = substitute(law.F.truncate(d), X.truncate(d), I.truncate(d))[d]
        if not val.is_zero():
            I = I - series1(k, {d: val}, D)
    return I


def log_coefficient_bound(field: LocalFieldModel, n: int) -> Fraction:
    """Lower bound -v(pi) * floor(log_q n) for the valuation of lambda's degree-n coefficient."""
    q, j = field.q, 0
    while q ** (j + 1) <= n:
        j += 1
    return -Fraction(j, field.e)


def log_tail_bound(field: LocalFieldModel, D: int, v: Fraction) -> Fraction:
    """Lower bound for v(sum_{n>D} lambda_n x^n) when v(x) >= v > 0."""
    q, vpi = field.q, Fraction(1, field.e)
    j = 0
    while q ** (j + 1) <= D + 1:
        j += 1
    best = None
    while True:
        n = max(q ** j, D + 1)
        cand = n * v - j * vpi
        best = cand if best is None else min(best, cand)
        if q ** j * (q - 1) * v >= vpi and q ** j >= D + 1:
            return best
        j += 1


# -- axioms ------------------------------------------------------------------------


def axiom_report(law: FormalGroupLaw) -> dict[str, bool]:
    """Check the group-law axioms coefficientwise through the law's order."""
    k, D, F = law.field, law.D, law.F
    X2, Y2 = Series.variable(k, 0, 2, D), Series.variable(k, 1, 2, D)
    zero2 = Series(k, 2, {}, D)
    X3, Y3, Z3 = (Series.variable(k, i, 3, D) for i in range(3))
    ph = _phi_at(law.frobenius, D)
    return {
        "commutative": F.equal_through(substitute(F, Y2, X2), D),
        "unit": substitute(F, X2, zero2).equal_through(X2, D),
        "associative": substitute(F, substitute(F, X3, Y3), Z3).equal_through(
            substitute(F, X3, substitute(F, Y3, Z3)), D),
        "phi_equivariant": substitute(ph, F).equal_through(
            substitute(F, embed(ph, 2, 0), embed(ph, 2, 1)), D),
    }


# -- points ---------------------------------------------------------------------------


def point_add(law: FormalGroupLaw, x, y, N=None) -> PadicNumber:
    return evaluate(law.F, x, y, N=N)


def point_neg(law: FormalGroupLaw, x, N=None) -> PadicNumber:
    return evaluate(inverse_series(law), x, N=N)


def point_sub(law: FormalGroupLaw, x, y, N=None) -> PadicNumber:
    return point_add(law, x, point_neg(law, y, N), N)


def point_mul(a, phi: FrobeniusSeries, x, D: int = DEFAULT_ORDER, N=None) -> PadicNumber:
    """a.x = [a]_phi(x); multiplication by pi evaluates phi itself."""
    k = phi.field
    a = k.coerce(a)
    if phi.is_polynomial and a.is_exact and a.coeffs == phi.pi.coeffs:
        return evaluate(phi.phi, x, N=N)
    return evaluate(multiplication_by(a, phi, D), x, N=N)


# -- torsion ------------------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionLayerReport:
    """Root valuations of phi^(n)(X) - a, normalized so that v(pi) = 1."""

    level: int
    total: int
    slopes: tuple  # ((valuation, count), ...) for nonzero roots, ascending
    new_slopes: tuple | None  # roots at this level only; None when a is given
    zero_root: bool

    def to_json(self) -> dict:
        out = {
            "level": self.level,
            "total": self.total,
            "slopes": [[s.numerator, s.denominator, c] for s, c in self.slopes],
        }
        if self.new_slopes is not None:
            out["new_slopes"] = [[s.numerator, s.denominator, c] for s, c in self.new_slopes]
        return out


def newton_polygon(vals: dict[int, Fraction]) -> list[tuple[Fraction, int]]:
    """Root valuations with multiplicities from {exponent: coefficient valuation}.

    Points with no valuation (zero coefficients) are absent from ``vals``.
    The lowest exponent present must be 0 for the roots to be nonzero.
    """
    pts = sorted(vals.items())
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out: dict[Fraction, int] = {}
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        root_val = (y1 - y2) / (x2 - x1)
        out[root_val] = out.get(root_val, 0) + (x2 - x1)
    return sorted(out.items())


def _valuations(f: Series, e: int) -> dict[int, Fraction]:
    out = {}
    for (n,), c in f.coeffs.items():
        v = c.valuation()
        if v.at_least:
            raise PrecisionExhausted(f"coefficient of X^{n} is zero at its precision")
        if v.value is not None:
            out[n] = v.value * e
    return out


def _shift_zero_root(vals: dict[int, Fraction]) -> dict[int, Fraction]:
    low = min(vals)
    return {n - low: v for n, v in vals.items()}


def _multiset_diff(a, b):
    rest = dict(a)
    for s, c in b:
        rest[s] -= c
    return tuple((s, c) for s, c in sorted(rest.items()) if c)


def torsion_newton_polygon(phi: FrobeniusSeries, n: int, a=None) -> TorsionLayerReport:
    """Newton polygon of the n-th iterate phi^(n)(X), or of phi^(n)(X) - a."""
    if not phi.is_polynomial or phi.phi.degree() != phi.q:
        raise NotPolynomialFrobenius(f"phi must be a polynomial of degree q = {phi.q}")
    if n < 1:
        raise InputError("level must be at least 1")
    if n > MAX_LEVEL:
        raise LevelTooLarge(f"level {n} exceeds {MAX_LEVEL}")
    k = phi.field
    e = k.e
    q = phi.q
    it = phi.phi
    levels = [it]
    for _ in range(n - 1):
        it = compose1(phi.phi, it)
        levels.append(it)
    total = q ** n
    if a is None:
        slopes = [newton_polygon(_shift_zero_root(_valuations(f, e))) for f in levels]
        if sum(c for _, c in slopes[-1]) + 1 != total:
            raise ArithmeticError("root count does not match q^n")
        new = tuple(slopes[-1]) if n == 1 else _multiset_diff(slopes[-1], slopes[-2])
        return TorsionLayerReport(n, total, tuple(slopes[-1]), new, True)
    a = k.coerce(a)
    va = a.valuation()
    if va.at_least or va.value is None:
        raise PrecisionExhausted("v(a) is not determined at the given precision")
    if va.value <= 0:
        raise NotInMaximalIdeal("a must lie in the maximal ideal")
    target = it - Series.constant(k, a, 1, None)
    slopes = newton_polygon(_valuations(target, e))
    if sum(c for _, c in slopes) != total:
        raise ArithmeticError("root count does not match q^n")
    return TorsionLayerReport(n, total, tuple(slopes), None, False)


# -- linear independence -------------------------------------------------------------------


@dataclass(frozen=True)
class IndependenceResult:
    """``independent`` is True with a certificate, or None for inconclusive."""

    independent: bool | None
    log_values: tuple
    certificate: dict | None = None
    reason: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.independent is None

    def to_json(self) -> dict:
        return {
            "independent": self.independent,
            "log_values": [x.to_json() for x in self.log_values],
            "certificate": self.certificate,
            "reason": self.reason,
        }


def _log_values(phi: FrobeniusSeries, points, D: int, N) -> list[PadicNumber]:
    lam = formal_log(phi, D)
    K = points[0].field
    if K != phi.field:
        lam = Series(K, 1, {e: c.rational() for e, c in lam.coeffs.items()}, lam.trunc)
    out = []
    for x in points:
        v = x.valuation()
        if v.at_least or v.value is None:
            raise PrecisionExhausted("a point is zero at its precision")
        if v.value <= 0:
            raise NotInMaximalIdeal(f"point of valuation {v.value} is not in the maximal ideal")
        raw = evaluate_raw(lam, [x], N)
        bound = log_tail_bound(phi.field, D, v.value)
        val = raw.to_capped(min(raw.prec, bound))
        if val.prec <= 0:
            raise PrecisionExhausted("order D too small: the log tail bound is not positive")
        out.append(val)
    return out


def _coordinate_error(x: PadicNumber) -> int:
    """Valuation below which every Q_p coordinate of x is known."""
    e = x.field.e
    return min(math.ceil(x.prec - Fraction(j, e)) for j in range(e))


def linear_independence(points, phi: FrobeniusSeries, D: int = DEFAULT_ORDER, N=None) -> IndependenceResult:
    """One-sided test that points are independent over O_k via their logarithms.

    Points in k itself have log values in a one-dimensional k-space.  A
    single point is independent iff its log is nonzero; several points
    are inconclusive.  When phi is over Q_p, points may lie in any field
    K with the same p, and their logs are compared as Q_p-vectors.
    """
    if not points:
        raise InputError("no points given")
    if N is None:
        N = default_precision()
    K = points[0].field
    if any(x.field != K for x in points):
        raise FieldMismatch("points lie in different fields")
    k = phi.field
    if K != k and not (k.d == 1 and K.p == k.p):
        raise FieldMismatch("points must lie in k, or phi must be defined over Q_p")
    pts = [K.coerce(x) for x in points]
    logs = _log_values(phi, pts, D, N)
    r = len(logs)
    if K == k:
        if r == 1:
            return _rank_one(logs)
        return IndependenceResult(None, tuple(logs), None,
                                  "several values in a one-dimensional space are always dependent")
    # Q_p-coordinates in K
    rows = [list(x.coeffs) for x in logs]
    eps = [_coordinate_error(x) for x in logs]
    p = K.p
    mins = []
    for row, ep in zip(rows, eps):
        vals = [vp(c, p) for c in row if c]
        mins.append(min([ep] + vals))
    for cols in itertools.combinations(range(K.d), r):
        sub = [[row[c] for c in cols] for row in rows]
        det = determinant(sub)
        if not det:
            continue
        vdet = vp(det, p)
        err = min(eps[i] + sum(m for k2, m in enumerate(mins) if k2 != i) for i in range(r))
        if vdet < err:
            cert = {"columns": list(cols), "det": [det.numerator, det.denominator],
                    "det_valuation": vdet, "error_valuation": err}
            return IndependenceResult(True, tuple(logs), cert, "nonzero minor at precision")
    return IndependenceResult(None, tuple(logs), None, "no minor is certified nonzero")


def _rank_one(logs) -> IndependenceResult:
    x = logs[0]
    if x.is_zero():
        return IndependenceResult(None, tuple(logs), None, "log vanishes at precision")
    v = x.valuation().value
    return IndependenceResult(True, tuple(logs),
                              {"log_valuation": [v.numerator, v.denominator],
                               "precision": [x.prec.numerator, x.prec.denominator]},
                              "log is nonzero at precision")
