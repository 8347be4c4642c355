"""p-adic fields given by global models, and their elements.

A field k/Q_p is described by an unramified part k0 = Q_p[y]/(u(y)) with
u irreducible mod p, and an Eisenstein polynomial E(x) over the integers
of k0.  Elements are stored in the basis x^j y^i (0 <= j < e, 0 <= i < f)
with rational coefficients.  That basis is an integral basis of O_k, so
valuations can be read off coefficientwise.

Valuations are normalized by v(p) = 1, hence v(x) = 1/e.

Elements come in two modes.  *Exact* elements are points of the number
field Q[y, x]/(u, E).  *Capped* elements carry an absolute precision N:
the stored representative agrees with the true value modulo elements of
valuation >= N.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import sympy

from . import poly as P
from .errors import (
    DegreeCap,
    FieldMismatch,
    InputError,
    NotEisenstein,
    NotInGlobalModel,
    NotIrreducibleModP,
    NotPrime,
    PrecisionExhausted,
    WildRamificationNeedsOverride,
    ZeroResidue,
)

MAX_DEGREE = 16
MAX_PRECISION = 512
_ZERO = Fraction(0)
_ONE = Fraction(1)


def default_precision() -> int:
    """Capped precision used when none is given; ``LTFORGE_PRECISION`` overrides."""
    raw = os.environ.get("LTFORGE_PRECISION")
    if raw is None:
        return 20
    n = int(raw)
    if not 1 <= n <= MAX_PRECISION:
        raise InputError(f"LTFORGE_PRECISION must lie in 1..{MAX_PRECISION}")
    return n


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _reduce_mod(c: Fraction, p: int, k: int) -> Fraction:
    """Representative of c modulo p^k with a p-power denominator."""
    if c == 0:
        return c
    num, den = c.numerator, c.denominator
    s = 0
    while den % p == 0:
        den //= p
        s += 1
    if k + s <= 0:
        return _ZERO
    m = p ** (k + s)
    r = num * pow(den, -1, m) % m
    return Fraction(r, p ** s)


@dataclass(frozen=True)
class Valuation:
    """A valuation value, or a lower bound when the element is zero at precision.

    ``value is None`` encodes +infinity (an exact zero).
    """

    value: Fraction | None
    at_least: bool = False

    @property
    def determined(self) -> bool:
        return self.value is not None and not self.at_least

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        return (">= " if self.at_least else "") + str(self.value)

    def to_json(self):
        if self.value is None:
            return "inf"
        out = P.rational_to_json(self.value)
        return {"at_least": out} if self.at_least else out


@dataclass(frozen=True)
class LocalFieldModel:
    """A p-adic field k with unramified part Q_p[y]/(u) and Eisenstein generator x.

    ``u_poly`` holds integer coefficients, ascending.  ``e_poly[j]`` is the
    coefficient of x^j, itself a polynomial in y reduced modulo ``u_poly``.
    Build instances with :func:`make_field`, which validates them.
    """

    p: int
    u_poly: tuple
    e_poly: tuple
    name: str = ""

    @property
    def f(self) -> int:
        return len(self.u_poly) - 1

    @property
    def e(self) -> int:
        return len(self.e_poly) - 1

    @property
    def d(self) -> int:
        return self.e * self.f

    @property
    def q(self) -> int:
        return self.p ** self.f

    def __repr__(self) -> str:
        label = self.name or f"k(p={self.p}, e={self.e}, f={self.f})"
        return f"<LocalFieldModel {label}>"

    # -- internal multiplication data --------------------------------------

    @cached_property
    def _reduction_table(self):
        """Vectors for x^J y^I, J <= 2e-2, I <= 2f-2, in the standard basis."""
        e, f = self.e, self.f
        u = self.u_poly
        table = {}
        for J in range(2 * e - 1):
            # x^J as a list over x-powers of y-polys
            xs = [()] * (max(J, e - 1) + 1)
            xs[J] = (_ONE,)
            for j in range(len(xs) - 1, e - 1, -1):
                c = xs[j]
                if not c:
                    continue
                xs[j] = ()
                for t in range(e):
                    xs[j - e + t] = P.divmod_poly(
                        P.sub(xs[j - e + t], P.mul(c, self.e_poly[t])), u
                    )[1]
            for I in range(2 * f - 1):
                yI = P.divmod_poly(P.monomial(_ONE, I), u)[1]
                vec = [_ZERO] * self.d
                for j in range(e):
                    prod = P.divmod_poly(P.mul(xs[j], yI), u)[1]
                    for i, c in enumerate(prod):
                        vec[j * f + i] = c
                table[(J, I)] = tuple(vec)
        return table

    def _mul_vec(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
        if self.d == 1:
            return (a[0] * b[0],)
        e, f, d = self.e, self.f, self.d
        conv: dict = {}
        for ia, ca in enumerate(a):
            if not ca:
                continue
            ja, iia = divmod(ia, f)
            for ib, cb in enumerate(b):
                if not cb:
                    continue
                jb, iib = divmod(ib, f)
                key = (ja + jb, iia + iib)
                conv[key] = conv.get(key, _ZERO) + ca * cb
        out = [_ZERO] * d
        table = self._reduction_table
        for key, c in conv.items():
            if c:
                for k, t in enumerate(table[key]):
                    if t:
                        out[k] += c * t
        return tuple(out)

    def _inverse_vec(self, a: Sequence[Fraction]) -> tuple:
        d = self.d
        if d == 1:
            return (1 / a[0],)
        cols = [self._mul_vec(a, tuple(_ONE if i == k else _ZERO for i in range(d)))
                for k in range(d)]
        matrix = [[cols[c][r] for c in range(d)] for r in range(d)]
        rhs = [_ONE] + [_ZERO] * (d - 1)
        return tuple(_solve(matrix, rhs))

    # -- element constructors ------------------------------------------------

    def element(self, coeffs, prec=None) -> "PadicNumber":
        """Element from a flat coefficient vector or nested ``[[...] per x-power]``."""
        vec = _flatten_coeffs(self, coeffs)
        x = PadicNumber(self, vec, None)
        return x if prec is None else x.to_capped(prec)

    def from_rational(self, c, prec=None) -> "PadicNumber":
        vec = [_ZERO] * self.d
        vec[0] = P.parse_rational(c)
        return self.element(vec, prec)

    def zero(self) -> "PadicNumber":
        return self.from_rational(0)

    def one(self) -> "PadicNumber":
        return self.from_rational(1)

    @property
    def uniformizer(self) -> "PadicNumber":
        """The class of x, a root of the Eisenstein polynomial."""
        vec = [_ZERO] * self.d
        if self.e == 1:
            # x = -E_0(y)
            for i, c in enumerate(self.e_poly[0]):
                vec[i] = -c
        else:
            vec[self.f] = _ONE
        return PadicNumber(self, tuple(vec), None)

    @property
    def unramified_generator(self) -> "PadicNumber":
        vec = [_ZERO] * self.d
        if self.f == 1:
            vec[0] = -self.u_poly[0]
        else:
            vec[1] = _ONE
        return PadicNumber(self, tuple(vec), None)

    def coerce(self, value) -> "PadicNumber":
        if isinstance(value, PadicNumber):
            if value.field != self:
                if value.field.d == 1 and value.field.p == self.p:
                    out = self.from_rational(value.coeffs[0])
                    return out if value.prec is None else out.to_capped(value.prec)
                raise FieldMismatch(f"{value.field!r} vs {self!r}")
            return value
        return self.from_rational(value)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "u_poly": [_rat_out(c) for c in self.u_poly],
            "e_poly": [[_rat_out(c) for c in c_j] for c_j in self.e_poly],
            "name": self.name,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LocalFieldModel":
        unknown = set(doc) - {"p", "u_poly", "e_poly", "name"}
        if unknown:
            raise InputError(f"unknown field keys {sorted(unknown)}")
        return make_field(doc["p"], doc.get("u_poly"), doc.get("e_poly"), doc.get("name", ""))


def _rat_out(c: Fraction):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _solve(matrix, rhs):
    """Gaussian elimination over Q for a nonsingular square system."""
    n = len(matrix)
    m = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def determinant(matrix) -> Fraction:
    """Exact determinant by fraction-valued elimination."""
    m = [list(map(Fraction, row)) for row in matrix]
    n = len(m)
    det = _ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return _ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] / m[col][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _flatten_coeffs(field: LocalFieldModel, coeffs) -> tuple:
    d, f = field.d, field.f
    coeffs = list(coeffs)
    if coeffs and all(isinstance(c, (list, tuple)) and not _is_pair(c) for c in coeffs):
        if len(coeffs) > field.e:
            raise InputError(f"at most {field.e} x-power rows expected")
        vec = [_ZERO] * d
        for j, row in enumerate(coeffs):
            ypoly = P.divmod_poly(P.normalize(row), field.u_poly)[1] if row else ()
            for i, c in enumerate(ypoly):
                vec[j * f + i] = c
        return tuple(vec)
    vals = [P.parse_rational(c) for c in coeffs]
    if len(vals) > d:
        raise InputError(f"expected at most {d} coefficients, got {len(vals)}")
    return tuple(vals + [_ZERO] * (d - len(vals)))


def _is_pair(c) -> bool:
    # [num, den] pairs only appear as leaves inside nested rows
    return False


class PadicNumber:
    """An element of a :class:`LocalFieldModel`, exact (``prec is None``) or capped."""

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: LocalFieldModel, coeffs: tuple, prec: Fraction | None):
        self.field = field
        if prec is not None:
            prec = Fraction(prec)
            coeffs = _truncate(field, coeffs, prec)
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- basic predicates -----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def _raw_valuation(self) -> Fraction | None:
        p, e, f = self.field.p, self.field.e, self.field.f
        best = None
        for k, c in enumerate(self.coeffs):
            if c:
                v = P.vp(c, p) + Fraction(k // f, e)
                if best is None or v < best:
                    best = v
        return best

    def valuation(self) -> Valuation:
        v = self._raw_valuation()
        if self.prec is None:
            return Valuation(v)
        if v is None or v >= self.prec:
            return Valuation(self.prec, at_least=True)
        return Valuation(v)

    def is_zero(self) -> bool:
        """True when the element is zero (at its precision, if capped)."""
        v = self.valuation()
        return v.value is None or v.at_least

    def _vlow(self) -> Fraction | None:
        v = self.valuation()
        return v.value

    # -- mode conversions -------------------------------------------------------

    def to_capped(self, N) -> "PadicNumber":
        N = Fraction(N)
        if N > MAX_PRECISION:
            raise InputError(f"precision cap is {MAX_PRECISION}")
        if self.prec is not None and self.prec < N:
            N = self.prec
        return PadicNumber(self.field, self.coeffs, N)

    def to_exact(self) -> "PadicNumber":
        """The stored representative as an exact element."""
        return PadicNumber(self.field, self.coeffs, None)

    def with_prec(self, N) -> "PadicNumber":
        return self if N is None else self.to_capped(N)

    # -- arithmetic -------------------------------------------------------------

    def _other(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return PadicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                           _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return PadicNumber(self.field, tuple(-a for a in self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return PadicNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
                           _min_prec(self.prec, other.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        prec = None
        if self.prec is not None or other.prec is not None:
            cands = []
            va, vb = self._vlow(), other._vlow()
            if self.prec is not None and vb is not None:
                cands.append(self.prec + vb)
            if other.prec is not None and va is not None:
                cands.append(other.prec + va)
            prec = min(cands) if cands else None
        return PadicNumber(self.field, self.field._mul_vec(self.coeffs, other.coeffs), prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.is_zero():
            if self.prec is None:
                raise ZeroDivisionError("division by zero in a p-adic field")
            raise PrecisionExhausted("divisor is zero at its precision")
        inv = self.field._inverse_vec(self.coeffs)
        if self.prec is None:
            return PadicNumber(self.field, inv, None)
        v = self._raw_valuation()
        return PadicNumber(self.field, inv, self.prec - 2 * v)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        if self.prec is not None:
            result = result.to_capped(MAX_PRECISION)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        if self.prec is not None and result.prec == MAX_PRECISION and n == 0:
            result = result.to_capped(max(self.prec, result.prec if result.prec else 0))
        return result

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.field, self.coeffs)) if self.prec is None else hash(self.field)

    def identical(self, other: "PadicNumber") -> bool:
        return (self.field == other.field and self.coeffs == other.coeffs
                and self.prec == other.prec)

    # -- presentation --------------------------------------------------------------

    def nested(self) -> list[list[Fraction]]:
        f = self.field.f
        return [list(self.coeffs[j * f:(j + 1) * f]) for j in range(self.field.e)]

    def rational(self) -> Fraction:
        """The value when it lies in Q (all higher basis coefficients zero)."""
        if any(self.coeffs[1:]):
            raise InputError("element is not rational in this model")
        return self.coeffs[0]

    def digits(self) -> list[list[tuple[int, list[int]]]]:
        """Base-p digits of each basis coefficient, truncated at the precision.

        Entry ``[j][i]`` is ``(v, ds)`` meaning sum_t ds[t] * p^(v+t).
        """
        if self.prec is None:
            raise InputError("digits are only defined for capped elements")
        p, e, f = self.field.p, self.field.e, self.field.f
        out = []
        for j in range(e):
            kj = _ceil(self.prec - Fraction(j, e))
            row = []
            for i in range(f):
                row.append(_digits(self.coeffs[j * f + i], p, kj))
            out.append(row)
        return out

    def to_json(self) -> dict:
        if self.prec is None:
            return {"mode": "exact",
                    "coeffs": [[P.rational_to_json(c) for c in row] for row in self.nested()],
                    "abs_prec": "inf"}
        prec = self.prec
        return {"mode": "capped",
                "coeffs": [[[v, ds] for v, ds in row] for row in self.digits()],
                "abs_prec": prec.numerator if prec.denominator == 1 else P.rational_to_json(prec)}

    @classmethod
    def from_json(cls, field: LocalFieldModel, doc) -> "PadicNumber":
        if not isinstance(doc, dict):
            if isinstance(doc, list):
                return field.element(doc)
            return field.from_rational(doc)
        mode = doc.get("mode", "exact")
        if mode == "exact":
            rows = [[P.parse_rational(c) for c in row] for row in doc["coeffs"]]
            return field.element(rows)
        if mode != "capped":
            raise InputError(f"unknown element mode {mode!r}")
        prec = P.parse_rational(doc["abs_prec"])
        p = field.p
        rows = []
        for row in doc["coeffs"]:
            rows.append([sum((Fraction(p) ** (v + t) * dgt for t, dgt in enumerate(ds)), _ZERO)
                         for v, ds in row])
        return field.element(rows, prec)

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*x^{k // self.field.f}*y^{k % self.field.f}"
            for k, c in enumerate(self.coeffs) if c
        ) or "0"
        tail = "" if self.prec is None else f" + O(p^{self.prec})"
        return f"<{body}{tail}>"


def _digits(c: Fraction, p: int, k: int) -> tuple[int, list[int]]:
    if c == 0:
        return (k, [])
    v = P.vp(c, p)
    n = c / Fraction(p) ** v  # p-adic unit, p-integral
    r = _reduce_mod(n, p, k - v)
    n_int = int(r)
    out = []
    for _ in range(max(k - v, 0)):
        n_int, dgt = divmod(n_int, p)
        out.append(dgt)
    return (v, out)


def _truncate(field: LocalFieldModel, coeffs: Sequence[Fraction], N: Fraction) -> tuple:
    p, e, f = field.p, field.e, field.f
    out = []
    for k, c in enumerate(coeffs):
        kj = _ceil(N - Fraction(k // f, e))
        out.append(_reduce_mod(c, p, kj) if c else c)
    return tuple(out)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def make_field(p: int, u_poly=None, e_poly=None, name: str = "") -> LocalFieldModel:
    """Validate a global model and return the field.

    ``u_poly`` defaults to y - 1 (no unramified part) and ``e_poly`` to
    x - p.  ``e_poly`` entries may be rationals (constants in y) or lists of
    rationals (polynomials in y).
    """
    if not isinstance(p, int) or not P.is_prime(p):
        raise NotPrime(f"{p!r} is not prime")
    u = P.normalize(u_poly if u_poly is not None else [-1, 1])
    if not P.is_monic(u) or not P.is_integral(u):
        raise NotIrreducibleModP("u_poly must be monic with integer coefficients")
    if P.degree(u) < 1:
        raise NotIrreducibleModP("u_poly must have positive degree")
    if not P.fp_is_irreducible(tuple(int(c) for c in u), p):
        raise NotIrreducibleModP(f"u_poly {list(map(int, u))} is reducible mod {p}")
    raw = e_poly if e_poly is not None else [-p, 1]
    rows = []
    for c in raw:
        ypoly = P.normalize(c) if isinstance(c, (list, tuple)) else P.normalize([c])
        rows.append(P.divmod_poly(ypoly, u)[1])
    while rows and not rows[-1]:
        rows.pop()
    if len(rows) < 2:
        raise NotEisenstein("e_poly must have degree >= 1 in x")
    if rows[-1] != (_ONE,):
        raise NotEisenstein("e_poly must be monic in x")
    e = len(rows) - 1
    f = P.degree(u)
    if e * f > MAX_DEGREE:
        raise DegreeCap(f"degree e*f = {e * f} exceeds {MAX_DEGREE}")
    for j, row in enumerate(rows[:-1]):
        vals = [P.vp(c, p) for c in row if c]
        if any(v < 0 for v in vals):
            raise NotEisenstein(f"coefficient of x^{j} is not p-integral")
        vmin = min(vals) if vals else None
        if j == 0:
            if vmin != 1:
                raise NotEisenstein("constant term must have valuation exactly 1")
        elif vmin is not None and vmin < 1:
            raise NotEisenstein(f"coefficient of x^{j} must lie in the maximal ideal")
    return LocalFieldModel(p, tuple(u), tuple(rows), name)


def qp(p: int) -> LocalFieldModel:
    return make_field(p, name=f"Q_{p}")


def field_arith(op: str, a: PadicNumber, b: PadicNumber) -> PadicNumber:
    if not isinstance(a, PadicNumber) or not isinstance(b, PadicNumber):
        raise InputError("field_arith expects two p-adic numbers")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InputError(f"unknown operation {op!r}")


def valuation(a: PadicNumber) -> Valuation:
    return a.valuation()


def teichmuller(field: LocalFieldModel, r, N: int) -> PadicNumber:
    """The (q-1)-th root of unity reducing to the residue ``r``, to precision N.

    ``r`` is an int or a list of ints giving a polynomial in y mod p.
    """
    p = field.p
    coeffs = [r] if isinstance(r, int) else list(r)
    res = P.fp_mod(P.fp_normalize(coeffs, p),
                   P.fp_normalize([int(c) for c in field.u_poly], p), p)
    if not res:
        raise ZeroResidue("Teichmuller lift of zero is undefined")
    vec = [_ZERO] * field.d
    for i, c in enumerate(res):
        vec[i] = Fraction(c)
    x = field.element(vec, N)
    for _ in range(N):
        x = x ** field.q
    return x


def norm_to_Qp(field: LocalFieldModel, a) -> Fraction:
    """Nr_{k/Q_p}(a) for an element of the global model, via resultants."""
    if isinstance(a, PadicNumber):
        if a.field != field:
            raise FieldMismatch(f"{a.field!r} vs {field!r}")
        if a.prec is not None:
            raise NotInGlobalModel("capped elements have no global norm")
        a = a.nested()
    else:
        a = field.element(a).nested()
    x, y = sympy.symbols("x y")
    E = sum(sympy.Rational(c.numerator, c.denominator) * y ** i * x ** j
            for j, row in enumerate(field.e_poly) for i, c in enumerate(row))
    A = sum(sympy.Rational(c.numerator, c.denominator) * y ** i * x ** j
            for j, row in enumerate(a) for i, c in enumerate(row))
    U = sum(sympy.Rational(int(c)) * y ** i for i, c in enumerate(field.u_poly))
    A = sympy.expand(A)
    if A == 0:
        return _ZERO
    if sympy.degree(A, x) == 0:
        r1 = sympy.expand(A ** field.e)
    else:
        r1 = sympy.expand(sympy.resultant(E, A, x))
    if sympy.degree(r1, y) <= 0:
        r2 = sympy.expand(r1 ** field.f)
    else:
        r2 = sympy.resultant(U, r1, y)
    r2 = sympy.Rational(r2)
    return Fraction(int(r2.p), int(r2.q))


def multiplication_matrix(a: PadicNumber) -> list[list[Fraction]]:
    """Matrix of y -> a*y on the standard Q-basis (columns are images)."""
    field = a.field
    d = field.d
    cols = [field._mul_vec(a.coeffs, tuple(_ONE if i == k else _ZERO for i in range(d)))
            for k in range(d)]
    return [[cols[c][r] for c in range(d)] for r in range(d)]


def _residue_order(field: LocalFieldModel, r: tuple) -> int:
    p, q = field.p, field.q
    u = P.fp_normalize([int(c) for c in field.u_poly], p)
    n = q - 1
    order = n
    for prime in _prime_factors(n):
        while order % prime == 0 and P.fp_powmod(r, order // prime, u, p) == (1,):
            order //= prime
    return order


def _prime_factors(n: int) -> list[int]:
    out, m, k = [], n, 2
    while k * k <= m:
        if m % k == 0:
            out.append(k)
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        out.append(m)
    return out


def galois_closure_degree(field: LocalFieldModel, override: int | None = None) -> int:
    """d_G = [k_G : Q_p] for the Galois closure k_G of k/Q_p.

    Computed in the tame case only.  There k = k0((p*zeta)^(1/e)) for a
    Teichmuller unit zeta, and k_G = M((p*zeta)^(1/e)) where M is the
    unramified extension containing F_q, mu_e and e-th roots of
    zeta^(p^i - 1).  Wild fields need ``override``.
    """
    if override is not None:
        if override < 1 or override % field.d:
            raise InputError("override must be a positive multiple of [k:Q_p]")
        return int(override)
    p, e, f = field.p, field.e, field.f
    if e == 1:
        return f
    if math.gcd(e, p) != 1:
        raise WildRamificationNeedsOverride(
            f"e = {e} is divisible by p = {p}; supply the Galois closure degree")
    a0 = field.e_poly[0]
    r = P.fp_normalize([int(-c / p) for c in _p_integral_to_int(a0, p, 1)], p)
    o = _residue_order(field, r)
    base = math.lcm(f, P.multiplicative_order(p, e))
    F = base
    while True:
        N = p ** F - 1
        if all(((p ** i - 1) * (N // e)) % o == 0 for i in range(1, f)):
            return e * F
        F += base


def _p_integral_to_int(ypoly: tuple, p: int, k: int) -> list:
    """Integers congruent to the p-integral coefficients modulo p^(k+1)."""
    m = p ** (k + 1)
    return [Fraction(c.numerator * pow(c.denominator, -1, m) % m) for c in ypoly]
