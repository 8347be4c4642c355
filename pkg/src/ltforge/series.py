"""Truncated power series in one or two variables over a p-adic field.

Coefficients are sparse: a dict from exponent tuples to :class:`PadicNumber`.
``trunc`` is the total-degree order D (terms of degree > D are dropped).
``trunc=None`` marks an exact polynomial, which is never truncated.
Binary operations truncate to the smaller finite order.

The internals work for any number of variables.  Only one- and
two-variable series are part of the public surface.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import (
    DegreeCap,
    FieldMismatch,
    InputError,
    NonIntegralCoefficients,
    NonUnitLinearTerm,
    NonzeroConstantTerm,
    NotInMaximalIdeal,
)
from .padic import LocalFieldModel, PadicNumber, _min_prec

DEFAULT_ORDER = 12
MAX_ORDER = 64


def _min_trunc(*ds):
    finite = [d for d in ds if d is not None]
    return min(finite) if finite else None


class Series:
    """A power series ``sum c_e X^e`` with exponent tuples ``e`` of length ``nvars``."""

    __slots__ = ("field", "nvars", "trunc", "coeffs")

    def __init__(self, field: LocalFieldModel, nvars: int, coeffs: Mapping, trunc: int | None):
        if trunc is not None and not 0 <= trunc <= MAX_ORDER:
            raise DegreeCap(f"truncation order must lie in 0..{MAX_ORDER}")
        self.field = field
        self.nvars = nvars
        self.trunc = trunc
        clean = {}
        for exp, c in coeffs.items():
            exp = (exp,) if isinstance(exp, int) else tuple(exp)
            if len(exp) != nvars or any(k < 0 for k in exp):
                raise InputError(f"bad exponent {exp} for {nvars} variables")
            if trunc is not None and sum(exp) > trunc:
                continue
            c = field.coerce(c)
            if not (c.prec is None and not any(c.coeffs)):
                clean[exp] = c
        self.coeffs = clean

    # -- construction helpers ------------------------------------------------

    @classmethod
    def variable(cls, field, index: int, nvars: int = 1, trunc: int | None = None) -> "Series":
        exp = tuple(1 if k == index else 0 for k in range(nvars))
        return cls(field, nvars, {exp: 1}, trunc)

    @classmethod
    def constant(cls, field, c, nvars: int = 1, trunc: int | None = None) -> "Series":
        return cls(field, nvars, {(0,) * nvars: c}, trunc)

    def zero_like(self) -> "Series":
        return Series(self.field, self.nvars, {}, self.trunc)

    def truncate(self, D: int | None) -> "Series":
        return Series(self.field, self.nvars, self.coeffs, _min_trunc(self.trunc, D))

    def with_trunc(self, D: int | None) -> "Series":
        """Same coefficients, new nominal order (only valid when lowering or for polynomials)."""
        return Series(self.field, self.nvars, self.coeffs, D)

    # -- accessors ---------------------------------------------------------------

    def __getitem__(self, exp) -> PadicNumber:
        exp = (exp,) if isinstance(exp, int) else tuple(exp)
        return self.coeffs.get(exp, self.field.zero())

    def degree(self) -> int:
        """Largest total degree of a stored coefficient, -1 for zero."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def homogeneous(self, d: int) -> dict:
        return {e: c for e, c in self.coeffs.items() if sum(e) == d}

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    @property
    def constant_term(self) -> PadicNumber:
        return self[(0,) * self.nvars]

    def is_integral(self) -> bool:
        for c in self.coeffs.values():
            v = c.valuation().value
            if v is not None and v < 0:
                return False
        return True

    # -- arithmetic ------------------------------------------------------------------

    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise InputError("expected a series")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if other.nvars != self.nvars:
            raise InputError("series have different numbers of variables")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return Series(self.field, self.nvars, out, _min_trunc(self.trunc, other.trunc))

    def __neg__(self) -> "Series":
        return Series(self.field, self.nvars, {e: -c for e, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            c = self.field.coerce(other)
            return Series(self.field, self.nvars, {e: a * c for e, a in self.coeffs.items()},
                          self.trunc)
        self._check(other)
        D = _min_trunc(self.trunc, other.trunc)
        out: dict = {}
        for ea, ca in self.coeffs.items():
            da = sum(ea)
            for eb, cb in other.coeffs.items():
                if D is not None and da + sum(eb) > D:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                out[e] = out[e] + prod if e in out else prod
        return Series(self.field, self.nvars, out, D)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            raise InputError("negative powers of series are not supported")
        result = Series.constant(self.field, 1, self.nvars, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if other.field != self.field or other.nvars != self.nvars:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def equal_through(self, other: "Series", D: int) -> bool:
        """Coefficientwise equality in total degrees <= D."""
        diff = self - other
        return all(c.is_zero() for e, c in diff.coeffs.items() if sum(e) <= D)

    # -- substitution ------------------------------------------------------------------

    def __call__(self, *args):
        """Substitute series for the variables, or evaluate at points."""
        if len(args) != self.nvars:
            raise InputError(f"expected {self.nvars} arguments")
        if all(isinstance(a, Series) for a in args):
            return substitute(self, *args)
        raise InputError("use evaluate() for points")

    def to_json(self) -> dict:
        items = sorted(self.coeffs.items())
        return {
            "field": self.field.to_json(),
            "trunc": self.trunc,
            "coeffs": [list(e) + [c.to_json()] for e, c in items],
        }

    @classmethod
    def from_json(cls, doc: dict, field: LocalFieldModel | None = None) -> "Series":
        if field is None:
            field = LocalFieldModel.from_json(doc["field"])
        rows = doc["coeffs"]
        nvars = doc.get("nvars")
        if nvars is None:
            nvars = len(rows[0]) - 1 if rows else 1
        coeffs = {}
        for row in rows:
            if len(row) != nvars + 1:
                raise InputError("inconsistent exponent lengths")
            coeffs[tuple(int(k) for k in row[:-1])] = PadicNumber.from_json(field, row[-1])
        return cls(field, nvars, coeffs, doc.get("trunc"))

    def __repr__(self) -> str:
        names = "XYZW"
        terms = []
        for e, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(
                names[k] + (f"^{n}" if n > 1 else "") for k, n in enumerate(e) if n
            )
            cs = _coeff_str(c)
            terms.append(cs if not mono else (mono if cs == "1" else f"{cs}*{mono}"))
        body = " + ".join(terms) or "0"
        return body if self.trunc is None else f"{body} + O(deg {self.trunc + 1})"


def _coeff_str(c: PadicNumber) -> str:
    if c.prec is None and not any(c.coeffs[1:]):
        return str(c.coeffs[0])
    return repr(c)


def series1(field: LocalFieldModel, coeffs, trunc: int | None = DEFAULT_ORDER) -> Series:
    """One-variable series from ``{degree: coeff}`` or an ascending list."""
    if not isinstance(coeffs, Mapping):
        coeffs = dict(enumerate(coeffs))
    return Series(field, 1, {(int(k),): c for k, c in coeffs.items()}, trunc)


def series2(field: LocalFieldModel, coeffs: Mapping, trunc: int | None = DEFAULT_ORDER) -> Series:
    """Two-variable series from ``{(i, j): coeff}``."""
    return Series(field, 2, {tuple(k): c for k, c in coeffs.items()}, trunc)


def series_arith(op: str, f: Series, g: Series) -> Series:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise InputError(f"unknown series operation {op!r}")


def substitute(outer: Series, *inner: Series) -> Series:
    """outer(inner_1, ..., inner_n); all inner series share their arity."""
    if len(inner) != outer.nvars:
        raise InputError(f"expected {outer.nvars} inner series")
    m = inner[0].nvars
    for g in inner:
        if g.field != outer.field:
            raise FieldMismatch(f"{outer.field!r} vs {g.field!r}")
        if g.nvars != m:
            raise InputError("inner series must have the same arity")
        if not g.constant_term.is_zero():
            raise NonzeroConstantTerm("substituted series must vanish at 0")
    D = _min_trunc(outer.trunc, *(g.trunc for g in inner))
    powers = [[Series.constant(outer.field, 1, m, D)] for _ in inner]
    result: dict = {}
    for exp, c in outer.coeffs.items():
        if D is not None and sum(exp) > D:
            continue
        term = None
        for k, n in enumerate(exp):
            if not n:
                continue
            cache = powers[k]
            while len(cache) <= n:
                cache.append((cache[-1] * inner[k]).truncate(D))
            term = cache[n] if term is None else (term * cache[n]).truncate(D)
        if term is None:
            term = powers[0][0]
        for e, t in term.coeffs.items():
            v = c * t
            result[e] = result[e] + v if e in result else v
    return Series(outer.field, m, result, D)


def compose1(f: Series, g: Series) -> Series:
    if f.nvars != 1 or g.nvars != 1:
        raise InputError("compose1 expects one-variable series")
    return substitute(f, g)


def substitute2(F: Series, g: Series, h: Series) -> Series:
    if F.nvars != 2:
        raise InputError("substitute2 expects a two-variable series")
    return substitute(F, g, h)


def embed(f: Series, nvars: int, index: int) -> Series:
    """View a one-variable series as a series in variable ``index`` of ``nvars``."""
    coeffs = {}
    for (n,), c in f.coeffs.items():
        coeffs[tuple(n if k == index else 0 for k in range(nvars))] = c
    return Series(f.field, nvars, coeffs, f.trunc)


def invert_series(f: Series, trunc: int | None = None) -> Series:
    """Compositional inverse of a one-variable series with unit linear term."""
    if f.nvars != 1:
        raise InputError("invert_series expects a one-variable series")
    if not f.constant_term.is_zero():
        raise NonzeroConstantTerm("series must vanish at 0")
    a1 = f[1]
    v = a1.valuation()
    if v.value is None or v.at_least or v.value != 0:
        raise NonUnitLinearTerm("linear coefficient must be a unit")
    D = _min_trunc(f.trunc, trunc)
    if D is None:
        D = DEFAULT_ORDER
    inv_a1 = a1.inverse()
    g = series1(f.field, {1: inv_a1}, D)
    f = f.truncate(D)
    for d in range(2, D + 1):
        err = compose1(f, g)[d]
        if not err.is_zero():
            g = g - series1(f.field, {d: err * inv_a1}, D)
    return g


def _points(field: LocalFieldModel, points) -> list[PadicNumber]:
    out = []
    for x in points:
        x = field.coerce(x)
        v = x.valuation()
        if v.value is not None and not v.at_least and v.value <= 0:
            raise NotInMaximalIdeal(f"point of valuation {v.value} is not in the maximal ideal")
        out.append(x)
    return out


def evaluate_raw(f: Series, points, N) -> PadicNumber:
    """Sum of the stored terms at capped points; no truncation-tail accounting."""
    field = f.field
    pts = [x.to_capped(N) for x in points]
    cache = [[field.one()] for _ in pts]
    acc = field.zero().to_capped(N)
    for exp, c in f.coeffs.items():
        term = c
        for k, n in enumerate(exp):
            if n:
                pw = cache[k]
                while len(pw) <= n:
                    pw.append(pw[-1] * pts[k])
                term = term * pw[n]
        acc = acc + term
    return acc


def tail_bound(f: Series, points) -> Fraction | None:
    """Lower bound for the valuation of the dropped tail of an integral series."""
    if f.trunc is None:
        return None
    vals = [x.valuation().value for x in points]
    if any(v is None for v in vals):
        return None
    return (f.trunc + 1) * min(vals)


def evaluate(f: Series, *points, N=None) -> PadicNumber:
    """Value of an integral series at points of the maximal ideal.

    The result's precision is ``min(N, (D+1) * min v(x))``: the dropped
    terms all have valuation at least that bound.
    """
    from .padic import default_precision

    if len(points) != f.nvars:
        raise InputError(f"expected {f.nvars} points")
    pts = _points(f.field, points)
    if not f.is_integral():
        raise NonIntegralCoefficients("series coefficients must be integral")
    if N is None:
        N = default_precision()
    tail = tail_bound(f, pts)
    value = evaluate_raw(f, pts, N)
    return value.to_capped(_min_prec(Fraction(N), tail))
