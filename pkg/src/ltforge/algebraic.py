"""Algebraic numbers by minimal polynomial, and exact Weil-number decisions.

Root-multiset transforms (r-th powers, products of conjugates) use Newton's
identities.  The power sums of a composed product are products of power
sums, so no resultant is ever formed.

The Weil test is exact.  A real polynomial whose roots all satisfy
|z|^2 = Q is self-reciprocal under z -> Q/z.  After removing the real
roots +-sqrt(Q), such a polynomial can be written x^(r/2) h(x + Q/x).  All
its roots lie on the circle iff h is real-rooted with every root t
satisfying t^2 < 4Q.  Both facts are checked with Sturm sequences.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import sympy

from . import poly as P
from .errors import CapExceeded, DegreeBlowup, DegreeCap, InputError, ReducibleNeedsChoice

MAX_DEGREE = 24
MAX_PRODUCT_DEGREE = 10_000
MAX_ENUM_DEGREE = 6
MAX_ENUM_Q = 10 ** 6
MAX_CANDIDATES = 5 * 10 ** 6


@dataclass(frozen=True)
class AlgebraicNumber:
    """An algebraic number given by its monic minimal polynomial over Q.

    ``selector`` optionally pins one complex root by a rectangle
    ``((re_lo, re_hi), (im_lo, im_hi))`` containing exactly that root.
    Everything decided in this module is conjugate-invariant and ignores it.
    """

    min_poly: tuple
    selector: tuple | None = None

    @property
    def degree(self) -> int:
        return P.degree(self.min_poly)

    @property
    def integer_flag(self) -> bool:
        return P.is_integral(self.min_poly)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise InputError("not a rational number")
        return -self.min_poly[0]

    @classmethod
    def rational(cls, c) -> "AlgebraicNumber":
        return cls((-P.parse_rational(c), Fraction(1)))

    def norm(self) -> Fraction:
        """Nr_{Q(alpha)/Q}(alpha)."""
        return (-1) ** self.degree * self.min_poly[0]

    def inverse(self) -> "AlgebraicNumber":
        return AlgebraicNumber(P.reciprocal(self.min_poly))

    def scale(self, c) -> "AlgebraicNumber":
        """c * alpha for a nonzero rational c."""
        c = P.parse_rational(c)
        if c == 0:
            raise InputError("scaling by zero")
        n = self.degree
        return AlgebraicNumber(tuple(a * c ** (n - i) for i, a in enumerate(self.min_poly)))

    def power(self, r: int) -> "AlgebraicNumber":
        """alpha^r; the r-th powers of a Galois orbit form one orbit."""
        base = self if r >= 0 else self.inverse()
        return AlgebraicNumber(P.squarefree_part(power_roots_poly(base.min_poly, abs(r))))

    def with_selector(self, rect) -> "AlgebraicNumber":
        (a, b), (c, d) = rect
        lo = sympy.Rational(str(P.parse_rational(a))) + sympy.I * sympy.Rational(str(P.parse_rational(c)))
        hi = sympy.Rational(str(P.parse_rational(b))) + sympy.I * sympy.Rational(str(P.parse_rational(d)))
        if P.to_sympy(self.min_poly).count_roots(lo, hi) != 1:
            raise InputError("selector must contain exactly one root")
        return AlgebraicNumber(self.min_poly, tuple(tuple(map(P.parse_rational, s)) for s in rect))

    def to_json(self) -> dict:
        return {"min_poly": [P.rational_to_json(c) for c in self.min_poly]}

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.value)
        return f"root of {_poly_str(self.min_poly)}"


def _poly_str(a) -> str:
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c:
            terms.append(f"{c}" + (f"*x^{i}" if i > 1 else ("*x" if i == 1 else "")))
    return " + ".join(terms) or "0"


def algebraic_from_poly(poly, choice: int | None = None) -> AlgebraicNumber:
    """The root family of an irreducible polynomial.

    A reducible input needs ``choice``, an index into the sorted list of
    distinct monic irreducible factors.
    """
    a = P.normalize(poly)
    if P.degree(a) < 1:
        raise InputError("a polynomial of positive degree is required")
    if P.degree(a) > MAX_DEGREE:
        raise DegreeCap(f"degree {P.degree(a)} exceeds {MAX_DEGREE}")
    factors = [f for f, _ in P.factor_rational(a)]
    if len(factors) == 1:
        return AlgebraicNumber(factors[0])
    if choice is None:
        raise ReducibleNeedsChoice(factors)
    if not 0 <= choice < len(factors):
        raise InputError(f"choice must lie in 0..{len(factors) - 1}")
    return AlgebraicNumber(factors[choice])


# -- Newton identities ------------------------------------------------------------


def power_sums(m, K: int) -> list[Fraction]:
    """[p_0, p_1, ..., p_K] for the roots of monic m (with multiplicity)."""
    n = P.degree(m)
    # e_i from x^n - e1 x^(n-1) + e2 x^(n-2) - ...
    e = [Fraction(1)] + [(-1) ** i * m[n - i] for i in range(1, n + 1)]
    p = [Fraction(n)]
    for k in range(1, K + 1):
        s = Fraction(0)
        for i in range(1, min(k - 1, n) + 1):
            s += (-1) ** (i - 1) * e[i] * p[k - i]
        if k <= n:
            s += (-1) ** (k - 1) * k * e[k]
        p.append(s)
    return p


def from_power_sums(p: list[Fraction], n: int) -> tuple:
    """Monic polynomial of degree n with power sums p_1..p_n."""
    e = [Fraction(1)]
    for k in range(1, n + 1):
        s = Fraction(0)
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * p[i]
        e.append(s / k)
    coeffs = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        coeffs[n - i] = (-1) ** i * e[i]
    return tuple(coeffs)


def power_roots_poly(m, r: int) -> tuple:
    """Monic polynomial whose roots are the r-th powers of the roots of m."""
    m = P.normalize(m)
    if not P.is_monic(m):
        raise InputError("power_roots_poly needs a monic polynomial")
    if r < 1:
        raise InputError("r must be a positive integer")
    n = P.degree(m)
    if r == 1:
        return m
    p = power_sums(m, n * r)
    return from_power_sums([p[k * r] for k in range(n + 1)], n)


def composed_product(a, b) -> tuple:
    """Monic polynomial with roots alpha_i * beta_j over all pairs."""
    da, db = P.degree(a), P.degree(b)
    N = da * db
    if N > MAX_PRODUCT_DEGREE:
        raise DegreeBlowup(f"composed product of degree {N} exceeds {MAX_PRODUCT_DEGREE}")
    pa, pb = power_sums(a, N), power_sums(b, N)
    return from_power_sums([x * y for x, y in zip(pa, pb)], N)


@dataclass(frozen=True)
class ConjugateProducts:
    """A polynomial whose roots include every product of conjugate powers."""

    poly: tuple
    exponent_sum: int

    def to_json(self) -> dict:
        return {"poly": [P.rational_to_json(c) for c in self.poly],
                "exponent_sum": self.exponent_sum}


def product_power_conjugates(m, t) -> ConjugateProducts:
    """Candidate polynomial for prod_i tau_i(delta)^(t_i).

    Conjugates are chosen independently for each factor, so the root
    multiset is a superset of the Galois-correct one.
    """
    m = P.normalize(m)
    t = [int(x) for x in t]
    if len(t) != P.degree(m):
        raise InputError("need one exponent per conjugate")
    n = P.degree(m)
    out_deg = n ** sum(1 for x in t if x)
    if out_deg > MAX_PRODUCT_DEGREE:
        raise DegreeBlowup(f"output degree {out_deg} exceeds {MAX_PRODUCT_DEGREE}")
    acc: tuple = (Fraction(-1), Fraction(1))
    recip = None
    for x in t:
        if x == 0:
            continue
        if x < 0:
            recip = recip or P.reciprocal(m)
            factor = power_roots_poly(recip, -x)
        else:
            factor = power_roots_poly(m, x)
        acc = composed_product(acc, factor)
    return ConjugateProducts(acc, sum(t))


# -- Weil numbers ---------------------------------------------------------------------


@dataclass(frozen=True)
class WeilCheckResult:
    holds: bool
    q: int
    weight: Fraction
    margin: Fraction | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "q": self.q,
            "weight": P.rational_to_json(self.weight),
            "margin": None if self.margin is None else P.rational_to_json(self.margin),
        }


def _remove_factor(a, f):
    while True:
        quo, rem = P.divmod_poly(a, f)
        if rem:
            return a
        a = quo


def _reciprocal_half(m, Q: Fraction):
    """h with m(x) = x^(n/2) h(x + Q/x), for self-reciprocal m of even degree."""
    n = P.degree(m)
    r = n // 2
    rest = list(m)
    h = [Fraction(0)] * (r + 1)
    base = (Q, Fraction(0), Fraction(1))  # x^2 + Q
    for k in range(r, -1, -1):
        c = rest[r + k] if r + k < len(rest) else Fraction(0)
        h[k] = c
        if c:
            # subtract c * x^(r-k) (x^2 + Q)^k
            term = P.mul(P.monomial(c, r - k), P.power(base, k))
            rest = list(P.sub(tuple(rest), term)) + [Fraction(0)] * (n + 1)
    if any(rest):
        raise ArithmeticError("polynomial is not self-reciprocal")
    return P.normalize(h)


def _even_odd_norm(h) -> tuple:
    """H(s) = h(sqrt s) h(-sqrt s) = E(s)^2 - s O(s)^2."""
    E = P.normalize(h[0::2])
    O = P.normalize(h[1::2])
    return P.sub(P.mul(E, E), P.mul((Fraction(0), Fraction(1)), P.mul(O, O)))


def _moduli_on_circle(m, Q: Fraction) -> bool:
    """Whether every root z of m has |z|^2 = Q (Q > 0 rational), exactly."""
    m = P.squarefree_part(m)
    n = P.degree(m)
    if m[0] ** 2 != Q ** n and n > 0:
        # product of |z|^2 over roots is |m(0)|^2
        return False
    reversed_ = P.normalize(m[i] * Q ** i for i in range(n + 1))[::-1]
    if tuple(c * m[0] for c in m) != tuple(reversed_):
        return False
    s = P.rational_root(Q, 2)
    if s is not None:
        for lin in ((-s, Fraction(1)), (s, Fraction(1))):
            m = _remove_factor(m, lin)
    else:
        m = _remove_factor(m, (-Q, Fraction(0), Fraction(1)))
    r = P.degree(m)
    if r == 0:
        return True
    if r % 2 or m[0] != Q ** (r // 2):
        return False
    h = _reciprocal_half(m, Q)
    hs = P.squarefree_part(h)
    if P.count_real_roots(hs) != P.degree(hs):
        return False
    H = P.squarefree_part(_even_odd_norm(h))
    if P.degree(H) <= 0:
        return True
    four_q = 4 * Q
    if P.evaluate(H, four_q) == 0:
        return False
    return P.count_real_roots(H, four_q, None) == 0


def _bracket_power(q: int, w: Fraction, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Rationals lo <= q^w <= hi with hi - lo <= eps."""
    a, b = w.numerator, w.denominator
    target = Fraction(q) ** a
    lo, hi = Fraction(0), max(Fraction(1), target)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if mid ** b <= target:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _margin(m, q: int, w: Fraction) -> Fraction:
    """Certified gap max_z | |z|^2 - q^w | > 0 over the roots of m (known nonzero)."""
    poly = P.to_sympy(m)
    eps = Fraction(1, 16)
    for _ in range(60):
        lo_q, hi_q = _bracket_power(q, w, eps)
        best = None
        real, cplx = poly.intervals(all=True, eps=sympy.Rational(eps.numerator, eps.denominator))
        boxes = []
        for (a, b), _ in real:
            boxes.append(([_frac(a), _frac(b)], [Fraction(0), Fraction(0)]))
        for (lo, hi), _ in cplx:
            boxes.append(([_frac(sympy.re(lo)), _frac(sympy.re(hi))],
                          [_frac(sympy.im(lo)), _frac(sympy.im(hi))]))
        for xs, ys in boxes:
            mod_lo = _sq_lo(xs) + _sq_lo(ys)
            mod_hi = max(x * x for x in xs) + max(y * y for y in ys)
            gap = max(mod_lo - hi_q, lo_q - mod_hi)
            if gap > 0 and (best is None or gap > best):
                best = gap
        if best is not None:
            return best
        eps /= 16
    raise ArithmeticError("root isolation did not separate the moduli")


def _frac(v) -> Fraction:
    v = sympy.Rational(v)
    return Fraction(int(v.p), int(v.q))


def _sq_lo(interval) -> Fraction:
    a, b = min(interval), max(interval)
    if a <= 0 <= b:
        return Fraction(0)
    return min(a * a, b * b)


def is_weil(alpha: AlgebraicNumber, q: int, w, require_integer: bool = False,
            margin: bool = True) -> WeilCheckResult:
    """Whether every conjugate of alpha has modulus q^(w/2) (and alpha is integral if required)."""
    w = P.parse_rational(w)
    if q < 1:
        raise InputError("q must be a positive integer")
    m = alpha.min_poly
    if require_integer and not alpha.integer_flag:
        return WeilCheckResult(False, q, w, None, "not an algebraic integer")
    if m[0] == 0:
        return WeilCheckResult(False, q, w, None, "zero is not a Weil number")
    a, b = w.numerator, w.denominator
    # a negative weight is the inverse's positive weight
    base = m if a >= 0 else P.reciprocal(m)
    mb = power_roots_poly(base, b)
    holds = _moduli_on_circle(mb, Fraction(q) ** abs(a))
    if holds:
        return WeilCheckResult(True, q, w, None, "all conjugates on the circle")
    gap = _margin(m, q, w) if margin else None
    return WeilCheckResult(False, q, w, gap, "some conjugate is off the circle")


def is_root_of_unity(alpha: AlgebraicNumber) -> int | None:
    """Multiplicative order of alpha, or None when alpha is not a root of unity."""
    if not alpha.integer_flag:
        return None
    if not is_weil(alpha, 1, 0, margin=False).holds:
        return None
    n = alpha.degree
    for N in range(1, 2 * n * n + 3):
        if P.totient(N) == n and not P.divmod_poly(P.x_power_minus_one(N), alpha.min_poly)[1]:
            return N
    raise ArithmeticError("Kronecker test found no order")


# -- enumeration ----------------------------------------------------------------------------


def _candidates(n: int, Q: int):
    """Monic integer polynomials of degree n satisfying the functional equation."""
    Qn = Q ** n
    root = isqrt(Qn)
    if root * root != Qn:
        return
    bounds = [P.binomial_bound(n, i, Fraction(Q)) for i in range(n + 1)]
    half = n // 2
    free = list(range(n - 1, half - 1, -1))  # coefficient indices chosen freely
    for a0 in (root, -root):
        idx = [i for i in free if not (2 * i == n and a0 < 0)]
        sizes = 1
        for i in idx:
            sizes *= 2 * bounds[i] + 1
        if sizes > MAX_CANDIDATES:
            raise CapExceeded(f"{sizes} candidates exceed {MAX_CANDIDATES}")
        yield from _fill(n, Q, a0, idx, bounds)


def _fill(n, Q, a0, idx, bounds):
    import itertools

    ranges = [range(-bounds[i], bounds[i] + 1) for i in idx]
    for choice in itertools.product(*ranges):
        coeffs = [0] * (n + 1)
        coeffs[n] = 1
        for i, c in zip(idx, choice):
            coeffs[i] = c
        ok = True
        for k in range(0, (n + 1) // 2):
            num = coeffs[n - k] * Q ** (n - k)
            if num % a0:
                ok = False
                break
            ck = num // a0
            if abs(ck) > bounds[k]:
                ok = False
                break
            coeffs[k] = ck
        if ok:
            yield tuple(coeffs)


def enumerate_weil_polys(q: int, w: int, max_deg: int) -> list[tuple[int, ...]]:
    """Monic irreducible integer polynomials of degree <= max_deg with all roots of modulus q^(w/2).

    Output is sorted by ascending-coefficient vector.
    """
    if max_deg > MAX_ENUM_DEGREE:
        raise CapExceeded(f"max_deg {max_deg} exceeds {MAX_ENUM_DEGREE}")
    if w < 0 or int(w) != w:
        raise InputError("weight must be a non-negative integer")
    Q = q ** int(w)
    if Q > MAX_ENUM_Q:
        raise CapExceeded(f"q^w = {Q} exceeds {MAX_ENUM_Q}")
    out = set()
    for n in range(1, max_deg + 1):
        for c in _candidates(n, Q):
            poly = P.normalize(c)
            if not P.is_irreducible(poly):
                continue
            if _moduli_on_circle(poly, Fraction(Q)):
                out.add(c)
    return sorted(out)
