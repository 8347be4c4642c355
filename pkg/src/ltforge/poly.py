"""Dense univariate polynomials over Q and F_p.

Polynomials are tuples of coefficients in ascending order (constant term
first) with trailing zeros stripped; the zero polynomial is ``()``.
Rational coefficients are ``Fraction``; F_p coefficients are ints in
``range(p)``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, isqrt
from typing import Iterable, Sequence

import sympy

Poly = tuple  # tuple[Fraction, ...]

_X = sympy.Symbol("x")


def parse_rational(value) -> Fraction:
    """Accept int, Fraction, "a/b" strings and ``[num, den]`` pairs."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise TypeError(f"cannot read a rational from {value!r}")


def rational_to_json(c: Fraction):
    c = Fraction(c)
    return [c.numerator, c.denominator]


def normalize(coeffs: Iterable) -> Poly:
    out = [parse_rational(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(a: Poly) -> int:
    return len(a) - 1


def is_monic(a: Poly) -> bool:
    return bool(a) and a[-1] == 1


def is_integral(a: Poly) -> bool:
    return all(c.denominator == 1 for c in a)


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return normalize(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, c) -> Poly:
    return normalize(c * x for x in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return normalize(out)


def power(a: Poly, n: int) -> Poly:
    result: Poly = (Fraction(1),)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def monomial(c, n: int) -> Poly:
    return normalize([0] * n + [c])


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        if c:
            q[i] = c
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return normalize(q), normalize(rem[: len(b) - 1])


def evaluate(a: Poly, x):
    acc = Fraction(0) if not isinstance(x, complex) else 0j
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a: Poly) -> Poly:
    return normalize(i * c for i, c in enumerate(a) if i)


def make_monic(a: Poly) -> Poly:
    return scale(a, 1 / a[-1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return make_monic(a) if a else ()


def squarefree_part(a: Poly) -> Poly:
    g = poly_gcd(a, derivative(a))
    return make_monic(divmod_poly(a, g)[0])


def compose(outer: Poly, inner: Poly) -> Poly:
    acc: Poly = ()
    for c in reversed(outer):
        acc = add(mul(acc, inner), (c,) if c else ())
    return acc


def reciprocal(a: Poly) -> Poly:
    """Monic polynomial whose roots are the inverses of the roots of ``a``."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("zero is a root")
    return make_monic(normalize(reversed(a)))


def x_power_minus_one(n: int) -> Poly:
    return normalize([-1] + [0] * (n - 1) + [1])


# --- Sturm sequences -------------------------------------------------------

def sturm_sequence(a: Poly) -> list[Poly]:
    seq = [a, derivative(a)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(neg(r))
    return [s for s in seq if s]


def _sign_changes(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for u, v in zip(nz, nz[1:]) if u != v)


def _sign_at(a: Poly, x) -> int:
    v = evaluate(a, x)
    return (v > 0) - (v < 0)


def _sign_at_infinity(a: Poly, positive: bool) -> int:
    s = 1 if a[-1] > 0 else -1
    if not positive and degree(a) % 2:
        s = -s
    return s


def count_real_roots(a: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of squarefree ``a`` in ``(lo, hi]``.

    ``None`` stands for -inf / +inf.  Endpoints may be roots.
    """
    seq = sturm_sequence(a)
    v_lo = _sign_changes(
        [_sign_at_infinity(s, False) for s in seq] if lo is None
        else [_sign_at(s, lo) for s in seq]
    )
    v_hi = _sign_changes(
        [_sign_at_infinity(s, True) for s in seq] if hi is None
        else [_sign_at(s, hi) for s in seq]
    )
    return v_lo - v_hi


# --- sympy bridges ----------------------------------------------------------

def to_sympy(a: Poly, x=_X) -> sympy.Poly:
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(a)] or [0],
                      x, domain="QQ")


def from_sympy(p: sympy.Poly) -> Poly:
    return normalize(Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs()))


def factor_rational(a: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities, sorted."""
    _, factors = to_sympy(a).factor_list()
    out = [(make_monic(from_sympy(f)), k) for f, k in factors]
    return sorted(out, key=lambda fk: (degree(fk[0]), fk[0]))


def is_irreducible(a: Poly) -> bool:
    if degree(a) <= 0:
        return False
    if degree(a) == 1:
        return True
    return to_sympy(a).is_irreducible


def resultant_sympy(f, g, var):
    return sympy.resultant(f, g, var)


# --- integer helpers ---------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def vp(n, p: int) -> int | None:
    """p-adic valuation of a nonzero rational; ``None`` for zero."""
    n = Fraction(n)
    if n == 0:
        return None
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def exact_root(n: int, k: int) -> int | None:
    """Integer k-th root of a non-negative integer if it exists."""
    if n < 0:
        return None
    if k == 1:
        return n
    r = round(n ** (1.0 / k)) if n < 2 ** 1000 else isqrt(n)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def rational_root(c: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a positive rational, if rational."""
    if c <= 0:
        return None
    a = exact_root(c.numerator, k)
    b = exact_root(c.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def binomial_bound(n: int, i: int, Q: Fraction) -> int:
    """floor(C(n, i) * Q^((n-i)/2)) for rational Q > 0."""
    c2 = Fraction(comb(n, i) ** 2) * Q ** (n - i)
    return isqrt(c2.numerator // c2.denominator)


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError("not a unit")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# --- F_p[y] ------------------------------------------------------------------

def fp_normalize(a: Iterable[int], p: int) -> tuple:
    out = [c % p for c in a]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def fp_mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_normalize(out, p)


def fp_divmod(a: tuple, b: tuple, p: int) -> tuple[tuple, tuple]:
    rem = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] * inv % p
        if c:
            q[i] = c
            for j, y in enumerate(b):
                rem[i + j] = (rem[i + j] - c * y) % p
    return fp_normalize(q, p), fp_normalize(rem[: len(b) - 1], p)


def fp_mod(a: tuple, m: tuple, p: int) -> tuple:
    return fp_divmod(a, m, p)[1]


def fp_gcd(a: tuple, b: tuple, p: int) -> tuple:
    while b:
        a, b = b, fp_mod(a, b, p)
    if not a:
        return ()
    return fp_normalize([c * pow(a[-1], -1, p) for c in a], p)


def fp_powmod(a: tuple, n: int, m: tuple, p: int) -> tuple:
    result: tuple = (1,)
    base = fp_mod(a, m, p)
    while n:
        if n & 1:
            result = fp_mod(fp_mul(result, base, p), m, p)
        n >>= 1
        if n:
            base = fp_mod(fp_mul(base, base, p), m, p)
    return result


def fp_is_irreducible(u: tuple, p: int) -> bool:
    """Ben-Or test: gcd(u, y^(p^i) - y) = 1 for 1 <= i <= deg/2."""
    u = fp_normalize(u, p)
    n = len(u) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    y = (0, 1)
    h = y
    for _ in range(n // 2):
        h = fp_powmod(h, p, u, p)
        g = fp_gcd(u, fp_normalize([a - b for a, b in _zip_pad(h, y)], p), p)
        if len(g) > 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]
