import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ltforge.algebraic import (
    AlgebraicNumber,
    algebraic_from_poly,
    composed_product,
    enumerate_weil_polys,
    is_root_of_unity,
    is_weil,
    power_roots_poly,
    product_power_conjugates,
)
from ltforge.errors import CapExceeded, ReducibleNeedsChoice

x, y = sympy.symbols("x y")


def as_sympy(coeffs, var=x):
    return sum(sympy.Rational(str(Fraction(c))) * var ** i for i, c in enumerate(coeffs))


def monic(poly_expr):
    p = sympy.Poly(poly_expr, x)
    return tuple(Fraction(str(c)) for c in reversed(p.monic().all_coeffs()))


# -- construction ------------------------------------------------------------------------


def test_construction_examples():
    a = algebraic_from_poly([2, -2, 1])
    assert a.degree == 2 and a.integer_flag
    with pytest.raises(ReducibleNeedsChoice) as info:
        algebraic_from_poly([-1, 0, 1])
    assert sorted(info.value.factors) == sorted([(Fraction(-1), Fraction(1)), (Fraction(1), Fraction(1))])
    r = algebraic_from_poly([-30, 1])
    assert r.is_rational and r.value == 30 and r.integer_flag


def test_non_monic_input_is_normalized():
    a = algebraic_from_poly([1, 0, 2])
    assert a.min_poly == (Fraction(1, 2), 0, 1) and not a.integer_flag


# -- Weil decisions -------------------------------------------------------------------------


def test_weil_examples():
    gauss = algebraic_from_poly([2, -2, 1])
    assert is_weil(gauss, 2, 1).holds
    for p in (2, 3, 5, 7):
        assert is_weil(AlgebraicNumber.rational(p), p, 2).holds
        res = is_weil(AlgebraicNumber.rational(p), p, 1)
        assert not res.holds and res.margin > 0
    assert is_weil(algebraic_from_poly([3, -1, 1]), 3, 1).holds
    zeta6 = algebraic_from_poly([1, -1, 1])
    for q in (1, 2, 7, 25):
        assert is_weil(zeta6, q, 0).holds


def test_margin_is_a_certified_gap():
    # margin bounds | |z|^2 - q^w | from below: here |z|^2 = 3 against q^w = 2
    res = is_weil(algebraic_from_poly([-3, 0, 1]), 2, 1)
    assert not res.holds
    assert 0 < res.margin <= 1


def test_rational_weights_and_negative_weights():
    # 2^(1/2)-power: sqrt 2 has modulus 2^(1/2) = q^(w/2) at q=2, w=1
    assert is_weil(algebraic_from_poly([-2, 0, 1]), 2, 1).holds
    # 2 = 4^(1/2): weight 1 over q = 4; 1/2 has weight -1
    assert is_weil(AlgebraicNumber.rational(Fraction(1, 2)), 4, -1).holds
    # cube root of 2 has modulus 2^(1/3) = 2^(w/2) with w = 2/3
    assert is_weil(algebraic_from_poly([-2, 0, 0, 1]), 2, Fraction(2, 3)).holds
    assert not is_weil(algebraic_from_poly([-2, 0, 0, 1]), 2, Fraction(1, 3)).holds


def test_integrality_clause():
    half_gauss = algebraic_from_poly([Fraction(1, 2), -1, 1])  # (1 +- i) / 2
    assert is_weil(half_gauss, 2, -1).holds
    assert not is_weil(half_gauss, 2, -1, require_integer=True).holds


def test_weil_distinguishes_same_norm():
    # x^2 - 3x + 2 = (x-1)(x-2) is excluded; x^2 + x + 2 has roots of modulus sqrt 2
    assert is_weil(algebraic_from_poly([2, 1, 1]), 2, 1).holds
    # x^4 + x^2 + 4: x^2 = (-1 +- sqrt(-15)) / 2 has modulus 2
    assert is_weil(algebraic_from_poly([4, 0, 1, 0, 1]), 2, 1).holds
    # x^4 - x^2 + 4 also satisfies the functional equation; numeric roots decide
    roots = np.roots([1, 0, -1, 0, 4])
    expected = bool(np.allclose(np.abs(roots), math.sqrt(2)))
    assert is_weil(algebraic_from_poly([4, 0, -1, 0, 1]), 2, 1).holds == expected


def _rects(poly):
    out = []
    for r in np.roots(list(reversed([float(c) for c in poly]))):
        eps = 1e-3
        out.append(((Fraction(r.real - eps).limit_denominator(10 ** 6), Fraction(r.real + eps).limit_denominator(10 ** 6)),
                    (Fraction(r.imag - eps).limit_denominator(10 ** 6), Fraction(r.imag + eps).limit_denominator(10 ** 6))))
    return out


@pytest.mark.parametrize("poly,q,w", [([2, -2, 1], 2, 1), ([3, -1, 1], 3, 1), ([-3, 0, 1], 2, 1),
                                      ([4, 0, 1, 0, 1], 2, 1), ([1, 1, 1], 5, 0)])
def test_selector_independence(poly, q, w):
    base = algebraic_from_poly(poly)
    results = {is_weil(base.with_selector(rect), q, w).holds for rect in _rects(poly)}
    assert results == {is_weil(base, q, w).holds}


WEIL_PAIRS = [
    ([2, -2, 1], 2, 1), ([3, -1, 1], 3, 1), ([2, 1, 1], 2, 1), ([-2, 0, 1], 2, 1),
    ([1, 1, 1], 2, 0), ([1, 0, 1], 3, 0), ([5, 0, 1], 5, 1),
]


@given(st.sampled_from(WEIL_PAIRS), st.sampled_from(WEIL_PAIRS))
def test_products_of_weil_numbers(a, b):
    (pa, qa, wa), (pb, qb, wb) = a, b
    if qa != qb and wa and wb:
        return
    q = qa if wa else qb
    assert is_weil(algebraic_from_poly(pa), q, wa).holds and is_weil(algebraic_from_poly(pb), q, wb).holds
    prod = composed_product(pa, pb)
    # resultant oracle for the composed product
    oracle = sympy.resultant(as_sympy(pa, y), sympy.expand(y ** len(pb[:-1]) * as_sympy(pb).subs(x, x / y)), y)
    assert monic(oracle) == tuple(Fraction(c) for c in prod)
    for f, _ in sympy.factor_list(as_sympy(prod))[1]:
        assert is_weil(algebraic_from_poly(monic(f)), q, wa + wb).holds


def test_power_roots_examples():
    assert power_roots_poly([2, -2, 1], 2) == (4, 0, 1)
    assert power_roots_poly([2, -2, 1], 1) == (2, -2, 1)
    assert power_roots_poly([-3, 1], 3) == (-27, 1)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.integers(1, 4))
def test_power_roots_against_resultant_and_numeric_roots(low, r):
    m = low + [1]
    got = power_roots_poly(m, r)
    oracle = sympy.resultant(as_sympy(m, y), x - y ** r, y)
    assert tuple(Fraction(c) for c in got) == monic(oracle * (-1) ** 0)
    want = sorted(np.roots(list(reversed(m))) ** r, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    have = sorted(np.roots(list(reversed([float(c) for c in got]))), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    assert np.allclose(want, have, atol=1e-5)


def test_conjugate_products():
    assert product_power_conjugates([-3, 1], [4]).poly == (-81, 1)
    cands = product_power_conjugates([2, -2, 1], [1, 1])
    # (1 + i)(1 - i) = 2 is among the candidates
    assert sum(c * 2 ** i for i, c in enumerate(cands.poly)) == 0
    assert product_power_conjugates([2, -2, 1], [0, 0]).poly == (-1, 1)


# -- roots of unity ----------------------------------------------------------------------


def test_root_of_unity_examples():
    assert is_root_of_unity(AlgebraicNumber.rational(-1)) == 2
    assert is_root_of_unity(AlgebraicNumber.rational(6)) is None
    assert is_root_of_unity(algebraic_from_poly([1, 1, 1])) == 3
    # (3 + 4i) / 5 has modulus one but is not integral
    assert is_root_of_unity(algebraic_from_poly([1, Fraction(-6, 5), 1])) is None


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 18, 20, 24, 30])
def test_cyclotomic_orders(N):
    phi_N = monic(sympy.cyclotomic_poly(N, x))
    order = is_root_of_unity(AlgebraicNumber(phi_N))
    assert order == N
    assert sympy.rem(x ** order - 1, as_sympy(phi_N), x) == 0


# -- enumeration --------------------------------------------------------------------------


def brute_force(q, w, max_deg):
    """Scan the full coefficient box |a_i| <= C(n,i) Q^((n-i)/2) with numeric roots."""
    Q = q ** w
    out = set()
    for n in range(1, max_deg + 1):
        bounds = [math.floor(math.comb(n, i) * Q ** ((n - i) / 2) + 1e-9) for i in range(n)]
        for coeffs in itertools.product(*[range(-b, b + 1) for b in bounds]):
            poly = list(coeffs) + [1]
            if coeffs[0] == 0:
                continue
            if not sympy.Poly(as_sympy(poly), x).is_irreducible:
                continue
            if np.allclose(np.abs(np.roots(list(reversed(poly)))), math.sqrt(Q), atol=1e-7):
                out.add(tuple(poly))
    return sorted(out)


@pytest.mark.parametrize("q,w,max_deg", [(2, 1, 2), (3, 1, 2), (5, 2, 1), (2, 0, 2), (2, 1, 3)])
def test_enumeration_matches_brute_force(q, w, max_deg):
    assert enumerate_weil_polys(q, w, max_deg) == brute_force(q, w, max_deg)


def test_enumeration_examples():
    got = enumerate_weil_polys(2, 1, 2)
    assert len(got) == 6
    assert set(got) == {(2, -a, 1) for a in (-2, -1, 0, 1, 2)} | {(-2, 0, 1)}
    assert set(enumerate_weil_polys(7, 0, 2)) == {(-1, 1), (1, 1), (1, 0, 1), (1, 1, 1), (1, -1, 1)}
    assert enumerate_weil_polys(5, 2, 1) == [(-5, 1), (5, 1)]


def test_enumeration_caps():
    with pytest.raises(CapExceeded):
        enumerate_weil_polys(2, 1, 9)
