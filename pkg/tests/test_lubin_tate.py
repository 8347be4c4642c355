from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ltforge.errors import BadFrobeniusReduction, BadLinearTerm, LevelTooLarge, UniformizerMismatch
from ltforge.lubin_tate import (
    axiom_report,
    default_frobenius,
    formal_group_law,
    formal_log,
    inverse_series,
    isomorphism_theta,
    linear_independence,
    log_coefficient_bound,
    log_tail_bound,
    multiplication_by,
    newton_polygon,
    point_add,
    point_mul,
    point_neg,
    torsion_newton_polygon,
    validate_frobenius,
)
from ltforge.padic import make_field, qp
from ltforge.series import Series, compose1, embed, invert_series, series1, series2, substitute

Q2, Q3, Q5 = qp(2), qp(3), qp(5)
Q2S = make_field(2, e_poly=[-2, 0, 1])


def X1(k, D):
    return Series.variable(k, 0, 1, D)


def XY(k, D):
    return Series.variable(k, 0, 2, D), Series.variable(k, 1, 2, D)


def multiplicative(D):
    return series2(Q2, {(1, 0): 1, (0, 1): 1, (1, 1): 1}, D)


def binomial_model(a, D):
    # (1+X)^a - 1
    return series1(Q2, {n: comb(a, n) for n in range(1, min(a, D) + 1)}, D)


# -- Frobenius series ---------------------------------------------------------------


def test_default_frobenius_shapes():
    assert default_frobenius(Q2).phi == series1(Q2, {1: 2, 2: 1}, None)
    assert default_frobenius(Q5).phi == series1(Q5, {1: 5, 5: 1}, None)
    assert default_frobenius(Q2S).phi == series1(Q2S, {1: Q2S.uniformizer, 2: 1}, None)


def test_frobenius_validation():
    validate_frobenius(Q2, series1(Q2, {1: 2, 2: 1, 3: 2}, None))
    with pytest.raises(BadFrobeniusReduction):
        validate_frobenius(Q2, series1(Q2, {1: 2, 3: 1}, None))
    with pytest.raises(BadLinearTerm):
        validate_frobenius(Q2, series1(Q2, {1: 4, 2: 1}, None))
    with pytest.raises(BadLinearTerm):
        validate_frobenius(Q2, series1(Q2, {0: 2, 1: 2, 2: 1}, None))


# -- the multiplicative model ------------------------------------------------------------


def test_law_is_multiplicative_group():
    law = formal_group_law(default_frobenius(Q2), 6)
    assert law.F == multiplicative(6)


def test_multiplication_by_three():
    phi = default_frobenius(Q2)
    assert multiplication_by(3, phi, 4) == series1(Q2, {1: 3, 2: 3, 3: 1}, 4)


@pytest.mark.parametrize("a", [2, 4, 5, 7])
def test_multiplication_matches_binomial_model(a):
    assert multiplication_by(a, default_frobenius(Q2), 8) == binomial_model(a, 8)


def test_log_is_log_one_plus_x():
    lam = formal_log(default_frobenius(Q2), 10)
    assert lam == series1(Q2, {n: Fraction((-1) ** (n + 1), n) for n in range(1, 11)}, 10)


def test_log_is_identity_below_q():
    lam = formal_log(default_frobenius(Q5), 4)
    assert lam == X1(Q5, 4)


def test_log_against_sympy():
    D = 8
    lam = formal_log(default_frobenius(Q3), D)
    # for 3X + X^3 the log has coefficients only in degrees 3^j; compare with the recursion
    # lambda(phi(X)) = 3 lambda(X) checked symbolically
    x = sympy.symbols("x")
    L = sum(sympy.Rational(str(lam[(n,)].rational())) * x ** n for n in range(1, D + 1) if (n,) in lam.coeffs)
    diff = sympy.expand(L.subs(x, 3 * x + x ** 3) - 3 * L)
    assert all(diff.coeff(x, n) == 0 for n in range(1, D + 1))


def test_point_add_multiplicative():
    law = formal_group_law(default_frobenius(Q2), 10)
    assert point_add(law, 2, 2, N=8).rational() == 8


def test_point_mul_by_pi_uses_phi():
    phi = default_frobenius(Q2)
    assert point_mul(2, phi, 2, 10, N=10).rational() == 8
    assert point_mul(2, phi, -2, 10, N=10).is_zero()


# -- axioms and homomorphism laws ---------------------------------------------------------


FIELDS = [
    pytest.param(Q2, id="Q2"),
    pytest.param(Q3, id="Q3"),
    pytest.param(Q5, id="Q5"),
    pytest.param(Q2S, id="Q2(sqrt2)"),
    pytest.param(make_field(3, u_poly=[1, 0, 1]), id="Q9"),
]


@pytest.mark.parametrize("k", FIELDS)
def test_axioms(k):
    law = formal_group_law(default_frobenius(k), 8)
    assert axiom_report(law) == {"commutative": True, "unit": True,
                                 "associative": True, "phi_equivariant": True}


@pytest.mark.parametrize("k", FIELDS)
def test_homomorphism_laws(k):
    D = 7
    phi = default_frobenius(k)
    F = formal_group_law(phi, D).F
    X, Y = XY(k, D)
    pi = phi.pi
    for a, b in [(2, 3), (pi, 3), (pi, pi)]:
        A, B = multiplication_by(a, phi, D), multiplication_by(b, phi, D)
        AB = multiplication_by(k.coerce(a) * k.coerce(b), phi, D)
        assert compose1(A, B).equal_through(AB, D)
        ApB = multiplication_by(k.coerce(a) + k.coerce(b), phi, D)
        assert substitute(F, A, B).equal_through(ApB, D)
        assert substitute(A, F).equal_through(substitute(F, embed(A, 2, 0), embed(A, 2, 1)), D)


@pytest.mark.parametrize("k", FIELDS)
def test_pi_power_is_iterate(k):
    D = 8
    phi = default_frobenius(k)
    assert multiplication_by(phi.pi, phi, D).equal_through(phi.phi.truncate(D), D)
    it = phi.phi.truncate(D)
    for n in (2, 3):
        it = compose1(phi.phi.truncate(D), it)
        assert multiplication_by(phi.pi ** n, phi, D).equal_through(it, D)


@pytest.mark.parametrize("k", FIELDS)
def test_log_linearizes(k):
    D = 8
    phi = default_frobenius(k)
    F = formal_group_law(phi, D).F
    lam = formal_log(phi, D)
    X, Y = XY(k, D)
    assert substitute(lam, F).equal_through(substitute(lam, X) + substitute(lam, Y), D)
    for a in (2, phi.pi):
        A = multiplication_by(a, phi, D)
        assert compose1(lam, A).equal_through(lam * k.coerce(a), D)


def test_log_coefficient_bounds_hold():
    for k in (Q2, Q3, Q2S):
        D = 12
        lam = formal_log(default_frobenius(k), D)
        for (n,), c in lam.coeffs.items():
            assert c.valuation().value >= log_coefficient_bound(k, n)


def test_log_tail_bound_on_multiplicative_model():
    # v(x^n / n) for n > D and v(x) = 1 over Q_2, brute force over a long range
    D, v = 6, Fraction(1)
    direct = min(n * v - sympy.multiplicity(2, n) for n in range(D + 1, 400))
    assert log_tail_bound(Q2, D, v) <= direct


@given(st.sampled_from([2, 4, 6, -2, 10, 12, -4]))
def test_point_plus_negative_is_zero(x):
    law = formal_group_law(default_frobenius(Q2), 12)
    s = point_add(law, x, point_neg(law, x, N=8), N=8)
    assert s.is_zero()


def test_inverse_series_multiplicative():
    law = formal_group_law(default_frobenius(Q2), 8)
    # 1/(1+X) - 1
    assert inverse_series(law) == series1(Q2, {n: (-1) ** n for n in range(1, 9)}, 8)


# -- isomorphisms ---------------------------------------------------------------------------


def _conjugated(D):
    phi = default_frobenius(Q2)
    s = series1(Q2, {1: 1, 2: 1}, D)
    phi2 = compose1(compose1(s, phi.phi.truncate(D)), invert_series(s))
    return phi, validate_frobenius(Q2, phi2), s


def test_theta_recovers_conjugator():
    D = 10
    phi, phi2, s = _conjugated(D)
    theta = isomorphism_theta(phi, phi2, D)
    assert theta == s


def test_theta_transports_structure():
    D = 8
    phi, phi2, _ = _conjugated(D)
    theta = isomorphism_theta(phi, phi2, D)
    F1, F2 = formal_group_law(phi, D).F, formal_group_law(phi2, D).F
    assert substitute(theta, F1).equal_through(
        substitute(F2, embed(theta, 2, 0), embed(theta, 2, 1)), D)
    for a in (3, 5, 2):
        assert compose1(theta, multiplication_by(a, phi, D)).equal_through(
            compose1(multiplication_by(a, phi2, D), theta), D)


def test_theta_self_is_identity():
    phi = default_frobenius(Q3)
    assert isomorphism_theta(phi, phi, 8) == X1(Q3, 8)


def test_theta_needs_same_uniformizer():
    with pytest.raises(UniformizerMismatch):
        isomorphism_theta(default_frobenius(Q5), default_frobenius(Q5, 30), 6)


# -- torsion -----------------------------------------------------------------------------


def test_newton_polygon_basic():
    # p + X^(p-1) at p = 5
    assert newton_polygon({0: Fraction(1), 4: Fraction(0)}) == [(Fraction(1, 4), 4)]


def test_torsion_level_one_and_two_over_Q2():
    phi = default_frobenius(Q2)
    r1 = torsion_newton_polygon(phi, 1)
    assert r1.total == 2 and r1.slopes == ((Fraction(1), 1),) and r1.zero_root
    r2 = torsion_newton_polygon(phi, 2)
    assert r2.total == 4 and r2.new_slopes == ((Fraction(1, 2), 2),)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_first_layer_slopes(p):
    r = torsion_newton_polygon(default_frobenius(qp(p)), 1)
    assert r.slopes == ((Fraction(1, p - 1), p - 1),)


@pytest.mark.parametrize("k,levels", [(Q2, 4), (Q3, 4), (Q2S, 4), (Q5, 4)])
def test_torsion_tower_counts_and_new_slopes(k, levels):
    phi = default_frobenius(k)
    q = k.q
    for n in range(1, levels + 1):
        r = torsion_newton_polygon(phi, n)
        assert r.total == q ** n
        assert r.new_slopes == ((Fraction(1, q ** (n - 1) * (q - 1)), q ** (n - 1) * (q - 1)),)


def test_torsion_with_target_point():
    r = torsion_newton_polygon(default_frobenius(Q2), 2, 2)
    assert r.total == 4 and not r.zero_root
    assert sum(c for _, c in r.slopes) == 4


def test_torsion_level_cap():
    with pytest.raises(LevelTooLarge):
        torsion_newton_polygon(default_frobenius(Q2), 5)


def test_torsion_slopes_match_sympy_factorization():
    # roots of the level-2 polynomial over Q_2: X (X + 2) (X^2 + 2X + 2)
    x = sympy.symbols("x")
    it = sympy.expand((2 * x + x ** 2).subs(x, 2 * x + x ** 2))
    assert sympy.factor_list(it)[1] == [(x, 1), (x + 2, 1), (x ** 2 + 2 * x + 2, 1)]


# -- linear independence -------------------------------------------------------------------


def test_single_point_is_independent():
    res = linear_independence([Q2.from_rational(4)], default_frobenius(Q2), 16, 12)
    assert res.independent is True


def test_torsion_point_is_inconclusive():
    res = linear_independence([Q2.from_rational(-2)], default_frobenius(Q2), 16, 12)
    assert res.independent is None


def test_point_and_its_double_are_inconclusive():
    phi = default_frobenius(Q2)
    x = Q2.from_rational(4)
    y = point_mul(3, phi, x, 16, 12)
    res = linear_independence([x, y], phi, 16, 12)
    assert res.independent is None
