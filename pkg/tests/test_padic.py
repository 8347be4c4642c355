from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ltforge.errors import (
    FieldMismatch,
    NotEisenstein,
    NotIrreducibleModP,
    NotPrime,
    WildRamificationNeedsOverride,
    ZeroResidue,
)
from ltforge.padic import (
    LocalFieldModel,
    PadicNumber,
    default_precision,
    determinant,
    field_arith,
    galois_closure_degree,
    make_field,
    multiplication_matrix,
    norm_to_Qp,
    qp,
    teichmuller,
)

from .conftest import rationals


def elements(field, max_num=30, max_den=6):
    return st.lists(rationals(max_num, max_den), min_size=field.d, max_size=field.d).map(field.element)


def nonzero(field):
    return elements(field).filter(lambda a: not a.is_zero())


# -- field construction --------------------------------------------------------------


def test_base_field_invariants(Q5):
    assert (Q5.e, Q5.f, Q5.q, Q5.d) == (1, 1, 5, 1)


def test_ramified_quadratic(Q2_sqrt2):
    assert (Q2_sqrt2.e, Q2_sqrt2.f, Q2_sqrt2.q) == (2, 1, 2)


def test_unramified_quadratic(Q9):
    assert (Q9.e, Q9.f, Q9.q) == (1, 2, 9)


def test_every_monic_irreducible_quadratic_mod_3_gives_f_2():
    # exhaustive root search mod 3 as the irreducibility oracle
    for b in range(3):
        for c in range(3):
            irreducible = all((t * t + b * t + c) % 3 for t in range(3))
            if irreducible:
                assert make_field(3, u_poly=[c, b, 1]).q == 9
            else:
                with pytest.raises(NotIrreducibleModP):
                    make_field(3, u_poly=[c, b, 1])


@pytest.mark.parametrize("e_poly", [[-4, 1], [-2, 1, 1], [2, 0, 2], [-3, 0, 1]])
def test_rejects_non_eisenstein(e_poly):
    with pytest.raises(NotEisenstein):
        make_field(2, e_poly=e_poly)


def test_rejects_composite_p():
    with pytest.raises(NotPrime):
        make_field(6)


def test_field_json_round_trip(Q2_sqrt2, Q9):
    for K in (Q2_sqrt2, Q9):
        assert LocalFieldModel.from_json(K.to_json()) == K


# -- arithmetic -----------------------------------------------------------------------


def test_capped_division_digits(Q5):
    x = field_arith("div", Q5.from_rational(1, 3), Q5.from_rational(2, 3))
    assert x.digits()[0][0] == (0, [3, 2, 2])
    assert x.rational() == 63


def test_uniformizer_squares_to_two(Q2_sqrt2):
    pi = Q2_sqrt2.uniformizer
    assert (pi * pi).identical(Q2_sqrt2.from_rational(2))


def test_add_zero_keeps_precision(Q5):
    a = Q5.from_rational(Fraction(7, 3), 6)
    b = a + Q5.zero()
    assert b.prec == a.prec and b == a


def test_field_mismatch(Q2, Q5):
    with pytest.raises(FieldMismatch):
        field_arith("add", Q2.one(), Q5.one())


def test_valuations(Q5, Q2_sqrt2):
    assert Q5.from_rational(5).valuation().value == 1
    assert Q2_sqrt2.uniformizer.valuation().value == Fraction(1, 2)
    v = Q5.zero().to_capped(4).valuation()
    assert v.at_least and v.value == 4 and str(v) == ">= 4"


def test_capped_product_precision(Q5):
    a = Q5.from_rational(5, 4)
    b = Q5.from_rational(25, 3)
    # min(Na + vb, Nb + va) = min(4 + 2, 3 + 1)
    assert (a * b).prec == 4


def test_capped_inverse_precision(Q5):
    a = Q5.from_rational(10, 6)
    assert a.inverse().prec == 4


def test_default_precision_env(monkeypatch):
    monkeypatch.setenv("LTFORGE_PRECISION", "33")
    assert default_precision() == 33


@given(st.data())
def test_ring_axioms_exact(data):
    K = make_field(3, u_poly=[1, 0, 1], e_poly=[-3, 0, 1])
    a, b, c = (data.draw(elements(K)) for _ in range(3))
    assert ((a * b) * c).identical(a * (b * c))
    assert (a * (b + c)).identical(a * b + a * c)
    assert (a + b).identical(b + a)


@given(st.data())
def test_ring_axioms_capped_mod_pN(data):
    K = make_field(2, e_poly=[-2, 0, 1])
    N = 6
    a, b, c = (data.draw(elements(K, 20, 1)).to_capped(N) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.data())
def test_valuation_is_additive(data):
    K = make_field(5, e_poly=[-5, 0, 0, 1])
    a, b = data.draw(nonzero(K)), data.draw(nonzero(K))
    assert (a * b).valuation().value == a.valuation().value + b.valuation().value


@given(st.data())
def test_inverse_is_inverse(data):
    K = make_field(3, u_poly=[1, 0, 1])
    a = data.draw(nonzero(K))
    assert (a * a.inverse()).identical(K.one())


@given(st.data(), st.integers(1, 8))
def test_capped_round_trip(data, N):
    K = make_field(2, e_poly=[-2, 0, 1])
    a = data.draw(elements(K, 40, 1))
    assert a.to_capped(N).to_exact().to_capped(N) == a.to_capped(N)
    assert a.to_capped(N) == a.to_capped(N + 3)


def test_padic_json_round_trip(Q9):
    a = Q9.element([Fraction(1, 2), 3])
    for x in (a, a.to_capped(5)):
        back = PadicNumber.from_json(Q9, x.to_json())
        assert back.identical(x)


# -- Teichmuller lifts ---------------------------------------------------------------


def test_teichmuller_two_mod_25(Q5):
    assert teichmuller(Q5, 2, 2).rational() == 7


@pytest.mark.parametrize("p", [2, 5])
def test_teichmuller_of_one(p):
    assert teichmuller(qp(p), 1, 7).rational() == 1


def test_teichmuller_zero_residue(Q5):
    with pytest.raises(ZeroResidue):
        teichmuller(Q5, 5, 3)


@pytest.mark.parametrize("field_args", [(5, None), (7, None), (3, [1, 0, 1]), (2, [1, 1, 1])])
def test_teichmuller_has_order_dividing_q_minus_1(field_args):
    K = make_field(*field_args)
    N = 6
    residues = range(1, K.p) if K.f == 1 else [[a, b] for a in range(K.p) for b in range(K.p) if a or b]
    for r in residues:
        t = teichmuller(K, r, N)
        assert t ** (K.q - 1) == K.one().to_capped(N)


# -- norms ---------------------------------------------------------------------------


def test_norm_examples(Q5, Q2_sqrt2):
    assert norm_to_Qp(Q5, Q5.uniformizer) == 5
    assert norm_to_Qp(Q2_sqrt2, Q2_sqrt2.uniformizer) == -2
    K = make_field(5, e_poly=[-30, 1])
    assert norm_to_Qp(K, K.uniformizer) == 30


@given(st.data())
def test_norm_multiplicative_and_matches_determinant(data):
    K = make_field(3, u_poly=[1, 0, 1], e_poly=[-3, 0, 1])
    a, b = data.draw(elements(K, 9, 3)), data.draw(elements(K, 9, 3))
    na, nb = norm_to_Qp(K, a), norm_to_Qp(K, b)
    assert norm_to_Qp(K, a * b) == na * nb
    assert determinant(multiplication_matrix(a)) == na


def test_norm_of_sqrt2_plus_one_against_sympy():
    K = make_field(2, e_poly=[-2, 0, 1])
    a = K.element([1, 1])
    x = sympy.symbols("x")
    assert norm_to_Qp(K, a) == sympy.resultant(x ** 2 - 2, x + 1, x) == -1


# -- Galois closure degree -------------------------------------------------------------


def test_galois_closure_degrees(Q5, Q2_sqrt2):
    assert galois_closure_degree(Q5) == 1
    assert galois_closure_degree(Q2_sqrt2, 2) == 2
    with pytest.raises(WildRamificationNeedsOverride):
        galois_closure_degree(Q2_sqrt2)
    assert galois_closure_degree(make_field(5, e_poly=[-5, 0, 0, 1])) == 6


def test_galois_closure_when_roots_of_unity_present():
    # 7 = 1 mod 3: mu_3 is in Q_7, so Q_7(7^(1/3)) is Galois
    assert galois_closure_degree(make_field(7, e_poly=[-7, 0, 0, 1])) == 3
    # x^2 - 3p: quadratic extensions are Galois
    assert galois_closure_degree(make_field(5, e_poly=[-15, 0, 1])) == 2
