from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ltforge.padic import make_field, qp

settings.register_profile(
    "ltforge", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ltforge")


def rationals(max_num=50, max_den=12):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


@pytest.fixture(scope="session")
def Q2():
    return qp(2)


@pytest.fixture(scope="session")
def Q3():
    return qp(3)


@pytest.fixture(scope="session")
def Q5():
    return qp(5)


@pytest.fixture(scope="session")
def Q2_sqrt2():
    return make_field(2, e_poly=[-2, 0, 1], name="Q_2(sqrt2)")


@pytest.fixture(scope="session")
def Q9():
    # y^2 + 1 is irreducible mod 3
    return make_field(3, u_poly=[1, 0, 1], name="Q_9")
