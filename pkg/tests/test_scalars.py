from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qschur.scalars import EPS, ONE, ZERO, GaussianRational


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


rationals = st.builds(
    Fraction,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_eps_squares_to_minus_one():
    assert EPS * EPS == gr(-1)


def test_half_plus_eps_cancellation():
    assert gr(Fraction(1, 2), 1) + gr(Fraction(1, 2), -1) == ONE


def test_conjugate_product():
    assert gr(1, 1) * gr(1, -1) == gr(2)


def test_division_and_inverse():
    x = gr(3, Fraction(-2, 5))
    assert x / x == ONE
    assert x * x.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        x / ZERO


def test_mixed_int_arithmetic():
    assert 2 * EPS - EPS == EPS
    assert (1 + EPS) * (1 - EPS) == 2
    assert 1 / EPS == -EPS


def test_json_round_trip():
    x = gr(Fraction(-7, 3), Fraction(1, 2))
    assert GaussianRational.from_json(x.to_json()) == x
    assert x.to_json() == {"re": "-7/3", "im": "1/2"}


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(gaussians)
def test_inverses(a):
    assert a + (-a) == ZERO
    if a:
        assert a * (ONE / a) == ONE


@given(gaussians)
def test_reduction_idempotent(a):
    again = GaussianRational(a.re, a.im)
    assert again == a and hash(again) == hash(a)
    assert a.re.denominator > 0 and a.im.denominator > 0
