from fractions import Fraction
import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from rk10.core.exceptions import Rk10DivisionByZeroError
from rk10.core.field import (
    FieldElement,
    ZERO,
    UNIT,
    ROOT3,
    ROOT7,
    ROOT21,
    ALPHA_ELEMENT,
    BETA_ELEMENT,
    BASIS_LABELS,
    basis_values,
)
from rk10.testing import field_elements, nonzero_rationals, rationals


def test_alpha_beta_relations():
    assert ALPHA_ELEMENT * ALPHA_ELEMENT == (7 + 2 * ROOT7) / 21
    assert BETA_ELEMENT * BETA_ELEMENT == (7 - 2 * ROOT7) / 21
    assert ALPHA_ELEMENT * BETA_ELEMENT == ROOT21 / 21
    assert ROOT3 * ALPHA_ELEMENT == (2 + ROOT7) * BETA_ELEMENT
    assert ROOT3 * ROOT7 == ROOT21


def test_basis_products_numerically():
    values = basis_values(40)
    with mpmath.workdps(40):
        for i in range(len(BASIS_LABELS)):
            for j in range(len(BASIS_LABELS)):
                product = FieldElement.basis(i) * FieldElement.basis(j)
                assert abs(product.to_mpf(30) - values[i] * values[j]) < mpmath.mpf(
                    10
                ) ** (-28)


def test_alpha_value():
    with mpmath.workdps(50):
        expected = mpmath.sqrt((7 + 2 * mpmath.sqrt(7)) / 21)
        assert abs(ALPHA_ELEMENT.to_mpf(40) - expected) < mpmath.mpf(10) ** -38


def test_rational_interop():
    x = ROOT7 + Fraction(1, 2)
    assert 1 + x == x + 1
    assert 2 * x == x * 2 == x + x
    assert 1 - x == -(x - 1)
    assert (x / 3) * 3 == x
    assert Fraction(1, 2) / x == (x / Fraction(1, 2)).inverse()


def test_equality_and_hash():
    assert FieldElement.from_rational(Fraction(3, 4)) == Fraction(3, 4)
    assert hash(FieldElement.from_rational(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert FieldElement([2, 4, 0, 0, 0, 0, 0, 0], 4) == FieldElement(
        [1, 2, 0, 0, 0, 0, 0, 0], 2
    )
    assert ROOT3 != ROOT7
    assert not ZERO
    assert UNIT


def test_division_by_zero():
    with pytest.raises(Rk10DivisionByZeroError):
        ROOT7 / 0
    with pytest.raises(Rk10DivisionByZeroError):
        ZERO.inverse()
    with pytest.raises(Rk10DivisionByZeroError):
        ROOT3 / ZERO


def test_nine_integers():
    x = FieldElement.from_coordinates(
        [Fraction(1, 2), 0, Fraction(-1, 3), 0, 0, 0, 0, Fraction(5, 6)]
    )
    assert x.nine_integers() == (3, 0, -2, 0, 0, 0, 0, 5, 6)
    assert x.xi[2] == Fraction(-1, 3)
    assert not x.is_rational()


def test_power():
    assert ROOT7**2 == 7
    assert ROOT3**3 == 3 * ROOT3
    assert ALPHA_ELEMENT**-1 * ALPHA_ELEMENT == 1
    assert ROOT7**0 == 1


def test_str():
    assert str(FieldElement.from_rational(Fraction(-2, 3))) == "-2/3"
    assert str(ROOT7 / 2 - 1) == "-1 + 1/2*sqrt7"


@settings(max_examples=40, deadline=None)
@given(field_elements(), field_elements(), field_elements())
def test_ring_axioms(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@settings(max_examples=25, deadline=None)
@given(field_elements())
def test_inverse(x):
    if x:
        assert x * x.inverse() == 1
        assert abs(x.inverse().to_mpf(20) * x.to_mpf(20) - 1) < mpmath.mpf(10) ** -15


@given(rationals(), nonzero_rationals())
def test_rationals_embed(p, q):
    assert FieldElement.from_rational(p) / q == p / q
    assert (FieldElement.from_rational(p) + q).rational_value() == p + q


@given(st.integers(min_value=-50, max_value=50))
def test_to_mpf_of_integers(n):
    assert FieldElement.from_rational(n).to_mpf(20) == n
