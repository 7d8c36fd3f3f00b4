from fractions import Fraction
import pytest
from rk10.core.exceptions import Rk10FormatError
from rk10.core.field import (
    FieldElement,
    ROOT7,
    ALPHA_ELEMENT,
    decode_nine_integers,
    parse_field_literal,
    parse_rational,
    parse_xi_block,
)


def test_parse_rational():
    assert parse_rational(" -2/7 ") == Fraction(-2, 7)
    assert parse_rational("5") == 5
    with pytest.raises(Rk10FormatError, match="zero denominator"):
        parse_rational("1/0")
    with pytest.raises(Rk10FormatError, match="malformed rational"):
        parse_rational("0.5")


def test_decode_nine_integers():
    decoded = decode_nine_integers([1, 0, 2, 0, 0, 0, 0, 0, 4])
    assert decoded == Fraction(1, 4) + ROOT7 / 2
    with pytest.raises(Rk10FormatError, match="expected 9 integers"):
        decode_nine_integers([1, 2, 3])
    with pytest.raises(Rk10FormatError, match="zero common denominator"):
        decode_nine_integers([1, 0, 0, 0, 0, 0, 0, 0, 0])


def test_xi_block():
    x = parse_xi_block("xi: 1/2 0/1 -1/3 0/1 0/1 0/1 0/1 0/1")
    assert x == Fraction(1, 2) - ROOT7 / 3
    assert parse_xi_block(x.format_xi()) == x
    with pytest.raises(Rk10FormatError, match="needs 8 coordinates"):
        parse_xi_block("xi: 1/2 3/4")


def test_parse_field_literal_forms():
    assert parse_field_literal("3/5") == Fraction(3, 5)
    assert parse_field_literal("[2, 0, 0, 0, 0, 0, 0, 0, 3]") == Fraction(2, 3)
    assert parse_field_literal("2/7*sqrt7") == 2 * ROOT7 / 7
    assert parse_field_literal("-alpha") == -ALPHA_ELEMENT
    half = FieldElement.from_rational(Fraction(1, 2))
    assert parse_field_literal("2*h", {"h": half}) == 1


def test_parse_field_literal_errors():
    with pytest.raises(Rk10FormatError, match="empty field literal"):
        parse_field_literal("  ")
    with pytest.raises(Rk10FormatError, match="unrecognised factor 'gamma'"):
        parse_field_literal("2*gamma")
