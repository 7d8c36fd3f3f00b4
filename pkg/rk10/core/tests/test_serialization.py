from fractions import Fraction
import mpmath
import pytest
from rk10.common import classic_rk4, three_eighths
from rk10.core.exceptions import Rk10FormatError, Rk10UsageError
from rk10.core.field import ROOT7, FieldElement
from rk10.core.tableau import ButcherTableau
from rk10.core.serialization import (
    LISTING_DIGITS,
    embedded_golden,
    explicit_stage_count,
    format_tableau,
    parse_decimal_listing,
    parse_exact_listing,
    read_tableau,
    write_tableau,
)


def test_explicit_stage_count():
    assert explicit_stage_count(135) == 15
    assert explicit_stage_count(2) == 1
    assert explicit_stage_count(14) == 4
    assert explicit_stage_count(13) is None


def test_golden_listing_shape():
    golden = embedded_golden()
    assert len(golden.decimal_listing) == 135
    assert golden.decimal_listing[0] == "+0." + "0" * LISTING_DIGITS
    assert golden.decimal_listing[-1].startswith("+0.666905070061557")
    assert all(len(line) == LISTING_DIGITS + 3 for line in golden.decimal_listing)
    assert [len(g) for g in golden.constants_rows] == [42, 15, 6]


def test_golden_reformats_to_itself(golden_numeric):
    expected = "\n".join(embedded_golden().decimal_listing) + "\n"
    assert format_tableau(golden_numeric, "decimal", LISTING_DIGITS) == expected


def test_decimal_listing_of_rk4():
    text = format_tableau(classic_rk4(), "decimal", 10)
    lines = text.splitlines()
    assert len(lines) == 14
    assert lines[:4] == [
        "+0.0000000000",
        "+0.5000000000",
        "+0.5000000000",
        "+1.0000000000",
    ]
    assert lines[4] == "+0.1666666667"
    assert lines[-1] == "+1.0000000000"


def test_parse_decimal_listing():
    text = "# rk4\n0\n0.5\n0.5\n1\n\n1/6\n"
    with pytest.raises(Rk10FormatError, match="malformed number '1/6' \\(line 7\\)"):
        parse_decimal_listing(text)
    with pytest.raises(Rk10FormatError, match="cannot infer stage count from 3"):
        parse_decimal_listing("0\n0.5\n1\n")
    tab = parse_decimal_listing(format_tableau(three_eighths(), "decimal", 30))
    assert tab.mode == "numeric"
    assert tab.s == 4
    with mpmath.workdps(40):
        assert abs(tab.A[2][0] + mpmath.mpf(1) / 3) < mpmath.mpf(10) ** -29


def test_decimal_listing_read_exactly(caplog):
    tab = parse_decimal_listing("0\n1\n0.5\n0.5\n1\n", mode="exact")
    assert tab.exact
    assert tab.b == (Fraction(1, 2), Fraction(1, 2))
    assert "printed rationals" in caplog.text


def test_exact_layout():
    text = format_tableau(classic_rk4(), "exact")
    lines = text.splitlines()
    assert lines[0] == "s=4 mode=exact"
    assert len(lines) == 15
    assert lines[2] == "xi: 1/2 0/1 0/1 0/1 0/1 0/1 0/1 0/1"
    assert parse_exact_listing(text) == classic_rk4()


def test_exact_layout_irrational_entries():
    half_root = ROOT7 / 2
    tab = ButcherTableau.from_rows(
        [[0, 0], [half_root, 0]], [1 - half_root, half_root], name="roots"
    )
    assert parse_exact_listing(format_tableau(tab, "exact")) == tab


def test_exact_layout_full_matrix():
    text = "s=1 mode=exact\n1/2\n1\n1/2\n"
    tab = parse_exact_listing(text)
    assert tab.A == ((Fraction(1, 2),),)
    assert not tab.is_explicit
    assert format_tableau(tab, "exact") == "s=1 mode=exact\n" + "\n".join(
        FieldElement.from_rational(x).format_xi()
        for x in (Fraction(1, 2), 1, Fraction(1, 2))
    ) + "\n"


def test_exact_layout_literals():
    text = "s=2 mode=exact\n0\n1/2*sqrt3\n1/2\n1/2\n1 0 0 0 0 0 0 0 2\n"
    tab = parse_exact_listing(text)
    assert tab.A[1][0] == Fraction(1, 2)


@pytest.mark.parametrize(
    "text,message",
    [
        ("", "empty tableau file"),
        ("s=2 mode=numeric\n", "expected header"),
        ("s=2 mode=exact\n0\n1\n", "needs 5 \\(strictly lower A\\) or 8"),
        ("s=1 mode=exact\n0\n1\nfoo\n", "unrecognised factor 'foo'.*\\(line 4\\)"),
    ],
)
def test_exact_layout_errors(text, message):
    with pytest.raises(Rk10FormatError, match=message):
        parse_exact_listing(text)


def test_format_errors():
    with pytest.raises(Rk10UsageError, match="exact listings need an exact tableau"):
        format_tableau(classic_rk4(mode="numeric"), "exact")
    implicit = ButcherTableau.from_rows([[Fraction(1, 2)]], [1])
    with pytest.raises(Rk10UsageError, match="explicit tableaus only"):
        format_tableau(implicit, "decimal")
    with pytest.raises(Rk10UsageError, match="Unrecognised layout"):
        format_tableau(classic_rk4(), "latex")


def test_write_and_read(work_dir):
    exact_path = write_tableau(three_eighths(), work_dir / "rule.txt", layout="exact")
    tab = read_tableau(exact_path)
    assert tab.name == "rule"
    assert tab == three_eighths()
    numeric = read_tableau(exact_path, mode="numeric", digits=40)
    assert numeric.digits == 40
    decimal_path = write_tableau(three_eighths(), work_dir / "rule_decimal.txt")
    assert read_tableau(decimal_path).mode == "numeric"


def test_read_missing_file(work_dir):
    with pytest.raises(Rk10UsageError, match="Cannot read tableau file"):
        read_tableau(work_dir / "missing.txt")
