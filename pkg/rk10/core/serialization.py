"""Reading and writing tableau files

Two layouts are understood. The decimal listing holds one signed fixed-point number
per line: the s nodes, the s weights and then the strictly lower part of A row by row,
s + s + s(s-1)/2 numbers in all. The exact layout starts with the header
``s=<int> mode=exact`` followed by one field element per line in the same order,
written as ``xi: n/d n/d n/d n/d n/d n/d n/d n/d`` (rationals and nine-integer lists
are accepted on input); it may hold the full matrix A instead of its strictly lower
part. Blank lines and lines starting with '#' are skipped."""
from __future__ import annotations
import re
import typing as ty
import logging
from fractions import Fraction
from pathlib import Path
import attrs
import mpmath
from rk10.core.exceptions import Rk10FormatError, Rk10UsageError
from rk10.core.field import (
    FieldElement,
    DEFAULT_DIGITS,
    GUARD_DIGITS,
    parse_field_literal,
)
from rk10.core.tableau import ButcherTableau
from rk10.core.utils import format_decimal

logger = logging.getLogger("rk10")

LISTING_DIGITS = 90

_HEADER_RE = re.compile(r"^s\s*=\s*(\d+)\s+mode\s*=\s*(\w+)$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")

GOLDEN_LISTING = Path(__file__).parent / "family" / "data" / "reference_decimal.txt"
GOLDEN_CONSTANTS = Path(__file__).parent / "family" / "data" / "constants_block.txt"


def _content_lines(text: str) -> ty.List[ty.Tuple[int, str]]:
    return [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]


def explicit_stage_count(count: int) -> ty.Optional[int]:
    """s with 2s + s(s-1)/2 = count, if there is one"""
    s = 1
    while 2 * s + s * (s - 1) // 2 <= count:
        if 2 * s + s * (s - 1) // 2 == count:
            return s
        s += 1
    return None


def _assemble(
    s: int, values: ty.Sequence[ty.Any], zero: ty.Any, full: bool
) -> ty.Tuple[ty.List[ty.List[ty.Any]], ty.List[ty.Any], ty.List[ty.Any]]:
    c = list(values[:s])
    b = list(values[s : 2 * s])
    rest = list(values[2 * s :])
    if full:
        A = [rest[i * s : (i + 1) * s] for i in range(s)]
    else:
        A = [[zero] * s for _ in range(s)]
        k = 0
        for i in range(1, s):
            for j in range(i):
                A[i][j] = rest[k]
                k += 1
    return A, b, c


def _significant_digits(lines: ty.Sequence[ty.Tuple[int, str]]) -> int:
    return max((len(re.sub(r"[^0-9]", "", text)) for _, text in lines), default=0)


def parse_decimal_listing(
    text: str,
    mode: str = "numeric",
    digits: ty.Optional[int] = None,
    name: str = "",
) -> ButcherTableau:
    """Builds a tableau from the text of a decimal listing

    In numeric mode the numbers are read at ``digits`` digits, by default enough to
    hold every printed digit. In exact mode each number becomes the rational it
    denotes.

    Raises
    ------
    Rk10FormatError
        for a malformed number or a count that is not 2s + s(s-1)/2
    """
    lines = _content_lines(text)
    for number, token in lines:
        if not _DECIMAL_RE.match(token):
            raise Rk10FormatError(f"malformed number '{token}'", line=number)
    s = explicit_stage_count(len(lines))
    if s is None:
        raise Rk10FormatError(
            f"cannot infer stage count from {len(lines)} numbers",
            line=lines[-1][0] if lines else 0,
        )
    if mode == "exact":
        logger.warning(
            "Reading a decimal listing exactly keeps the printed rationals, not the "
            "field elements they approximate"
        )
        values: ty.List[ty.Any] = [Fraction(token) for _, token in lines]
        A, b, c = _assemble(s, values, Fraction(0), full=False)
        return ButcherTableau.from_rows(A, b, c, mode="exact", name=name)
    if mode != "numeric":
        raise Rk10UsageError(f"Unrecognised mode '{mode}'")
    if digits is None:
        digits = max(DEFAULT_DIGITS, _significant_digits(lines) + 10)
    with mpmath.workdps(digits + GUARD_DIGITS):
        values = [mpmath.mpf(token) for _, token in lines]
    A, b, c = _assemble(s, values, mpmath.mpf(0), full=False)
    return ButcherTableau.from_rows(A, b, c, mode="numeric", digits=digits, name=name)


def parse_exact_listing(
    text: str, mode: str = "exact", digits: int = DEFAULT_DIGITS, name: str = ""
) -> ButcherTableau:
    lines = _content_lines(text)
    if not lines:
        raise Rk10FormatError("empty tableau file", line=0)
    header_line, header = lines[0]
    match = _HEADER_RE.match(header)
    if not match or match.group(2) != "exact":
        raise Rk10FormatError(
            f"expected header 's=<int> mode=exact', got '{header}'", line=header_line
        )
    s = int(match.group(1))
    if s < 1:
        raise Rk10FormatError("stage count must be positive", line=header_line)
    entries = lines[1:]
    explicit_count = 2 * s + s * (s - 1) // 2
    full_count = 2 * s + s * s
    if len(entries) not in (explicit_count, full_count):
        raise Rk10FormatError(
            f"s={s} needs {explicit_count} (strictly lower A) or {full_count} "
            f"(full A) entries, got {len(entries)}",
            line=entries[-1][0] if entries else header_line,
        )
    values: ty.List[FieldElement] = []
    for number, token in entries:
        try:
            values.append(parse_field_literal(token))
        except Rk10FormatError as e:
            raise Rk10FormatError(e.msg, line=number) from e
    A, b, c = _assemble(
        s, values, FieldElement.from_rational(0), full=len(entries) == full_count
    )
    tableau = ButcherTableau.from_rows(A, b, c, mode="exact", name=name)
    if mode == "numeric":
        return tableau.to_numeric(digits)
    if mode != "exact":
        raise Rk10UsageError(f"Unrecognised mode '{mode}'")
    return tableau


def read_tableau(
    path: ty.Union[str, Path],
    mode: ty.Optional[str] = None,
    digits: ty.Optional[int] = None,
) -> ButcherTableau:
    """Reads a tableau file in either layout

    Parameters
    ----------
    path : str or Path
        the file
    mode : str, optional
        "exact" or "numeric"; by default the mode of the file's layout
    digits : int, optional
        numeric working precision

    Returns
    -------
    ButcherTableau
        named after the file stem
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise Rk10UsageError(f"Cannot read tableau file {path}: {e}") from e
    lines = _content_lines(text)
    name = path.stem
    if lines and lines[0][1].startswith("s"):
        return parse_exact_listing(
            text, mode=mode or "exact", digits=digits or DEFAULT_DIGITS, name=name
        )
    return parse_decimal_listing(text, mode=mode or "numeric", digits=digits, name=name)


def _stored_entries(tableau: ButcherTableau, full: bool) -> ty.List[ty.Any]:
    entries = list(tableau.c) + list(tableau.b)
    for i, row in enumerate(tableau.A):
        entries.extend(row if full else row[:i])
    return entries


def format_tableau(
    tableau: ButcherTableau, layout: str = "decimal", digits: int = LISTING_DIGITS
) -> str:
    """The file text of a tableau in the "decimal" or "exact" layout

    Raises
    ------
    Rk10UsageError
        for a decimal listing of an implicit tableau or an exact listing of a
        numeric one
    """
    if layout == "decimal":
        if not tableau.is_explicit:
            raise Rk10UsageError("decimal listings hold explicit tableaus only")
        precision = digits + GUARD_DIGITS
        lines = [
            format_decimal(tableau.arithmetic.to_mpf(x, precision), digits)
            for x in _stored_entries(tableau, full=False)
        ]
    elif layout == "exact":
        if not tableau.exact:
            raise Rk10UsageError("exact listings need an exact tableau")
        lines = [f"s={tableau.s} mode=exact"] + [
            FieldElement.coerce(x).format_xi()
            for x in _stored_entries(tableau, full=not tableau.is_explicit)
        ]
    else:
        raise Rk10UsageError(f"Unrecognised layout '{layout}'")
    return "\n".join(lines) + "\n"


def write_tableau(
    tableau: ButcherTableau,
    path: ty.Union[str, Path],
    layout: str = "decimal",
    digits: int = LISTING_DIGITS,
) -> Path:
    path = Path(path)
    path.write_text(format_tableau(tableau, layout=layout, digits=digits))
    logger.info("Wrote %s listing of %s to %s", layout, tableau.name or "tableau", path)
    return path


@attrs.frozen(kw_only=True)
class GoldenData:
    """The printed data of the reference member: its decimal listing and the rows of
    nine integers of the constants block"""

    decimal_listing: ty.Tuple[str, ...]
    constants_rows: ty.Tuple[ty.Tuple[ty.Tuple[int, ...], ...], ...]

    def tableau(self, digits: ty.Optional[int] = None) -> ButcherTableau:
        return parse_decimal_listing(
            "\n".join(self.decimal_listing), digits=digits, name="golden"
        )


def embedded_golden() -> GoldenData:
    listing = tuple(
        line.strip() for line in GOLDEN_LISTING.read_text().splitlines() if line.strip()
    )
    groups: ty.List[ty.List[ty.Tuple[int, ...]]] = [[]]
    for line in GOLDEN_CONSTANTS.read_text().splitlines():
        if not line.strip():
            groups.append([])
            continue
        groups[-1].append(tuple(int(n) for n in line.split()))
    return GoldenData(
        decimal_listing=listing,
        constants_rows=tuple(tuple(g) for g in groups if g),
    )
