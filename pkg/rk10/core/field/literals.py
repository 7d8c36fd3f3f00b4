from __future__ import annotations
import re
import typing as ty
from fractions import Fraction
from rk10.core.exceptions import Rk10FormatError
from .basis import DIMENSION
from .element import FieldElement, ROOT3, ROOT7, ROOT21, ALPHA_ELEMENT, BETA_ELEMENT

BASIS_SYMBOLS: ty.Dict[str, FieldElement] = {
    "sqrt3": ROOT3,
    "sqrt7": ROOT7,
    "sqrt21": ROOT21,
    "alpha": ALPHA_ELEMENT,
    "beta": BETA_ELEMENT,
}

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_INTEGER_LIST_RE = re.compile(r"^\[?\s*[+-]?\d+(\s*[, ]\s*[+-]?\d+)*\s*\]?$")


def decode_nine_integers(numbers: ty.Sequence[int]) -> FieldElement:
    """Decodes the integer list n1 ... n9 into the element with coordinates n_i / n9"""
    if len(numbers) != DIMENSION + 1:
        raise Rk10FormatError(
            f"expected {DIMENSION + 1} integers, got {len(numbers)}: {list(numbers)}"
        )
    *numerators, denominator = (int(n) for n in numbers)
    if denominator == 0:
        raise Rk10FormatError(f"zero common denominator in {list(numbers)}")
    return FieldElement(numerators, denominator)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise Rk10FormatError(f"malformed rational '{text}'")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise Rk10FormatError(f"zero denominator in '{text}'")


def parse_xi_block(text: str) -> FieldElement:
    """Parses ``xi: n/d n/d n/d n/d n/d n/d n/d n/d``"""
    body = text.strip()
    if not body.startswith("xi:"):
        raise Rk10FormatError(f"expected 'xi:' block, got '{text.strip()}'")
    parts = body[3:].split()
    if len(parts) != DIMENSION:
        raise Rk10FormatError(
            f"'xi:' block needs {DIMENSION} coordinates, got {len(parts)}"
        )
    return FieldElement.from_coordinates([parse_rational(p) for p in parts])


def parse_field_literal(
    text: str, symbols: ty.Optional[ty.Mapping[str, FieldElement]] = None
) -> FieldElement:
    """Parses a field element written as a rational "p/q", a list of nine integers,
    an ``xi:`` block or a product of rationals and named constants such as
    ``2/7*w2`` (the names available are the basis square roots, alpha and beta plus
    any passed in ``symbols``)

    Parameters
    ----------
    text : str
        the literal
    symbols : mapping, optional
        additional named constants

    Returns
    -------
    FieldElement
        the parsed element
    """
    stripped = text.strip()
    if not stripped:
        raise Rk10FormatError("empty field literal")
    if stripped.startswith("xi:"):
        return parse_xi_block(stripped)
    if _RATIONAL_RE.match(stripped):
        return FieldElement.from_rational(parse_rational(stripped))
    if _INTEGER_LIST_RE.match(stripped):
        numbers = re.findall(r"[+-]?\d+", stripped)
        return decode_nine_integers([int(n) for n in numbers])
    names = dict(BASIS_SYMBOLS)
    if symbols:
        names.update(symbols)
    sign = 1
    if stripped[0] in "+-":
        sign = -1 if stripped[0] == "-" else 1
        stripped = stripped[1:]
    result = FieldElement.from_rational(sign)
    for factor in stripped.split("*"):
        factor = factor.strip()
        if factor in names:
            result = result * names[factor]
        elif _RATIONAL_RE.match(factor):
            result = result * parse_rational(factor)
        else:
            raise Rk10FormatError(
                f"unrecognised factor '{factor}' in field literal '{text.strip()}' "
                f"(known names: {', '.join(sorted(names))})"
            )
    return result
