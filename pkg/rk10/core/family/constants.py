"""The printed constants block (three groups of rows of nine integers each encoding an
element of Q(alpha, beta)) and the closed-form node c6 built from its last group"""
from __future__ import annotations
import typing as ty
import logging
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
import attrs
from rk10.core.field import FieldElement, BETA_ELEMENT, decode_nine_integers
from rk10.core.exceptions import Rk10ConstructionError, Rk10FormatError

logger = logging.getLogger("rk10")

DATA_DIR = Path(__file__).parent / "data"
CONSTANTS_BLOCK_FILE = DATA_DIR / "constants_block.txt"

# row counts of the closing-coefficient, closure-constant and c6 groups
GROUP_SIZES = (42, 15, 6)

GAMMA_NAMES = (
    "gamma20",
    "gamma21",
    "gammaA0",
    "gammaA1",
    "gamma30",
    "gamma31",
    "gamma32",
    "gammaC0",
    "gammaC1",
    "gammaC2",
    "gamma40",
    "gamma41",
    "gamma42",
    "gamma43",
    "gamma4c",
)

C6_NAMES = ("U", "U1", "U2", "V", "V1", "V2")

# 1-based row of the closing group holding A_14,13
PIVOT_ROW = 3


@attrs.frozen(kw_only=True)
class ConstantsRow:

    group: int
    index: int
    integers: ty.Tuple[int, ...]
    value: FieldElement


@lru_cache(maxsize=None)
def constants_block() -> ty.Tuple[ty.Tuple[ConstantsRow, ...], ...]:
    """The decoded rows of the constants block, one tuple per group"""
    groups: ty.List[ty.List[ConstantsRow]] = [[]]
    with open(CONSTANTS_BLOCK_FILE) as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                if groups[-1]:
                    groups.append([])
                continue
            try:
                integers = tuple(int(n) for n in line.split())
            except ValueError:
                raise Rk10FormatError(
                    f"non-integer entry in constants block: '{line.strip()}'", lineno
                )
            groups[-1].append(
                ConstantsRow(
                    group=len(groups),
                    index=len(groups[-1]) + 1,
                    integers=integers,
                    value=decode_nine_integers(integers),
                )
            )
    sizes = tuple(len(g) for g in groups)
    if sizes != GROUP_SIZES:
        raise Rk10FormatError(
            f"constants block has groups of {sizes} rows, expected {GROUP_SIZES}"
        )
    return tuple(tuple(g) for g in groups)


def closing_pivot() -> FieldElement:
    """The renormalised coefficient A_14,13 = b14 a_14,13 / b13 fixed by the closure
    of the column-11 relations"""
    return constants_block()[0][PIVOT_ROW - 1].value


@attrs.frozen(kw_only=True)
class ClosureConstants:
    """Coefficients of the polynomial relations between d2, d1 A, d3, d1 . c A, d4 and
    d1 on the closing columns:

    d2 = (gamma20 + gamma21 c) d1, d1 A = (gammaA0 + gammaA1 c) d1,
    d3 = (gamma30 + gamma31 c + gamma32 c^2) d1,
    (d1 . c) A = (gammaC0 + gammaC1 c + gammaC2 c^2) d1,
    d4 = (gamma40 + ... + gamma43 c^3) d1 + gamma4c (d1 . c^2) A
    """

    gamma20: ty.Any
    gamma21: ty.Any
    gammaA0: ty.Any
    gammaA1: ty.Any
    gamma30: ty.Any
    gamma31: ty.Any
    gamma32: ty.Any
    gammaC0: ty.Any
    gammaC1: ty.Any
    gammaC2: ty.Any
    gamma40: ty.Any
    gamma41: ty.Any
    gamma42: ty.Any
    gamma43: ty.Any
    gamma4c: ty.Any

    def values(self) -> ty.Tuple[ty.Any, ...]:
        return tuple(getattr(self, n) for n in GAMMA_NAMES)

    def as_dict(self) -> ty.Dict[str, ty.Any]:
        return {n: getattr(self, n) for n in GAMMA_NAMES}


def printed_closure_constants() -> ClosureConstants:
    return ClosureConstants(
        **{n: row.value for n, row in zip(GAMMA_NAMES, constants_block()[1])}
    )


@attrs.frozen(kw_only=True)
class C6Constants:
    """U, U', U'', V, V', V'' of the closed form for c6"""

    U: ty.Any
    U1: ty.Any
    U2: ty.Any
    V: ty.Any
    V1: ty.Any
    V2: ty.Any

    def values(self) -> ty.Tuple[ty.Any, ...]:
        return (self.U, self.U1, self.U2, self.V, self.V1, self.V2)


def printed_c6_constants() -> C6Constants:
    return C6Constants(
        **{n: row.value for n, row in zip(C6_NAMES, constants_block()[2])}
    )


def c6_of(c4: ty.Any, c5: ty.Any, k: ty.Optional[C6Constants] = None) -> ty.Any:
    """c6 = (U s + 14 U' p + U'' p s) /
    (3 U + 14 U' s + 2 U'' (c4^2 + c5^2) + 7 p (V + 20 V' s + 60 V'' p))
    with s = c4 + c5 and p = c4 c5. Symmetric in c4 and c5.

    Raises
    ------
    Rk10ConstructionError
        if the denominator vanishes
    """
    if k is None:
        k = printed_c6_constants()
    s = c4 + c5
    p = c4 * c5
    numerator = k.U * s + 14 * k.U1 * p + k.U2 * p * s
    denominator = (
        3 * k.U
        + 14 * k.U1 * s
        + 2 * k.U2 * (c4 * c4 + c5 * c5)
        + 7 * p * (k.V + 20 * k.V1 * s + 60 * k.V2 * p)
    )
    if not denominator:
        raise Rk10ConstructionError("c6", f"degenerate (c4,c5) = ({c4}, {c5}) for c6")
    return numerator / denominator


def symmetric_line_sum() -> FieldElement:
    """3 (1 + beta) / 4, the value of c4 + c5 on which the c6 formula simplifies"""
    return (1 + BETA_ELEMENT) * Fraction(3, 4)


def symmetric_line_constants(
    k: ty.Optional[C6Constants] = None,
) -> ty.Tuple[FieldElement, FieldElement]:
    """(U1, U2) with c6 = U1 / (U2 - (c5 - c4)^2) whenever c4 + c5 = 3 (1 + beta) / 4

    On that line numerator and denominator of the general formula are polynomials in
    p = c4 c5 of degrees 1 and 2, and the numerator divides the denominator exactly.
    """
    if k is None:
        k = printed_c6_constants()
    s = symmetric_line_sum()
    n0 = k.U * s
    n1 = 14 * k.U1 + k.U2 * s
    d0 = 3 * k.U + 14 * k.U1 * s + 2 * k.U2 * s * s
    d1 = -4 * k.U2 + 7 * k.V + 140 * k.V1 * s
    d2 = 420 * k.V2
    e1 = d2 / n1
    e0 = (d1 - e1 * n0) / n1
    remainder = d0 - e0 * n0
    if remainder:
        raise Rk10ConstructionError(
            "c6",
            "numerator of c6 does not divide its denominator on c4 + c5 = "
            "3(1 + beta)/4",
        )
    return 4 / e1, 4 * e0 / e1 + s * s
