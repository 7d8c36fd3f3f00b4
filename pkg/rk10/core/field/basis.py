"""Basis and structure constants of the degree-8 field Q(alpha, beta)

alpha = sqrt((7 + 2 sqrt7) / 21) and beta = sqrt((7 - 2 sqrt7) / 21). Every element is
stored through its coordinates over the ordered basis

    1, sqrt3, sqrt7, sqrt21, alpha, beta, sqrt7 alpha, sqrt7 beta

The products below follow from alpha^2 = (7 + 2 sqrt7)/21, beta^2 = (7 - 2 sqrt7)/21,
alpha beta = sqrt21/21 and sqrt3 alpha = (2 + sqrt7) beta, the last one because
3 alpha^2 = (2 + sqrt7)^2 beta^2. They are checked numerically in the test-suite.
"""
from __future__ import annotations
import typing as ty
from fractions import Fraction
from functools import lru_cache
import mpmath

DIMENSION = 8

BASIS_LABELS = (
    "1",
    "sqrt3",
    "sqrt7",
    "sqrt21",
    "alpha",
    "beta",
    "sqrt7*alpha",
    "sqrt7*beta",
)

ONE, SQRT3, SQRT7, SQRT21, ALPHA, BETA, SQRT7_ALPHA, SQRT7_BETA = range(DIMENSION)

F = Fraction

# products e_i * e_j for 1 <= i <= j, as {k: coefficient of e_k}; e_0 = 1 is omitted
STRUCTURE_CONSTANTS: ty.Dict[ty.Tuple[int, int], ty.Dict[int, Fraction]] = {
    (SQRT3, SQRT3): {ONE: F(3)},
    (SQRT3, SQRT7): {SQRT21: F(1)},
    (SQRT3, SQRT21): {SQRT7: F(3)},
    (SQRT7, SQRT7): {ONE: F(7)},
    (SQRT7, SQRT21): {SQRT3: F(7)},
    (SQRT21, SQRT21): {ONE: F(21)},
    (SQRT3, ALPHA): {BETA: F(2), SQRT7_BETA: F(1)},
    (SQRT3, BETA): {ALPHA: F(-2), SQRT7_ALPHA: F(1)},
    (SQRT3, SQRT7_ALPHA): {BETA: F(7), SQRT7_BETA: F(2)},
    (SQRT3, SQRT7_BETA): {ALPHA: F(7), SQRT7_ALPHA: F(-2)},
    (SQRT7, ALPHA): {SQRT7_ALPHA: F(1)},
    (SQRT7, BETA): {SQRT7_BETA: F(1)},
    (SQRT7, SQRT7_ALPHA): {ALPHA: F(7)},
    (SQRT7, SQRT7_BETA): {BETA: F(7)},
    (SQRT21, ALPHA): {BETA: F(7), SQRT7_BETA: F(2)},
    (SQRT21, BETA): {ALPHA: F(7), SQRT7_ALPHA: F(-2)},
    (SQRT21, SQRT7_ALPHA): {BETA: F(14), SQRT7_BETA: F(7)},
    (SQRT21, SQRT7_BETA): {ALPHA: F(-14), SQRT7_ALPHA: F(7)},
    (ALPHA, ALPHA): {ONE: F(1, 3), SQRT7: F(2, 21)},
    (ALPHA, BETA): {SQRT21: F(1, 21)},
    (ALPHA, SQRT7_ALPHA): {ONE: F(2, 3), SQRT7: F(1, 3)},
    (ALPHA, SQRT7_BETA): {SQRT3: F(1, 3)},
    (BETA, BETA): {ONE: F(1, 3), SQRT7: F(-2, 21)},
    (BETA, SQRT7_ALPHA): {SQRT3: F(1, 3)},
    (BETA, SQRT7_BETA): {ONE: F(-2, 3), SQRT7: F(1, 3)},
    (SQRT7_ALPHA, SQRT7_ALPHA): {ONE: F(7, 3), SQRT7: F(2, 3)},
    (SQRT7_ALPHA, SQRT7_BETA): {SQRT21: F(1, 3)},
    (SQRT7_BETA, SQRT7_BETA): {ONE: F(7, 3), SQRT7: F(-2, 3)},
}

# common denominator of all structure constants
STRUCTURE_SCALE = 21


def product_expansion(i: int, j: int) -> ty.Dict[int, Fraction]:
    """Coordinates of the product of basis elements e_i and e_j"""
    if i == ONE:
        return {j: F(1)}
    if j == ONE:
        return {i: F(1)}
    return dict(STRUCTURE_CONSTANTS[(min(i, j), max(i, j))])


IntegerTerms = ty.Tuple[ty.Tuple[int, int], ...]


def _integer_product_table() -> ty.Tuple[ty.Tuple[IntegerTerms, ...], ...]:
    table = []
    for i in range(DIMENSION):
        row = []
        for j in range(DIMENSION):
            terms = []
            for k, coeff in sorted(product_expansion(i, j).items()):
                scaled = coeff * STRUCTURE_SCALE
                assert scaled.denominator == 1
                terms.append((k, int(scaled)))
            row.append(tuple(terms))
        table.append(tuple(row))
    return tuple(table)


# PRODUCT_TABLE[i][j] lists (k, 21 * coefficient of e_k in e_i * e_j)
PRODUCT_TABLE = _integer_product_table()


@lru_cache(maxsize=None)
def basis_values(dps: int) -> ty.Tuple[mpmath.mpf, ...]:
    """Numeric values of the basis elements evaluated with ``dps`` decimal digits"""
    with mpmath.workdps(dps):
        sqrt3 = mpmath.sqrt(3)
        sqrt7 = mpmath.sqrt(7)
        sqrt21 = mpmath.sqrt(21)
        alpha = mpmath.sqrt((7 + 2 * sqrt7) / 21)
        beta = mpmath.sqrt((7 - 2 * sqrt7) / 21)
        return (
            mpmath.mpf(1),
            sqrt3,
            sqrt7,
            sqrt21,
            alpha,
            beta,
            sqrt7 * alpha,
            sqrt7 * beta,
        )
