"""Hypothesis strategies for exact scalars, rooted trees and tableaus"""
from __future__ import annotations
import typing as ty
from fractions import Fraction
from hypothesis import assume, strategies as st
from rk10.core.field import FieldElement
from rk10.core.trees import RootedTree, trees_of_order
from rk10.core.tableau import ButcherTableau
from rk10.core.family import FamilyParams


def rationals(bound: int = 3, max_denominator: int = 12) -> st.SearchStrategy[Fraction]:
    return st.fractions(
        min_value=-bound, max_value=bound, max_denominator=max_denominator
    )


def nonzero_rationals(
    bound: int = 3, max_denominator: int = 12
) -> st.SearchStrategy[Fraction]:
    return rationals(bound, max_denominator).filter(bool)


def field_elements(
    bound: int = 3, max_denominator: int = 12
) -> st.SearchStrategy[FieldElement]:
    return st.lists(
        rationals(bound, max_denominator), min_size=8, max_size=8
    ).map(FieldElement.from_coordinates)


@st.composite
def rooted_trees(draw: ty.Any, max_order: int = 6) -> RootedTree:
    p = draw(st.integers(min_value=1, max_value=max_order))
    return draw(st.sampled_from(trees_of_order(p)))


@st.composite
def tree_pairs(draw: ty.Any, max_total: int = 7) -> ty.Tuple[RootedTree, RootedTree]:
    """Pairs (t, T) with |t| + |T| <= max_total"""
    t = draw(rooted_trees(max_order=max_total - 1))
    T = draw(rooted_trees(max_order=max_total - t.order))
    return t, T


@st.composite
def explicit_tableaus(
    draw: ty.Any,
    min_stages: int = 2,
    max_stages: int = 4,
    stages: ty.Optional[int] = None,
) -> ButcherTableau:
    """Exact explicit tableaus with small rational entries and c the row sums of A"""
    s = stages or draw(st.integers(min_value=min_stages, max_value=max_stages))
    A = [[Fraction(0)] * s for _ in range(s)]
    for i in range(1, s):
        for j in range(i):
            A[i][j] = draw(rationals(2, 6))
    b = draw(st.lists(rationals(2, 6), min_size=s, max_size=s))
    return ButcherTableau.from_rows(A, b, name="random")


@st.composite
def admissible_tableaus(
    draw: ty.Any, min_stages: int = 2, max_stages: int = 4
) -> ButcherTableau:
    """Explicit tableaus whose dual exists: nonzero weights and D(1)

    D(1) for an explicit method forces c_s = 1; the last weight is drawn and the
    others follow from b_j (1 - c_j) = sum over i > j of b_i a_ij."""
    s = draw(st.integers(min_value=min_stages, max_value=max_stages))
    A = [[Fraction(0)] * s for _ in range(s)]
    for i in range(1, s - 1):
        for j in range(i):
            A[i][j] = draw(rationals(2, 6))
    for j in range(s - 2):
        A[s - 1][j] = draw(rationals(2, 6))
    A[s - 1][s - 2] = 1 - sum(A[s - 1][: s - 2], Fraction(0))
    c = [sum(row, Fraction(0)) for row in A]
    b = [Fraction(0)] * s
    b[s - 1] = draw(nonzero_rationals(2, 6))
    for j in range(s - 2, -1, -1):
        assume(c[j] != 1)
        b[j] = sum((b[i] * A[i][j] for i in range(j + 1, s)), Fraction(0)) / (1 - c[j])
        assume(b[j] != 0)
    return ButcherTableau.from_rows(A, b, c, name="admissible")


def _interval(low: Fraction, high: Fraction) -> st.SearchStrategy[Fraction]:
    return st.fractions(min_value=low, max_value=high, max_denominator=40)


@st.composite
def family_params(draw: ty.Any) -> FamilyParams:
    """Rational parameter sets of the order-10 family away from the degenerate
    node coincidences"""
    c2 = draw(_interval(Fraction(1, 20), Fraction(3, 20)))
    c4 = draw(_interval(Fraction(3, 10), Fraction(1, 2)))
    c5 = draw(_interval(Fraction(11, 20), Fraction(7, 10)))
    weights = st.fractions(
        min_value=Fraction(1, 100), max_value=Fraction(1, 10), max_denominator=100
    )
    return FamilyParams(
        c2=c2,
        c4=c4,
        c5=c5,
        b10=draw(weights),
        b12=draw(weights),
        b13=draw(weights),
        b14=draw(weights),
    )
