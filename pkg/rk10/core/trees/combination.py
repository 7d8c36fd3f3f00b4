from __future__ import annotations
import typing as ty
from fractions import Fraction
import attrs
from .base import (
    RootedTree,
    beta_product,
    bushy,
    density,
    graft,
    merge,
    order,
    sort_key,
)

Coefficient = ty.Union[int, Fraction]


def _drop_zeros(
    terms: ty.Mapping[RootedTree, Coefficient]
) -> ty.Dict[RootedTree, Fraction]:
    return {t: Fraction(a) for t, a in terms.items() if a != 0}


def _term_set(
    terms: ty.Mapping[RootedTree, Fraction]
) -> ty.FrozenSet[ty.Tuple[RootedTree, Fraction]]:
    return frozenset(terms.items())


@attrs.frozen
class TreeCombination:
    """A finite linear combination of rooted trees with rational coefficients. Terms
    with a zero coefficient are never stored."""

    terms: ty.Dict[RootedTree, Fraction] = attrs.field(
        factory=dict, converter=_drop_zeros, eq=_term_set
    )

    @classmethod
    def of(cls, tree: RootedTree, coefficient: Coefficient = 1) -> TreeCombination:
        return cls({tree: coefficient})

    @classmethod
    def zero(cls) -> TreeCombination:
        return cls()

    def coefficient(self, tree: RootedTree) -> Fraction:
        return self.terms.get(tree, Fraction(0))

    def __iter__(self) -> ty.Iterator[ty.Tuple[RootedTree, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda item: sort_key(item[0])))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: TreeCombination) -> TreeCombination:
        if not isinstance(other, TreeCombination):
            return NotImplemented
        terms = dict(self.terms)
        for tree, a in other.terms.items():
            terms[tree] = terms.get(tree, 0) + a
        return TreeCombination(terms)

    def __neg__(self) -> TreeCombination:
        return TreeCombination({t: -a for t, a in self.terms.items()})

    def __sub__(self, other: TreeCombination) -> TreeCombination:
        if not isinstance(other, TreeCombination):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Coefficient) -> TreeCombination:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return TreeCombination({t: a * scalar for t, a in self.terms.items()})

    __rmul__ = __mul__

    def map_linear(
        self, func: ty.Callable[[RootedTree], TreeCombination]
    ) -> TreeCombination:
        """Extends a map defined on trees to this combination by linearity"""
        result = TreeCombination()
        for tree, a in self:
            result = result + func(tree) * a
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{a}*{t}" for t, a in self).replace("+ -", "- ")


def _as_combination(value: ty.Union[RootedTree, TreeCombination]) -> TreeCombination:
    if isinstance(value, RootedTree):
        return TreeCombination.of(value)
    return value


def q_map(t: RootedTree) -> TreeCombination:
    """Q(t) = [t] - (1/t!) [•^|t|]"""
    return TreeCombination.of(graft([t])) - TreeCombination.of(
        bushy(order(t)), Fraction(1, density(t))
    )


def d_map(
    t: RootedTree, combination: ty.Union[RootedTree, TreeCombination]
) -> TreeCombination:
    """D(t, t') = t * t' + (1/t!) [•^|t|] . t' - (1/t!) t', extended linearly in t'"""
    inv_density = Fraction(1, density(t))
    bush = bushy(order(t))

    def on_tree(other: RootedTree) -> TreeCombination:
        return (
            TreeCombination.of(beta_product(t, other))
            + TreeCombination.of(merge([bush, other]), inv_density)
            - TreeCombination.of(other, inv_density)
        )

    return _as_combination(combination).map_linear(on_tree)
