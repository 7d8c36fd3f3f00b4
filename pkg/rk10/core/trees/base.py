from __future__ import annotations
import typing as ty
import logging
from collections import Counter
from functools import lru_cache
from math import factorial
import attrs
from rk10.core.exceptions import Rk10FormatError

logger = logging.getLogger("rk10")

SortKey = ty.Tuple[int, ty.Tuple[ty.Any, ...]]


def _canonical_children(children: ty.Iterable[RootedTree]) -> ty.Tuple[RootedTree, ...]:
    return tuple(sorted(children, key=sort_key))


@attrs.frozen(cache_hash=True)
class RootedTree:
    """An unordered rooted tree in canonical form: the children of every vertex are
    kept sorted, so that two trees are equal exactly when their canonical forms are
    identical. The single vertex has no children."""

    children: ty.Tuple[RootedTree, ...] = attrs.field(
        default=(), converter=_canonical_children
    )

    @property
    def order(self) -> int:
        return order(self)

    @property
    def density(self) -> int:
        return density(self)

    @property
    def symmetry(self) -> int:
        return symmetry(self)

    @property
    def labelings(self) -> int:
        return labelings(self)

    def __lt__(self, other: RootedTree) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return sort_key(self) < sort_key(other)

    def __le__(self, other: RootedTree) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return sort_key(self) <= sort_key(other)

    def __str__(self) -> str:
        if not self.children:
            return "•"
        return "[" + "".join(str(c) for c in self.children) + "]"

    def __repr__(self) -> str:
        return f"RootedTree('{format_tree(self)}')"


@lru_cache(maxsize=None)
def sort_key(t: RootedTree) -> SortKey:
    """Canonical total order: by order first, then lexicographically on the sorted
    child keys"""
    return (order(t), tuple(sort_key(c) for c in t.children))


@lru_cache(maxsize=None)
def order(t: RootedTree) -> int:
    return 1 + sum(order(c) for c in t.children)


@lru_cache(maxsize=None)
def density(t: RootedTree) -> int:
    """The tree factorial t! = |t| times the product of the children's factorials"""
    result = order(t)
    for child in t.children:
        result *= density(child)
    return result


@lru_cache(maxsize=None)
def symmetry(t: RootedTree) -> int:
    """Order of the symmetry group: each distinct child shape occurring m times
    contributes m! sigma(child)^m"""
    result = 1
    for child, multiplicity in Counter(t.children).items():
        result *= factorial(multiplicity) * symmetry(child) ** multiplicity
    return result


@lru_cache(maxsize=None)
def labelings(t: RootedTree) -> int:
    """Number of monotonic labelings, |t|! / (t! sigma(t))"""
    numerator = factorial(order(t))
    denominator = density(t) * symmetry(t)
    assert numerator % denominator == 0, f"non-integral labeling count for {t}"
    return numerator // denominator


BULLET = RootedTree()


def graft(children: ty.Iterable[RootedTree] = ()) -> RootedTree:
    """[t1 t2 ... tn]: the roots of the given trees joined to a new root"""
    return RootedTree(tuple(children))


def merge(trees: ty.Sequence[RootedTree]) -> RootedTree:
    """The root-merge product t1 . t2 . ... . tn"""
    if not trees:
        raise ValueError("merge needs at least one tree")
    return RootedTree(tuple(c for t in trees for c in t.children))


def beta_product(t1: RootedTree, t2: RootedTree) -> RootedTree:
    """t1 * t2 = t1 . [t2]"""
    return merge([t1, graft([t2])])


@lru_cache(maxsize=None)
def bushy(n: int) -> RootedTree:
    """[•^n], the root with n leaves (order n + 1)"""
    return graft([BULLET] * n)


@lru_cache(maxsize=None)
def tall(n: int) -> RootedTree:
    """The chain of n vertices"""
    if n < 1:
        raise ValueError(f"a tree has at least one vertex, got {n}")
    tree = BULLET
    for _ in range(n - 1):
        tree = graft([tree])
    return tree


def format_tree(t: RootedTree) -> str:
    """Nested-bracket text, "[]" being the single vertex"""
    return "[" + "".join(format_tree(c) for c in t.children) + "]"


def parse_tree(text: str) -> RootedTree:
    """Inverse of ``format_tree``; whitespace is ignored and "•" may stand for "[]" """
    compact = "".join(text.split()).replace("•", "[]")
    if not compact:
        raise Rk10FormatError("empty tree text")
    tree, end = _parse_at(compact, 0, text)
    if end != len(compact):
        raise Rk10FormatError(
            f"trailing characters after position {end} in tree '{text}'"
        )
    return tree


def _parse_at(text: str, pos: int, original: str) -> ty.Tuple[RootedTree, int]:
    if pos >= len(text) or text[pos] != "[":
        raise Rk10FormatError(f"expected '[' at position {pos} in tree '{original}'")
    pos += 1
    children = []
    while pos < len(text) and text[pos] == "[":
        child, pos = _parse_at(text, pos, original)
        children.append(child)
    if pos >= len(text) or text[pos] != "]":
        raise Rk10FormatError(f"unbalanced brackets in tree '{original}'")
    return graft(children), pos + 1


def _forests(
    total: int, start: int, pool: ty.Sequence[RootedTree]
) -> ty.Iterator[ty.Tuple[RootedTree, ...]]:
    """Multisets of trees from ``pool`` (sorted by order) with orders summing to
    ``total``, each generated once as a non-decreasing index sequence"""
    if total == 0:
        yield ()
        return
    for index in range(start, len(pool)):
        tree = pool[index]
        size = order(tree)
        if size > total:
            break
        for rest in _forests(total - size, index, pool):
            yield (tree,) + rest


@lru_cache(maxsize=None)
def trees_of_order(p: int) -> ty.Tuple[RootedTree, ...]:
    """All trees with exactly p vertices in canonical order"""
    if p < 1:
        raise ValueError(f"tree order must be positive, got {p}")
    if p == 1:
        return (BULLET,)
    pool = [t for q in range(1, p) for t in trees_of_order(q)]
    return tuple(sorted((graft(f) for f in _forests(p - 1, 0, pool)), key=sort_key))


def enumerate_trees(max_order: int) -> ty.List[RootedTree]:
    """Every rooted tree with at most ``max_order`` vertices, each exactly once, sorted
    by order and then canonical order

    Parameters
    ----------
    max_order : int
        the largest tree order to include, at least 1

    Returns
    -------
    list[RootedTree]
        the trees
    """
    if max_order < 1:
        raise ValueError(f"max_order must be at least 1, got {max_order}")
    trees = [t for p in range(1, max_order + 1) for t in trees_of_order(p)]
    logger.debug("Enumerated %d trees up to order %d", len(trees), max_order)
    return trees


def tree_statistics(max_order: int) -> ty.List[ty.Dict[str, int]]:
    """Per-order tree counts and sums of alpha(t); the sums equal (p - 1)!"""
    return [
        {
            "order": p,
            "count": len(trees_of_order(p)),
            "labelings": sum(labelings(t) for t in trees_of_order(p)),
        }
        for p in range(1, max_order + 1)
    ]
