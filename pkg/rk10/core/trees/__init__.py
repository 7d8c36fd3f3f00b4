from .base import (
    RootedTree,
    BULLET,
    enumerate_trees,
    trees_of_order,
    tree_statistics,
    order,
    density,
    symmetry,
    labelings,
    graft,
    merge,
    beta_product,
    bushy,
    tall,
    sort_key,
    format_tree,
    parse_tree,
)
from .combination import TreeCombination, q_map, d_map

__all__ = [
    "RootedTree",
    "BULLET",
    "enumerate_trees",
    "trees_of_order",
    "tree_statistics",
    "order",
    "density",
    "symmetry",
    "labelings",
    "graft",
    "merge",
    "beta_product",
    "bushy",
    "tall",
    "sort_key",
    "format_tree",
    "parse_tree",
    "TreeCombination",
    "q_map",
    "d_map",
]
