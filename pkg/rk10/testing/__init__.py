from .strategies import (
    rationals,
    nonzero_rationals,
    field_elements,
    rooted_trees,
    tree_pairs,
    explicit_tableaus,
    admissible_tableaus,
    family_params,
)
