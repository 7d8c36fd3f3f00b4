from ._version import __version__

PACKAGE_NAME = "rk10"
CODE_URL = f"https://github.com/{PACKAGE_NAME}/{PACKAGE_NAME}"


__authors__ = [("rk10 developers", None)]

from .field import FieldElement  # noqa
from .trees import RootedTree, TreeCombination, enumerate_trees  # noqa
from .tableau import ButcherTableau, verify_order  # noqa

__all__ = [
    "__version__",
    "__authors__",
    "FieldElement",
    "RootedTree",
    "TreeCombination",
    "enumerate_trees",
    "ButcherTableau",
    "verify_order",
]
