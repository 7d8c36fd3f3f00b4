from __future__ import annotations
import typing as ty
import logging
from math import factorial
import attrs
import mpmath
from rk10.core.exceptions import Rk10UsageError
from rk10.core.field import DEFAULT_DIGITS
from rk10.core.trees import RootedTree, trees_of_order, sort_key
from rk10.core.tableau import ButcherTableau, TreeEvaluator
from rk10.core.utils import parallel_map

logger = logging.getLogger("rk10")


@attrs.define(kw_only=True)
class ErrorCoefficientReport:
    """The error coefficient T_p, computed as the root of

        sum over |t| = p of (b Phi(t) - 1/t!)^2 / sigma(t)^2

    and, independently, of (1/p!)^2 sum alpha(t)^2 (t! b Phi(t) - 1)^2

    Parameters
    ----------
    p : int
        the tree order
    Tp : mpf
        the coefficient from the symmetry form
    Tp_labelled : mpf
        the coefficient from the labelling form
    contributions : dict
        (b Phi(t) - 1/t!)^2 / sigma(t)^2 per tree
    digits : int
        working precision
    """

    p: int
    Tp: mpmath.mpf
    Tp_labelled: mpmath.mpf
    contributions: ty.Dict[RootedTree, mpmath.mpf] = attrs.field(factory=dict)
    digits: int = DEFAULT_DIGITS

    @property
    def agree(self) -> bool:
        with mpmath.workdps(self.digits + 10):
            tolerance = mpmath.mpf(10) ** (-self.digits + 15)
            return bool(
                abs(self.Tp - self.Tp_labelled) <= tolerance * max(abs(self.Tp), 1)
            )

    def largest(self, count: int = 5) -> ty.List[ty.Tuple[RootedTree, mpmath.mpf]]:
        with mpmath.workdps(self.digits + 10):
            ranked = sorted(
                self.contributions.items(), key=lambda kv: (-kv[1], sort_key(kv[0]))
            )
        return ranked[:count]


def error_coefficients(
    tableau: ButcherTableau, p: int, digits: int = DEFAULT_DIGITS
) -> ErrorCoefficientReport:
    """T_p of a tableau, evaluated numerically at ``digits`` even for exact tableaus

    Raises
    ------
    Rk10UsageError
        if p < 1
    """
    if p < 1:
        raise Rk10UsageError(f"Error coefficients need p >= 1, got {p}")
    numeric = tableau.to_numeric(digits)
    evaluator = TreeEvaluator(numeric)
    contributions: ty.Dict[RootedTree, mpmath.mpf] = {}
    with numeric.arithmetic.context():
        symmetric_sum = mpmath.mpf(0)
        labelled_sum = mpmath.mpf(0)
        for tree in trees_of_order(p):
            weight = evaluator.weight(tree)
            contribution = (
                (weight - mpmath.mpf(1) / tree.density) / tree.symmetry
            ) ** 2
            contributions[tree] = contribution
            symmetric_sum += contribution
            labelled_sum += (tree.labelings * (tree.density * weight - 1)) ** 2
        Tp = mpmath.sqrt(symmetric_sum)
        Tp_labelled = mpmath.sqrt(labelled_sum) / factorial(p)
    report = ErrorCoefficientReport(
        p=p,
        Tp=Tp,
        Tp_labelled=Tp_labelled,
        contributions=contributions,
        digits=digits,
    )
    logger.info(
        "T_%d of %s = %s over %d trees",
        p,
        tableau.name or f"{tableau.s}-stage tableau",
        mpmath.nstr(Tp, 8),
        len(contributions),
    )
    if not report.agree:
        logger.warning(
            "The two forms of T_%d differ: %s and %s",
            p,
            mpmath.nstr(Tp, 20),
            mpmath.nstr(Tp_labelled, 20),
        )
    return report


def _error_coefficient_task(
    args: ty.Tuple[ButcherTableau, int, int]
) -> ErrorCoefficientReport:
    tableau, p, digits = args
    return error_coefficients(tableau, p, digits)


def error_coefficient_range(
    tableau: ButcherTableau,
    orders: ty.Sequence[int],
    digits: int = DEFAULT_DIGITS,
    jobs: int = 1,
) -> ty.Dict[int, ErrorCoefficientReport]:
    """T_p for several orders, each order in its own worker when jobs > 1"""
    reports = parallel_map(
        _error_coefficient_task, [(tableau, p, digits) for p in orders], jobs=jobs
    )
    return {r.p: r for r in reports}
