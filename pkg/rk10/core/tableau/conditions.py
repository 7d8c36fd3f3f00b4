from __future__ import annotations
import typing as ty
import logging
import attrs
from rk10.core.trees import RootedTree, bushy
from rk10.core.exceptions import Rk10UsageError
from .base import ButcherTableau, Vector, vector_dot
from .weights import TreeEvaluator, evaluator_for, q_vector_of, d_vector_of

logger = logging.getLogger("rk10")


@attrs.frozen(kw_only=True)
class ConditionVector:
    """A stage-wise condition vector: Q(t), a column vector indexed by stages, or
    D(t), a row vector indexed by stages"""

    kind: str = attrs.field(validator=attrs.validators.in_(["Q", "D"]))
    tree: RootedTree
    values: Vector
    vanishes: bool

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> ty.Iterator[ty.Any]:
        return iter(self.values)

    def __getitem__(self, index: int) -> ty.Any:
        return self.values[index]

    def nonzero_stages(self, tableau: ButcherTableau) -> ty.List[int]:
        """1-based indices of the stages where the condition is violated"""
        return [
            i + 1
            for i, x in enumerate(self.values)
            if not tableau.arithmetic.is_zero(x)
        ]


def _vanishes(tableau: ButcherTableau, values: Vector) -> bool:
    return all(tableau.arithmetic.is_zero(x) for x in values)


def q_vector(
    tableau: ButcherTableau,
    t: RootedTree,
    evaluator: ty.Optional[TreeEvaluator] = None,
) -> ConditionVector:
    values = q_vector_of(evaluator or evaluator_for(tableau), t)
    return ConditionVector(
        kind="Q", tree=t, values=values, vanishes=_vanishes(tableau, values)
    )


def d_vector(
    tableau: ButcherTableau,
    t: RootedTree,
    evaluator: ty.Optional[TreeEvaluator] = None,
) -> ConditionVector:
    values = d_vector_of(evaluator or evaluator_for(tableau), t)
    return ConditionVector(
        kind="D", tree=t, values=values, vanishes=_vanishes(tableau, values)
    )


def q_n(tableau: ButcherTableau, n: int) -> ConditionVector:
    """q_n = A c^n - c^(n+1)/(n+1)"""
    return q_vector(tableau, bushy(n))


def d_n(tableau: ButcherTableau, n: int) -> ConditionVector:
    """d_n = (b . c^n) A - b . (1 - c^(n+1))/(n+1)"""
    return d_vector(tableau, bushy(n))


@attrs.define(kw_only=True)
class SimplifyingAssumptions:
    """Largest B(k), C(k) and D(k) satisfied, each capped at ``cap``"""

    B: int
    C: int
    D: int
    cap: int

    def as_dict(self) -> ty.Dict[str, int]:
        return {"B": self.B, "C": self.C, "D": self.D}

    def __str__(self) -> str:
        return f"B({self.B}) C({self.C}) D({self.D})"


def check_bcd(
    tableau: ButcherTableau, cap: ty.Optional[int] = None
) -> SimplifyingAssumptions:
    """Determines the simplifying assumptions B(k): b c^n = 1/(n+1) for n < k,
    C(k): q_n = 0 for n < k and D(k): d_n = 0 for n < k

    Parameters
    ----------
    tableau : ButcherTableau
        the method
    cap : int, optional
        the largest k tested, max(2s, 10) by default

    Returns
    -------
    SimplifyingAssumptions
        the three largest k. A property holding for every k tested is reported as
        ``cap``: forward Euler, with A = 0 and c = 0, has every q_n = 0 and so
        reports C(cap)
    """
    if cap is None:
        cap = max(2 * tableau.s, 10)
    if cap < 0:
        raise Rk10UsageError(f"Cap on simplifying assumptions must be >= 0, got {cap}")
    evaluator = evaluator_for(tableau)
    arith = tableau.arithmetic

    def b_holds(n: int) -> bool:
        with arith.context():
            residual = vector_dot(
                tableau.b, evaluator.c_power(n), tableau.zero()
            ) - arith.coerce(1) / (n + 1)
        return arith.is_zero(residual)

    def largest(holds: ty.Callable[[int], bool]) -> int:
        k = 0
        while k < cap and holds(k):
            k += 1
        return k

    result = SimplifyingAssumptions(
        B=largest(b_holds),
        C=largest(lambda n: q_vector(tableau, bushy(n), evaluator).vanishes),
        D=largest(lambda n: d_vector(tableau, bushy(n), evaluator).vanishes),
        cap=cap,
    )
    logger.info("Simplifying assumptions of %s: %s", tableau.name or "tableau", result)
    return result
