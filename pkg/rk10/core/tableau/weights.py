"""Elementary weights and the order conditions of a tableau, checked directly or in
their Q- and D-forms"""
from __future__ import annotations
import typing as ty
import logging
from fractions import Fraction
from functools import lru_cache
import attrs
import mpmath
from rk10.core.trees import (
    RootedTree,
    TreeCombination,
    BULLET,
    trees_of_order,
    enumerate_trees,
    sort_key,
    bushy,
    beta_product,
)
from rk10.core.exceptions import Rk10UsageError
from .base import ButcherTableau, Vector, vector_dot, elementwise, power

logger = logging.getLogger("rk10")

# smallest stage counts attaining each order, known only up to order 8
MINIMAL_STAGES = {1: 1, 2: 2, 3: 3, 4: 4, 5: 6, 6: 7, 7: 9, 8: 11}


class TreeEvaluator:
    """Memoised evaluation of Phi(t), A Phi(t) and b Phi(t) over one tableau.

    All arithmetic runs inside the tableau's precision context, so numeric tableaus
    are evaluated at their own working precision whatever the global mpmath setting.
    """

    def __init__(self, tableau: ButcherTableau):
        self.tableau = tableau
        self._rows = tableau.nonzero_rows()
        self._phi: ty.Dict[RootedTree, Vector] = {}
        self._a_phi: ty.Dict[RootedTree, Vector] = {}
        self._weights: ty.Dict[RootedTree, ty.Any] = {}
        self._c_powers: ty.Dict[int, Vector] = {}

    @property
    def arithmetic(self):
        return self.tableau.arithmetic

    def matvec(self, v: ty.Sequence[ty.Any]) -> Vector:
        zero = self.tableau.zero()
        with self.arithmetic.context():
            return tuple(
                sum((a * v[j] for j, a in row), zero) for row in self._rows
            )

    def vecmat(self, v: ty.Sequence[ty.Any]) -> Vector:
        """The row vector v A"""
        s = self.tableau.s
        result = [self.tableau.zero() for _ in range(s)]
        with self.arithmetic.context():
            for i, row in enumerate(self._rows):
                if not v[i]:
                    continue
                for j, a in row:
                    result[j] = result[j] + v[i] * a
        return tuple(result)

    def c_power(self, n: int) -> Vector:
        if n not in self._c_powers:
            with self.arithmetic.context():
                self._c_powers[n] = power(self.tableau.c, n, self.tableau.one())
        return self._c_powers[n]

    def phi(self, t: RootedTree) -> Vector:
        """Phi(t) = product over the children u of t of A Phi(u), Phi(•) = 1"""
        try:
            return self._phi[t]
        except KeyError:
            pass
        if t == BULLET:
            result = self.tableau.ones()
        else:
            bullets = sum(1 for u in t.children if u == BULLET)
            result = self.c_power(bullets)
            with self.arithmetic.context():
                for u in t.children:
                    if u != BULLET:
                        result = elementwise(result, self.a_phi(u))
        self._phi[t] = result
        return result

    def a_phi(self, t: RootedTree) -> Vector:
        try:
            return self._a_phi[t]
        except KeyError:
            pass
        result = self.c_power(1) if t == BULLET else self.matvec(self.phi(t))
        self._a_phi[t] = result
        return result

    def weight(self, t: RootedTree) -> ty.Any:
        """The elementary weight b Phi(t)"""
        try:
            return self._weights[t]
        except KeyError:
            pass
        with self.arithmetic.context():
            result = vector_dot(self.tableau.b, self.phi(t), self.tableau.zero())
        self._weights[t] = result
        return result

    def residual(self, t: RootedTree) -> ty.Any:
        """b Phi(t) - 1/t!"""
        with self.arithmetic.context():
            return self.weight(t) - self.arithmetic.coerce(Fraction(1, t.density))

    def phi_combination(self, combination: TreeCombination) -> Vector:
        """Phi extended linearly to a combination of trees"""
        result = [self.tableau.zero() for _ in range(self.tableau.s)]
        with self.arithmetic.context():
            for tree, coeff in combination:
                scalar = self.arithmetic.coerce(coeff)
                result = [r + scalar * x for r, x in zip(result, self.phi(tree))]
        return tuple(result)

    def weight_combination(self, combination: TreeCombination) -> ty.Any:
        with self.arithmetic.context():
            return vector_dot(
                self.tableau.b, self.phi_combination(combination), self.tableau.zero()
            )


@lru_cache(maxsize=8)
def evaluator_for(tableau: ButcherTableau) -> TreeEvaluator:
    return TreeEvaluator(tableau)


def phi(tableau: ButcherTableau, t: RootedTree) -> Vector:
    return evaluator_for(tableau).phi(t)


def elementary_weight(tableau: ButcherTableau, t: RootedTree) -> ty.Any:
    return evaluator_for(tableau).weight(t)


@attrs.define(kw_only=True)
class VerificationReport:
    """Outcome of checking the order conditions up to ``order_checked``

    ``residuals`` maps every tree checked to its residual, which for the Q- and D-forms
    is the residual of the condition the tree labels. ``achieved_order`` is the largest
    p' <= order_checked with every condition of order <= p' vanishing.
    """

    order_checked: int
    mode: str
    form: str = "direct"
    residuals: ty.Dict[RootedTree, ty.Any] = attrs.field(factory=dict)
    failing: ty.List[RootedTree] = attrs.field(factory=list)
    achieved_order: int = 0
    max_abs_residual: mpmath.mpf = attrs.field(factory=lambda: mpmath.mpf(0))

    @property
    def passed(self) -> bool:
        return self.achieved_order >= self.order_checked

    def sorted_residuals(
        self, digits: int = 20
    ) -> ty.List[ty.Tuple[RootedTree, mpmath.mpf]]:
        """Residuals as reals, largest magnitude first, ties in canonical tree order"""
        items = [(t, _as_mpf(r, digits)) for t, r in self.residuals.items()]
        return sorted(items, key=lambda item: (-abs(item[1]), sort_key(item[0])))

    def residuals_of_order(self, p: int) -> ty.List[ty.Tuple[RootedTree, ty.Any]]:
        return [(t, r) for t, r in self.residuals.items() if t.order == p]


def _as_mpf(value: ty.Any, digits: int) -> mpmath.mpf:
    if hasattr(value, "to_mpf"):
        return value.to_mpf(digits)
    return mpmath.mpf(value)


def _summarise(
    report: VerificationReport, tableau: ButcherTableau
) -> VerificationReport:
    arith = tableau.arithmetic
    failed_orders = []
    worst = mpmath.mpf(0)
    for tree, residual in report.residuals.items():
        if not arith.is_zero(residual):
            report.failing.append(tree)
            failed_orders.append(tree.order)
        worst = max(worst, abs(_as_mpf(residual, 20)))
    report.failing.sort(key=sort_key)
    report.max_abs_residual = worst
    report.achieved_order = (
        min(failed_orders) - 1 if failed_orders else report.order_checked
    )
    logger.info(
        "%s check of %s to order %d: achieved order %d, max |residual| %s",
        report.form,
        tableau.name or f"{tableau.s}-stage tableau",
        report.order_checked,
        report.achieved_order,
        mpmath.nstr(worst, 5),
    )
    if report.achieved_order >= 1:
        bound, known = minimal_stages(report.achieved_order)
        logger.info(
            "Order %d needs %s %d stages, the tableau has %d",
            report.achieved_order,
            "exactly" if known else "at least",
            bound,
            tableau.s,
        )
    return report


def _check_order_argument(p: int) -> None:
    if p < 1:
        raise Rk10UsageError(f"Order to verify must be at least 1, got {p}")


def verify_order(
    tableau: ButcherTableau, p: int, evaluator: ty.Optional[TreeEvaluator] = None
) -> VerificationReport:
    """Checks b Phi(t) = 1/t! for every tree t with |t| <= p

    Parameters
    ----------
    tableau : ButcherTableau
        the method to check, exact or numeric
    p : int
        the order to verify
    evaluator : TreeEvaluator, optional
        shares memoised weights between checks of the same tableau

    Returns
    -------
    VerificationReport
        residual of every condition and the order achieved
    """
    _check_order_argument(p)
    evaluator = evaluator or evaluator_for(tableau)
    report = VerificationReport(order_checked=p, mode=tableau.mode)
    for tree in enumerate_trees(p):
        report.residuals[tree] = evaluator.residual(tree)
    return _summarise(report, tableau)


def q_vector_of(evaluator: TreeEvaluator, t: RootedTree) -> Vector:
    """Q(t) = A Phi(t) - c^|t| / t!"""
    arith = evaluator.arithmetic
    with arith.context():
        scale = arith.coerce(Fraction(1, t.density))
        return tuple(
            x - scale * y
            for x, y in zip(evaluator.a_phi(t), evaluator.c_power(t.order))
        )


def d_vector_of(evaluator: TreeEvaluator, t: RootedTree) -> Vector:
    """D(t)_j = sum_i b_i Phi_i(t) a_ij - b_j (1 - c_j^|t|) / t!"""
    tableau = evaluator.tableau
    arith = evaluator.arithmetic
    with arith.context():
        weighted = evaluator.vecmat(elementwise(tableau.b, evaluator.phi(t)))
        scale = arith.coerce(Fraction(1, t.density))
        one = tableau.one()
        return tuple(
            w - scale * bj * (one - cj)
            for w, bj, cj in zip(weighted, tableau.b, evaluator.c_power(t.order))
        )


def _quadrature_residual(evaluator: TreeEvaluator, n: int) -> ty.Any:
    """b c^n - 1/(n+1)"""
    tableau = evaluator.tableau
    arith = evaluator.arithmetic
    with arith.context():
        return vector_dot(
            tableau.b, evaluator.c_power(n), tableau.zero()
        ) - arith.coerce(Fraction(1, n + 1))


def verify_order_q_form(
    tableau: ButcherTableau, p: int, evaluator: ty.Optional[TreeEvaluator] = None
) -> VerificationReport:
    """Checks order p through the quadrature conditions b c^n = 1/(n+1), n < p, and
    the conditions b (Q(t1) . ... . Q(tk) . c^n) = 0 for every tree [t1 ... tk •^n]
    of order <= p with k > 0 non-leaf children. The tree labelling each condition is
    the one it is built from."""
    _check_order_argument(p)
    evaluator = evaluator or evaluator_for(tableau)
    arith = tableau.arithmetic
    report = VerificationReport(order_checked=p, mode=tableau.mode, form="Q-form")
    q_cache: ty.Dict[RootedTree, Vector] = {}
    for tree in enumerate_trees(p):
        if tree == BULLET:
            report.residuals[tree] = _quadrature_residual(evaluator, 0)
            continue
        branches = [u for u in tree.children if u != BULLET]
        bullets = len(tree.children) - len(branches)
        if not branches:
            report.residuals[tree] = _quadrature_residual(evaluator, bullets)
            continue
        vector = evaluator.c_power(bullets)
        with arith.context():
            for u in branches:
                if u not in q_cache:
                    q_cache[u] = q_vector_of(evaluator, u)
                vector = elementwise(vector, q_cache[u])
            report.residuals[tree] = vector_dot(tableau.b, vector, tableau.zero())
    return _summarise(report, tableau)


def verify_order_d_form(
    tableau: ButcherTableau, p: int, evaluator: ty.Optional[TreeEvaluator] = None
) -> VerificationReport:
    """Checks order p through the quadrature conditions and D(t) Phi(T) = 0 for all
    pairs with |t| + |T| <= p. Each pair is labelled by the tree t * T it splits."""
    _check_order_argument(p)
    evaluator = evaluator or evaluator_for(tableau)
    arith = tableau.arithmetic
    report = VerificationReport(order_checked=p, mode=tableau.mode, form="D-form")
    worst: ty.Dict[RootedTree, ty.Any] = {}
    for n in range(p):
        worst[bushy(n)] = _quadrature_residual(evaluator, n)
    for m in range(1, p):
        for t in trees_of_order(m):
            d = d_vector_of(evaluator, t)
            for n in range(1, p - m + 1):
                for T in trees_of_order(n):
                    with arith.context():
                        value = vector_dot(d, evaluator.phi(T), tableau.zero())
                    label = beta_product(t, T)
                    if label not in worst or arith.is_zero(worst[label]):
                        worst[label] = value
    report.residuals = worst
    return _summarise(report, tableau)


def minimal_stages(p: int) -> ty.Tuple[int, bool]:
    """Smallest stage count of an explicit method of order p

    Returns the known value and True for p <= 8, otherwise the lower bound p + 3 and
    False."""
    _check_order_argument(p)
    if p in MINIMAL_STAGES:
        return MINIMAL_STAGES[p], True
    return p + 3, False
