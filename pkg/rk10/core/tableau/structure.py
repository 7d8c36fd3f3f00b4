"""Per-stage consistency orders, node clusters and the Phi/Q/D subspace filtrations
of a tableau"""
from __future__ import annotations
import typing as ty
import logging
import attrs
from rk10.core.trees import RootedTree, bushy, trees_of_order
from rk10.core.field.linalg import EchelonBasis, span_basis
from rk10.core.exceptions import Rk10UsageError
from rk10.core.utils import UNBOUNDED, format_order
from .base import ButcherTableau, Vector, elementwise
from .weights import TreeEvaluator, evaluator_for, q_vector_of, d_vector_of

logger = logging.getLogger("rk10")

DEFAULT_MAX_ORDER = 10

Order = ty.Union[int, float]

FAMILIES = {"phi": "phi", "Φ": "phi", "q": "Q", "Q": "Q", "d": "D", "D": "D"}

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@attrs.frozen(kw_only=True)
class SubspaceBasis:
    """Basis (in reduced echelon form) of one member of a subspace filtration"""

    family: str
    p: int
    vectors: ty.Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)


@attrs.define(kw_only=True)
class StageOrders:

    stage: int
    stage_order: Order
    strong_stage_order: Order
    weak_stage_coorder: Order

    def as_dict(self) -> ty.Dict[str, ty.Any]:
        return {
            "stage": self.stage,
            "stage_order": format_order(self.stage_order),
            "strong_stage_order": format_order(self.strong_stage_order),
            "weak_stage_coorder": format_order(self.weak_stage_coorder),
        }


@attrs.define(kw_only=True)
class NodeCluster:
    """Stages sharing one node together with the subspaces Q (columns) and D (rows)
    of vectors indexed by those stages"""

    stages: ty.Tuple[int, ...]
    quadrature: bool
    Q: ty.List[Vector]
    D: ty.List[Vector]
    order: Order
    coorder: Order

    @property
    def size(self) -> int:
        return len(self.stages)

    @property
    def dim_q(self) -> int:
        return len(self.Q)

    @property
    def dim_d(self) -> int:
        return len(self.D)

    @property
    def identity_holds(self) -> bool:
        expected = self.size - 1 if self.quadrature else self.size
        return self.dim_q + self.dim_d == expected

    @property
    def type_label(self) -> str:
        """e.g. "⁴₄●⁰₁": order and co-order, filled/hollow circle for quadrature or
        not, then dim Q and dim D"""
        symbol = "●" if self.quadrature else "○"
        return (
            _sup(self.order)
            + _sub(self.coorder)
            + symbol
            + str(self.dim_q).translate(_SUPERSCRIPTS)
            + str(self.dim_d).translate(_SUBSCRIPTS)
        )

    def as_dict(self) -> ty.Dict[str, ty.Any]:
        return {
            "stages": list(self.stages),
            "quadrature": self.quadrature,
            "dim_q": self.dim_q,
            "dim_d": self.dim_d,
            "order": format_order(self.order),
            "coorder": format_order(self.coorder),
            "type": self.type_label,
        }


def _sup(order: Order) -> str:
    return "∞" if order == UNBOUNDED else str(order).translate(_SUPERSCRIPTS)


def _sub(order: Order) -> str:
    return "∞" if order == UNBOUNDED else str(order).translate(_SUBSCRIPTS)


@attrs.define(kw_only=True)
class ClusterReport:

    clusters: ty.List[NodeCluster]
    stages: ty.List[StageOrders]
    max_order: int

    def multi_stage(self) -> ty.List[NodeCluster]:
        return [c for c in self.clusters if c.size > 1]

    def cluster_of(self, stage: int) -> NodeCluster:
        return next(c for c in self.clusters if stage in c.stages)

    @property
    def identity_holds(self) -> bool:
        return all(c.identity_holds for c in self.clusters)

    def as_dict(self) -> ty.Dict[str, ty.Any]:
        return {
            "max_order": self.max_order,
            "clusters": [c.as_dict() for c in self.clusters],
            "stages": [s.as_dict() for s in self.stages],
        }


class StructureAnalyzer:
    """Caches the condition vectors and filtration members of one tableau"""

    def __init__(
        self, tableau: ButcherTableau, evaluator: ty.Optional[TreeEvaluator] = None
    ):
        self.tableau = tableau
        self.arithmetic = tableau.arithmetic
        self.evaluator = evaluator or evaluator_for(tableau)
        self._q: ty.Dict[RootedTree, Vector] = {}
        self._d: ty.Dict[RootedTree, Vector] = {}
        self._filtrations: ty.Dict[ty.Tuple[str, int], EchelonBasis] = {}

    def q(self, t: RootedTree) -> Vector:
        if t not in self._q:
            self._q[t] = q_vector_of(self.evaluator, t)
        return self._q[t]

    def d(self, t: RootedTree) -> Vector:
        if t not in self._d:
            self._d[t] = d_vector_of(self.evaluator, t)
        return self._d[t]

    def is_zero(self, value: ty.Any) -> bool:
        return self.arithmetic.is_zero(value)

    # Structural zeros

    def row_inert(self, i: int) -> bool:
        """Q_i(t) vanishes for every tree: row i of A is zero and c_i = 0"""
        return self.is_zero(self.tableau.c[i]) and all(
            self.is_zero(a) for a in self.tableau.A[i]
        )

    def column_inert(self, j: int) -> bool:
        """Every member of every D_p vanishes at stage j: column j of A is zero and
        b_j (1 - c_j) = 0"""
        tab = self.tableau
        return (
            self.is_zero(tab.b[j]) or self.is_zero(tab.c[j] - tab.one())
        ) and all(self.is_zero(row[j]) for row in tab.A)

    def weighted_column_inert(self, j: int) -> bool:
        """D_j(t) vanishes for every tree: a_ij = 0 wherever b_i != 0, and
        b_j = 0 or c_j = 1"""
        tab = self.tableau
        return (
            self.is_zero(tab.b[j]) or self.is_zero(tab.c[j] - tab.one())
        ) and all(
            self.is_zero(tab.A[i][j])
            for i in range(tab.s)
            if not self.is_zero(tab.b[i])
        )

    # Filtrations

    def filtration(self, family: str, p: int) -> EchelonBasis:
        key = (family, p)
        if key not in self._filtrations:
            builder = {
                "phi": self._build_phi,
                "Q": self._build_q,
                "D": self._build_d,
            }[family]
            self._filtrations[key] = builder(p)
        return self._filtrations[key]

    def _new_basis(self) -> EchelonBasis:
        return EchelonBasis(self.tableau.s, self.arithmetic)

    def _full(self, basis: EchelonBasis) -> bool:
        return basis.dim == self.tableau.s

    def _copy(self, basis: EchelonBasis) -> EchelonBasis:
        return self._new_basis().extend(basis.vectors())

    def _build_phi(self, p: int) -> EchelonBasis:
        if p == 0:
            return self._new_basis().extend([self.tableau.ones()])
        previous = self.filtration("phi", p - 1)
        basis = self._copy(previous)
        with self.arithmetic.context():
            for v in previous.vectors():
                if self._full(basis):
                    return basis
                basis.add(self.evaluator.matvec(v))
            for q in range(1, p):
                for x in self.filtration("phi", q).vectors():
                    for y in self.filtration("phi", p - q).vectors():
                        if self._full(basis):
                            return basis
                        basis.add(elementwise(x, y))
        return basis

    def _build_q(self, p: int) -> EchelonBasis:
        if p <= 1:
            return self._new_basis()
        previous = self.filtration("Q", p - 1)
        basis = self._copy(previous)
        basis.add(self.q(bushy(p - 1)))
        with self.arithmetic.context():
            for v in previous.vectors():
                basis.add(self.evaluator.matvec(v))
            for q in range(2, p):
                for x in self.filtration("Q", q).vectors():
                    for y in self.filtration("phi", p - q).vectors():
                        if self._full(basis):
                            return basis
                        basis.add(elementwise(x, y))
        return basis

    def _build_d(self, p: int) -> EchelonBasis:
        if p == 0:
            return self._new_basis()
        if p == 1:
            return self._new_basis().extend([self.d(bushy(0))])
        previous = self.filtration("D", p - 1)
        basis = self._copy(previous)
        with self.arithmetic.context():
            c = self.tableau.c
            for v in previous.vectors():
                basis.add(elementwise(v, c))
                basis.add(self.evaluator.vecmat(v))
        for t in trees_of_order(p):
            if self._full(basis):
                break
            basis.add(self.d(t))
        return basis

    # Stage orders

    def strong_stage_orders(self, max_order: int) -> ty.List[Order]:
        s = self.tableau.s
        leading: ty.List[Order] = []
        for i in range(s):
            if self.row_inert(i):
                leading.append(UNBOUNDED)
                continue
            n = 0
            while n < max_order and self.is_zero(self.q(bushy(n))[i]):
                n += 1
            leading.append(n)
        orders = list(leading)
        changed = True
        while changed:
            changed = False
            for i in range(s):
                deps = [
                    orders[j]
                    for j in range(s)
                    if not self.is_zero(self.tableau.A[i][j])
                ]
                value = min([leading[i]] + [d + 1 for d in deps])
                if value < orders[i]:
                    orders[i] = value
                    changed = True
        return [min(o, max_order) if o != UNBOUNDED else o for o in orders]

    def _layered_orders(
        self,
        vector_of: ty.Callable[[RootedTree], Vector],
        unbounded: ty.Callable[[int], bool],
        max_order: int,
    ) -> ty.List[Order]:
        """For each stage, the largest p <= max_order with the stage entry of every
        vector_of(t), |t| <= p, vanishing"""
        s = self.tableau.s
        orders: ty.List[ty.Optional[Order]] = [
            UNBOUNDED if unbounded(i) else None for i in range(s)
        ]
        for p in range(1, max_order + 1):
            open_stages = [i for i in range(s) if orders[i] is None]
            if not open_stages:
                break
            for t in trees_of_order(p):
                values = vector_of(t)
                for i in open_stages:
                    if orders[i] is None and not self.is_zero(values[i]):
                        orders[i] = p - 1
        return [max_order if o is None else o for o in orders]

    def stage_orders(self, max_order: int) -> ty.List[StageOrders]:
        strong = self.strong_stage_orders(max_order)
        plain = self._layered_orders(self.q, self.row_inert, max_order)
        weak = self._layered_orders(self.d, self.weighted_column_inert, max_order)
        return [
            StageOrders(
                stage=i + 1,
                stage_order=plain[i],
                strong_stage_order=strong[i],
                weak_stage_coorder=weak[i],
            )
            for i in range(self.tableau.s)
        ]

    # Clusters

    def partition(self) -> ty.List[ty.List[int]]:
        """Stages grouped by equal nodes, in order of first appearance"""
        groups: ty.List[ty.List[int]] = []
        for i, ci in enumerate(self.tableau.c):
            for group in groups:
                if self.is_zero(self.tableau.c[group[0]] - ci):
                    group.append(i)
                    break
            else:
                groups.append([i])
        return groups

    def _restrict(self, vector: Vector, stages: ty.Sequence[int]) -> Vector:
        return tuple(vector[i] for i in stages)

    def _orthogonal(self, u: Vector, v: Vector) -> bool:
        arith = self.arithmetic
        with arith.context():
            total = sum((x * y for x, y in zip(u, v)), self.tableau.zero())
        if arith.exact:
            return arith.is_zero(total)
        scale = max((abs(x) for x in u), default=0) * max(
            (abs(y) for y in v), default=0
        )
        return arith.is_negligible(total, scale)

    def _q_span(self, stages: ty.Sequence[int], p: int) -> ty.List[Vector]:
        """Restrictions of Q(t), |t| <= p, to the stages"""
        basis = EchelonBasis(len(stages), self.arithmetic)
        for m in range(1, p + 1):
            for t in trees_of_order(m):
                basis.add(self._restrict(self.q(t), stages))
        return [tuple(v) for v in basis.vectors()]

    def _d_span(self, stages: ty.Sequence[int], p: int) -> ty.List[Vector]:
        basis = EchelonBasis(len(stages), self.arithmetic)
        for v in self.filtration("D", p).vectors():
            basis.add(self._restrict(v, stages))
        return [tuple(v) for v in basis.vectors()]

    def cluster(self, stages: ty.Sequence[int], max_order: int) -> NodeCluster:
        tab = self.tableau
        arith = self.arithmetic
        size = len(stages)
        b_s = self._restrict(tab.b, stages)
        ones = tuple(tab.one() for _ in stages)
        with arith.context():
            quadrature = not arith.is_zero(sum(b_s[1:], b_s[0]))
        if size == 1:
            D: ty.List[Vector] = []
        else:
            D = self._choose_d(stages, b_s, ones, quadrature, max_order)
        extra = [] if quadrature else [b_s]
        d_basis = span_basis(list(D) + extra, size, arith)
        D = [tuple(v) for v in d_basis.vectors()]
        Q = [
            tuple(v)
            for v in span_basis(D + [b_s], size, arith).nullspace()
        ]
        order = self._cluster_order(stages, Q, max_order)
        coorder = self._cluster_coorder(stages, d_basis, max_order)
        result = NodeCluster(
            stages=tuple(i + 1 for i in stages),
            quadrature=quadrature,
            Q=Q,
            D=D,
            order=order,
            coorder=coorder,
        )
        if not result.identity_holds:
            logger.warning(
                "Cluster %s violates dim Q + dim D = %s: %d + %d",
                result.stages,
                "|S| - 1" if quadrature else "|S|",
                result.dim_q,
                result.dim_d,
            )
        return result

    def _choose_d(
        self,
        stages: ty.Sequence[int],
        b_s: Vector,
        ones: Vector,
        quadrature: bool,
        max_order: int,
    ) -> ty.List[Vector]:
        """Picks the generators of D maximising min(order, co-order), preferring the
        higher order on ties: for each admissible order p the co-order is the largest
        p* with D_p* restricted to the stages orthogonal to 1 and to every Q(t),
        |t| <= p."""
        best: ty.Tuple[int, int] = (-1, -1)
        best_d: ty.List[Vector] = []
        for p in range(0, max_order + 1):
            g_q = self._q_span(stages, p)
            if not all(self._orthogonal(v, b_s) for v in g_q):
                break
            p_star = 0
            g_d: ty.List[Vector] = []
            while p_star < max_order:
                candidate = self._d_span(stages, p_star + 1)
                if not all(self._orthogonal(v, ones) for v in candidate):
                    break
                if not all(self._orthogonal(v, w) for v in candidate for w in g_q):
                    break
                p_star += 1
                g_d = candidate
            score = (min(p, p_star), p)
            if score > best:
                best, best_d = score, g_d
            if p_star < best[0]:
                break
        return best_d

    def _cluster_order(
        self, stages: ty.Sequence[int], Q: ty.List[Vector], max_order: int
    ) -> Order:
        if all(self.row_inert(i) for i in stages):
            return UNBOUNDED
        if len(Q) == len(stages):
            return max_order
        basis = EchelonBasis(len(stages), self.arithmetic).extend(Q)
        for p in range(1, max_order + 1):
            for t in trees_of_order(p):
                if not basis.contains(self._restrict(self.q(t), stages)):
                    return p - 1
        return max_order

    def _cluster_coorder(
        self, stages: ty.Sequence[int], d_basis: EchelonBasis, max_order: int
    ) -> Order:
        if all(self.column_inert(i) for i in stages):
            return UNBOUNDED
        for p in range(1, max_order + 1):
            for v in self.filtration("D", p).vectors():
                if not d_basis.contains(self._restrict(v, stages)):
                    return p - 1
        return max_order


def _check_max_order(max_order: int) -> None:
    if max_order < 1:
        raise Rk10UsageError(f"Order cap must be at least 1, got {max_order}")


def stage_orders(
    tableau: ButcherTableau, max_order: int = DEFAULT_MAX_ORDER
) -> ty.List[StageOrders]:
    """Stage order, strong stage order and weak stage co-order of every stage, each
    capped at ``max_order``; stages where the defining vectors vanish identically
    report UNBOUNDED"""
    _check_max_order(max_order)
    return StructureAnalyzer(tableau).stage_orders(max_order)


def cluster_analysis(
    tableau: ButcherTableau, max_order: int = DEFAULT_MAX_ORDER
) -> ClusterReport:
    """Partitions the stages into node clusters and reports their subspaces, orders and
    co-orders together with the per-stage orders

    Parameters
    ----------
    tableau : ButcherTableau
        the method
    max_order : int
        cap on every order searched

    Returns
    -------
    ClusterReport
        one NodeCluster per distinct node, in order of the first stage using it
    """
    _check_max_order(max_order)
    analyzer = StructureAnalyzer(tableau)
    clusters = [analyzer.cluster(group, max_order) for group in analyzer.partition()]
    report = ClusterReport(
        clusters=clusters,
        stages=analyzer.stage_orders(max_order),
        max_order=max_order,
    )
    for cluster in report.multi_stage():
        logger.info("Cluster %s of type %s", cluster.stages, cluster.type_label)
    return report


def filtration(tableau: ButcherTableau, family: str, p: int) -> SubspaceBasis:
    """The member of order p of the Phi, Q or D filtration"""
    if family not in FAMILIES:
        raise Rk10UsageError(
            f"Unrecognised filtration '{family}', expected one of Phi, Q or D"
        )
    if p < 0:
        raise Rk10UsageError(f"Filtration index must be non-negative, got {p}")
    name = FAMILIES[family]
    basis = StructureAnalyzer(tableau).filtration(name, p)
    return SubspaceBasis(
        family=name, p=p, vectors=tuple(tuple(v) for v in basis.vectors())
    )
