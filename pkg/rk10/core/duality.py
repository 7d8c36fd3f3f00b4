"""The dual-method involution on tableaus with nonzero weights satisfying D(1)"""
from __future__ import annotations
import typing as ty
import logging
import attrs
from rk10.core.exceptions import Rk10DualityError
from rk10.core.tableau import ButcherTableau, check_bcd, d_n

logger = logging.getLogger("rk10")


@attrs.frozen(kw_only=True)
class DualityOutcome:

    dual: ButcherTableau
    self_dual: bool


@attrs.frozen(kw_only=True)
class DualityTheoremReport:
    """The simplifying assumptions B(l), C(m), D(n) of a tableau against those its dual
    is expected to satisfy, B(l), C(n), D(m)"""

    l: int  # noqa: E741
    m: int
    n: int
    dual_B: int
    dual_C: int
    dual_D: int

    @property
    def holds(self) -> bool:
        return self.dual_B >= self.l and self.dual_C >= self.n and self.dual_D >= self.m

    def __bool__(self) -> bool:
        return self.holds


def check_admissible(tableau: ButcherTableau) -> None:
    """Raises Rk10DualityError unless every weight is nonzero and d_0 = 0"""
    arith = tableau.arithmetic
    for j, bj in enumerate(tableau.b):
        if arith.is_zero(bj):
            raise Rk10DualityError(f"dual undefined: zero weight at stage {j + 1}")
    if not d_n(tableau, 0).vanishes:
        raise Rk10DualityError("dual undefined: D(1) violated")


def tableaus_equal(first: ButcherTableau, second: ButcherTableau) -> bool:
    """Entry-wise equality, exact or within the node-equality tolerance"""
    if first.s != second.s:
        return False
    arith = first.arithmetic
    pairs = list(zip(first.c, second.c)) + list(zip(first.b, second.b))
    pairs += [
        (x, y) for r1, r2 in zip(first.A, second.A) for x, y in zip(r1, r2)
    ]
    with arith.context():
        return all(arith.is_zero(x - y) for x, y in pairs)


def dualize(tableau: ButcherTableau) -> DualityOutcome:
    """The dual method: c*_i = 1 - c_{s+1-i}, b*_j = b_{s+1-j} and
    a*_ij = b_{s+1-j} a_{s+1-j, s+1-i} / b_{s+1-i}

    Parameters
    ----------
    tableau : ButcherTableau
        a method with nonzero weights satisfying D(1)

    Returns
    -------
    DualityOutcome
        the dual and whether it coincides with the input

    Raises
    ------
    Rk10DualityError
        if a weight vanishes or D(1) is violated
    """
    check_admissible(tableau)
    s = tableau.s
    A, b, c = tableau.A, tableau.b, tableau.c
    with tableau.arithmetic.context():
        one = tableau.one()
        dual = ButcherTableau(
            A=[
                [
                    b[s - 1 - j] * A[s - 1 - j][s - 1 - i] / b[s - 1 - i]
                    for j in range(s)
                ]
                for i in range(s)
            ],
            b=[b[s - 1 - j] for j in range(s)],
            c=[one - c[s - 1 - i] for i in range(s)],
            arithmetic=tableau.arithmetic,
            name=f"{tableau.name}*" if tableau.name else "",
        )
    self_dual = tableaus_equal(tableau, dual)
    logger.info(
        "Dualised %s%s", tableau.name or "tableau", " (self-dual)" if self_dual else ""
    )
    return DualityOutcome(dual=dual, self_dual=self_dual)


def check_duality_theorem(
    tableau: ButcherTableau, l: int, m: int, n: int  # noqa: E741
) -> DualityTheoremReport:
    """Confirms that the dual of a method satisfying B(l), C(m) and D(n) satisfies
    B(l), C(n) and D(m)

    Raises
    ------
    Rk10DualityError
        if the tableau does not satisfy the premises or has no dual
    """
    cap = max(l, m, n, 1)
    measured = check_bcd(tableau, cap=cap)
    for name, wanted, got in (
        ("B", l, measured.B),
        ("C", m, measured.C),
        ("D", n, measured.D),
    ):
        if got < wanted:
            raise Rk10DualityError(
                f"premise {name}({wanted}) fails: tableau satisfies only {name}({got})"
            )
    dual = dualize(tableau).dual
    dual_measured = check_bcd(dual, cap=cap)
    report = DualityTheoremReport(
        l=l,
        m=m,
        n=n,
        dual_B=dual_measured.B,
        dual_C=dual_measured.C,
        dual_D=dual_measured.D,
    )
    logger.info(
        "Dual of B(%d) C(%d) D(%d) satisfies %s", l, m, n, dual_measured
    )
    return report


def would_be_dual(tableau: ButcherTableau) -> ty.Dict[ty.Tuple[int, int], ty.Any]:
    """The renormalised coefficients A_ij = b_i a_ij / b_j, keyed by 1-based (i, j),
    for every nonzero a_ij between stages with nonzero weights. Defined even when
    the dual itself is not."""
    arith = tableau.arithmetic
    weighted = [j for j, bj in enumerate(tableau.b) if not arith.is_zero(bj)]
    result = {}
    with arith.context():
        for i in weighted:
            for j in weighted:
                a = tableau.A[i][j]
                if not arith.is_zero(a):
                    result[(i + 1, j + 1)] = tableau.b[i] * a / tableau.b[j]
    return result
