"""Construction of the 15-stage order-10 family over Q(alpha, beta) or at a given
numeric precision

Stages are numbered from 1 as in the usual Butcher notation; the internal arrays are
padded so that index 0 is unused.

The pipeline runs in this order:

1. nodes from the Lobatto quadrature and c3 = 2/3 c4, c6 from its closed form;
   weights b9, b11, b7, b8 from the Lobatto weights
2. the closing sweep over columns 14 down to 7, which balances d1 on the clusters
   {7,13}, {8,14}, {9,10}, {11,12} and enforces the relations
   between d2, d1 A, d3, (d1 . c) A, d4 and d1, fitting the closure constants on the
   last columns as it goes; row 15 follows from d0 = 0
3. the opening rows 2-6 and the columns 3-6 of rows 7-15 from the
   Vandermonde-like systems, then the first column from the row sums
4. a87 from d4 c^4 = 0 and a65 from d4 A a_*2 = 0; the tableau is affine in each of
   them, so both are found from two trial evaluations
"""
from __future__ import annotations
import typing as ty
import logging
from functools import lru_cache
from rk10.core.field import (
    Arithmetic,
    ExactArithmetic,
    NumericArithmetic,
    solve_linear,
)
from rk10.core.exceptions import (
    Rk10ConstructionError,
    Rk10FieldError,
    Rk10SingularSystemError,
    Rk10VerificationError,
)
from rk10.core.tableau import ButcherTableau, verify_order
from .lobatto import lobatto6
from .params import FamilyParams, reference_params
from .constants import ClosureConstants, closing_pivot, c6_of, C6Constants

logger = logging.getLogger("rk10")

STAGES = 15
ORDER = 10
FIRST_CLOSING = 7
LAST_CLOSING = 14

# the stage whose d1 entry cancels that of each closing column
PARTNERS = {7: 13, 8: 14, 9: 10, 11: 12}

Grid = ty.List[ty.List[ty.Any]]


def script_d(n: int, theta: ty.Any, one: ty.Any) -> ty.Any:
    """D_n(theta) = 1 - theta - (1 - theta^(n+1)) / (n+1)"""
    return one - theta - (one - theta ** (n + 1)) / (n + 1)


class FamilyBuilder:
    """Carries one parameter set through the construction pipeline in a chosen
    arithmetic"""

    def __init__(
        self,
        params: FamilyParams,
        arithmetic: ty.Optional[Arithmetic] = None,
        c6: ty.Any = None,
        pivot: ty.Any = None,
        c6_constants: ty.Optional[C6Constants] = None,
    ):
        self.params = params
        self.arithmetic = arithmetic or ExactArithmetic()
        coerce = self.arithmetic.coerce
        self.zero = self.arithmetic.zero()
        self.one = self.arithmetic.one()
        self.pivot = coerce(closing_pivot() if pivot is None else pivot)
        lobatto = lobatto6()
        theta = [None] + [coerce(t) for t in lobatto.theta]
        w = [None] + [coerce(x) for x in lobatto.w]
        p = {name: coerce(getattr(params, name)) for name in params.as_dict()}
        with self.arithmetic.context():
            if c6 is None:
                c6 = c6_of(params.c4, params.c5, c6_constants)
            c = [None] * (STAGES + 1)
            c[1] = self.zero
            c[2] = p["c2"]
            c[3] = p["c4"] * 2 / 3
            c[4] = p["c4"]
            c[5] = p["c5"]
            c[6] = coerce(c6)
            c[7] = c[13] = theta[4]
            c[8] = c[14] = theta[5]
            c[9] = c[10] = theta[2]
            c[11] = c[12] = theta[3]
            c[15] = self.one
            b = [None] + [self.zero] * STAGES
            b[1] = b[15] = w[1]
            b[10], b[12], b[13], b[14] = p["b10"], p["b12"], p["b13"], p["b14"]
            b[9] = w[2] - b[10]
            b[11] = w[3] - b[12]
            b[7] = w[4] - b[13]
            b[8] = w[5] - b[14]
        self.c = c
        self.b = b
        self.closure: ty.Optional[ClosureConstants] = None

    def new_grid(self) -> Grid:
        return [[self.zero] * (STAGES + 1) for _ in range(STAGES + 1)]

    def _solve(self, rows, rhs, name, reason=None) -> ty.List[ty.Any]:
        return solve_linear(rows, rhs, self.arithmetic, name=name, reason=reason)

    # Closing sweep

    def _d_entries(self, a: Grid, d: ty.Dict, dA: ty.Dict, j: int) -> None:
        """d_n,j for n <= 4 and (d1 . c^n) A at column j for n <= 2, from rows
        j+1..14 (row 15 drops out since c15 = 1 and d1_15 = 0)"""
        b, c = self.b, self.c
        for n in range(5):
            total = b[j] * script_d(n, c[j], self.one)
            for i in range(j + 1, LAST_CLOSING + 1):
                total = total - b[i] * (self.one - c[i] ** n) * a[i][j]
            d[n, j] = total
        for n in range(3):
            total = self.zero
            for i in range(j + 1, LAST_CLOSING + 1):
                total = total + d[1, i] * c[i] ** n * a[i][j]
            dA[n, j] = total

    def _d_form(self, n: int, j: int) -> ty.Tuple[ty.Any, ty.List[ty.Any]]:
        """d_n,j as constant + coefficients of a_{j+1..14, j}"""
        b, c = self.b, self.c
        return b[j] * script_d(n, c[j], self.one), [
            -b[i] * (self.one - c[i] ** n) for i in range(j + 1, LAST_CLOSING + 1)
        ]

    def _dA_form(self, n: int, j: int, d: ty.Dict) -> ty.Tuple[ty.Any, ty.List[ty.Any]]:
        c = self.c
        return self.zero, [
            d[1, i] * c[i] ** n for i in range(j + 1, LAST_CLOSING + 1)
        ]

    def _relation(
        self, which: int, j: int, d: ty.Dict, g: ClosureConstantsDraft
    ) -> ty.Tuple[ty.Any, ty.List[ty.Any]]:
        """The relation ``which`` (2-6) at column j as const + coefficients, to be
        set to zero"""
        cj = self.c[j]
        if which == 2:
            const, coeffs = self._d_form(2, j)
            poly = g.gamma20 + g.gamma21 * cj
        elif which == 3:
            const, coeffs = self._dA_form(0, j, d)
            poly = g.gammaA0 + g.gammaA1 * cj
        elif which == 4:
            const, coeffs = self._d_form(3, j)
            poly = g.gamma30 + g.gamma31 * cj + g.gamma32 * cj * cj
        elif which == 5:
            const, coeffs = self._dA_form(1, j, d)
            poly = g.gammaC0 + g.gammaC1 * cj + g.gammaC2 * cj * cj
        else:
            const, coeffs = self._d_form(4, j)
            poly = g.gamma40 + cj * (g.gamma41 + cj * (g.gamma42 + cj * g.gamma43))
            _, extra = self._dA_form(2, j, d)
            coeffs = [x - g.gamma4c * y for x, y in zip(coeffs, extra)]
        d1_const, d1_coeffs = self._d_form(1, j)
        return const - poly * d1_const, [
            x - poly * y for x, y in zip(coeffs, d1_coeffs)
        ]

    def _fit(
        self,
        columns: ty.Sequence[int],
        degree: int,
        target: ty.Callable[[int], ty.Any],
        d: ty.Dict,
        dA: ty.Dict,
        with_dA2: bool,
        label: str,
    ) -> ty.List[ty.Any]:
        rows = []
        for j in columns:
            row = [self.c[j] ** k * d[1, j] for k in range(degree + 1)]
            if with_dA2:
                row.append(dA[2, j])
            rows.append(row)
        return self._solve(
            rows,
            [target(j) for j in columns],
            f"{label} closure constants",
            reason="d1 vanishes on the closing columns",
        )

    def closing(self, a87: ty.Any) -> ty.Tuple[Grid, ClosureConstantsDraft]:
        """Columns 7-14 of rows 8-15 with a87 given"""
        a = self.new_grid()
        b, c = self.b, self.c
        d: ty.Dict[ty.Tuple[int, int], ty.Any] = {}
        dA: ty.Dict[ty.Tuple[int, int], ty.Any] = {}
        g = ClosureConstantsDraft()
        with self.arithmetic.context():
            if not b[14]:
                raise Rk10ConstructionError(
                    "closing a14,13", "b14 = 0 leaves a14,13 undefined"
                )
            a[14][13] = b[13] * self.pivot / b[14]
            self._d_entries(a, d, dA, 14)
            self._d_entries(a, d, dA, 13)
            g.gamma20, g.gamma21 = self._fit(
                (13, 14), 1, lambda j: d[2, j], d, dA, False, "closing d2"
            )
            g.gammaA0, g.gammaA1 = self._fit(
                (13, 14), 1, lambda j: dA[0, j], d, dA, False, "closing d1 A"
            )
            for j in range(LAST_CLOSING - 2, FIRST_CLOSING - 1, -1):
                rows, rhs = self.closing_system(j, d, g)
                offset = 0
                if j == FIRST_CLOSING:
                    # a87 is given: move its column to the right-hand side
                    rhs = [r - row[0] * a87 for r, row in zip(rhs, rows)]
                    rows = [row[1:] for row in rows]
                    offset = 1
                    a[8][7] = a87
                solution = self._solve(
                    rows,
                    rhs,
                    f"closing solve for column {j}",
                    reason="node clusters do not determine the column",
                )
                for k, value in enumerate(solution):
                    a[j + 1 + offset + k][j] = value
                self._d_entries(a, d, dA, j)
                logger.debug("Closing column %d solved (%d equations)", j, len(rows))
                if j == 12:
                    g.gamma30, g.gamma31, g.gamma32 = self._fit(
                        (12, 13, 14), 2, lambda j: d[3, j], d, dA, False, "closing d3"
                    )
                    g.gammaC0, g.gammaC1, g.gammaC2 = self._fit(
                        (12, 13, 14),
                        2,
                        lambda j: dA[1, j],
                        d,
                        dA,
                        False,
                        "closing (d1 . c) A",
                    )
                if j == 10:
                    (
                        g.gamma40,
                        g.gamma41,
                        g.gamma42,
                        g.gamma43,
                        g.gamma4c,
                    ) = self._fit(
                        (10, 11, 12, 13, 14),
                        3,
                        lambda j: d[4, j],
                        d,
                        dA,
                        True,
                        "closing d4",
                    )
            if not b[15]:
                raise Rk10ConstructionError(
                    "closing row 15", "b15 = 0 leaves row 15 undefined"
                )
            for j in range(FIRST_CLOSING, LAST_CLOSING + 1):
                total = b[j] * (self.one - c[j])
                for i in range(j + 1, LAST_CLOSING + 1):
                    total = total - b[i] * a[i][j]
                a[15][j] = total / b[15]
        return a, g

    def closing_system(
        self, j: int, d: ty.Dict, g: ClosureConstantsDraft
    ) -> ty.Tuple[ty.List[ty.List[ty.Any]], ty.List[ty.Any]]:
        """Equations for a_{j+1..14, j}: d1 balancing against the partner stage,
        the relations for d2 and d1 A, for d3 and (d1 . c) A once their constants
        are known (below column 12) and for d4 from column 9 on"""
        relations = [2, 3] if j == 12 else [2, 3, 4, 5]
        if j <= 9:
            relations.append(6)
        rows, rhs = [], []
        if j in PARTNERS:
            const, coeffs = self._d_form(1, j)
            rows.append(coeffs)
            rhs.append(-(const + d[1, PARTNERS[j]]))
        for which in relations:
            const, coeffs = self._relation(which, j, d, g)
            rows.append(coeffs)
            rhs.append(-const)
        return rows, rhs

    # Opening

    def opening(self, a: Grid, a65: ty.Any) -> Grid:
        """Fills rows 2-6, columns 2-6 of rows 7-15 and the first column into a copy
        of the closing grid"""
        a = [list(row) for row in a]
        c = self.c
        with self.arithmetic.context():
            try:
                a[2][1] = c[2]
                a[3][2] = c[3] ** 2 / (2 * c[2])
                a[4][3] = c[4] ** 2 * (c[4] - c[3]) / c[3] ** 2
                denominator = 6 * c[3] * (c[4] - c[3])
                a[5][3] = c[5] ** 2 * (3 * c[4] - 2 * c[5]) / denominator
                a[5][4] = c[5] ** 2 * (2 * c[5] - 3 * c[3]) / (6 * c[4] * (c[4] - c[3]))
                self._row6(a, a65)
            except (ZeroDivisionError, Rk10FieldError) as e:
                raise Rk10ConstructionError(
                    "opening rows", f"opening rows: zero denominator ({e})"
                )
            for i in range(FIRST_CLOSING, STAGES + 1):
                rows = [
                    [a[j][2] for j in range(3, 7)],
                    [c[j] for j in range(3, 7)],
                    [c[j] ** 2 for j in range(3, 7)],
                    [c[j] ** 3 for j in range(3, 7)],
                ]
                rhs = [self.zero]
                for k in range(1, 4):
                    total = c[i] ** (k + 1) / (k + 1)
                    for j in range(FIRST_CLOSING, i):
                        total = total - a[i][j] * c[j] ** k
                    rhs.append(total)
                solution = self._solve(
                    rows,
                    rhs,
                    "Vandermonde-like solve",
                    reason="repeated opening node",
                )
                for j, value in zip(range(3, 7), solution):
                    a[i][j] = value
                a[i][2] = self.zero
            for i in range(2, STAGES + 1):
                total = c[i]
                for j in range(2, i):
                    total = total - a[i][j]
                a[i][1] = total
        return a

    def _row6(self, a: Grid, a65: ty.Any) -> None:
        c = self.c
        a[6][2] = self.zero
        a[6][5] = a65
        a[6][3] = (
            c[6] ** 2 * (3 * c[4] - 2 * c[6]) + 6 * a65 * c[5] * (c[5] - c[4])
        ) / (6 * c[3] * (c[4] - c[3]))
        a[6][4] = (
            c[6] ** 2 * (2 * c[6] - 3 * c[3]) - 6 * a65 * c[5] * (c[5] - c[3])
        ) / (6 * c[4] * (c[4] - c[3]))
        a[6][1] = c[6] - a[6][3] - a[6][4] - a[6][5]

    # Free coefficients a87 and a65

    def d_vector(self, a: Grid, n: int) -> ty.List[ty.Any]:
        """d_n over all stages (1-based, index 0 unused)"""
        b, c = self.b, self.c
        result = [self.zero]
        with self.arithmetic.context():
            for j in range(1, STAGES + 1):
                total = self.zero
                for i in range(j + 1, STAGES + 1):
                    if b[i] and a[i][j]:
                        total = total + b[i] * c[i] ** n * a[i][j]
                result.append(
                    total - b[j] * (self.one - c[j] ** (n + 1)) / (n + 1)
                )
        return result

    def _d4_c4(self, a: Grid) -> ty.Any:
        d4 = self.d_vector(a, 4)
        with self.arithmetic.context():
            return sum(
                (d4[j] * self.c[j] ** 4 for j in range(1, STAGES + 1)), self.zero
            )

    def _d4_a2(self, a: Grid, d4: ty.List[ty.Any]) -> ty.Any:
        """d4 A a_*2, i.e. sum_j d4_j a_j3 a_32 up to the factor a_32"""
        with self.arithmetic.context():
            return sum((d4[j] * a[j][3] for j in range(1, STAGES + 1)), self.zero)

    def _affine_root(self, f0: ty.Any, f1: ty.Any, name: str, condition: str) -> ty.Any:
        with self.arithmetic.context():
            slope = f1 - f0
            if self.arithmetic.is_zero(slope):
                raise Rk10ConstructionError(
                    name, f"{condition} does not depend on {name}, cannot solve for it"
                )
            return -f0 / slope

    def build(self) -> Grid:
        closing0, draft = self.closing(self.zero)
        self.closure = draft.freeze()
        closing1, _ = self.closing(self.one)
        f0 = self._d4_c4(self.opening(closing0, self.zero))
        f1 = self._d4_c4(self.opening(closing1, self.zero))
        a87 = self._affine_root(f0, f1, "a87", "d4 c^4 = 0")
        logger.debug("a87 = %s", a87)
        with self.arithmetic.context():
            closing = [
                [x0 + a87 * (x1 - x0) for x0, x1 in zip(r0, r1)]
                for r0, r1 in zip(closing0, closing1)
            ]
        a = self.opening(closing, self.zero)
        d4 = self.d_vector(a, 4)
        g0 = self._d4_a2(a, d4)
        trial = [list(row) for row in a]
        with self.arithmetic.context():
            self._row6(trial, self.one)
        g1 = self._d4_a2(trial, d4)
        a65 = self._affine_root(g0, g1, "a65", "d4 A a_*2 = 0")
        logger.debug("a65 = %s", a65)
        with self.arithmetic.context():
            self._row6(a, a65)
        return a

    def tableau(self, name: str = "") -> ButcherTableau:
        a = self.build()
        return ButcherTableau(
            A=[[a[i][j] for j in range(1, STAGES + 1)] for i in range(1, STAGES + 1)],
            b=self.b[1:],
            c=self.c[1:],
            arithmetic=self.arithmetic,
            name=name,
        )


class ClosureConstantsDraft:
    """Mutable holder for the closure constants while the sweep fills them in"""

    def __getattr__(self, name: str) -> ty.Any:
        raise Rk10ConstructionError(
            name, f"closure constant {name} used before it was fitted"
        )

    def freeze(self) -> ClosureConstants:
        return ClosureConstants(**vars(self))


def construct(
    params: FamilyParams,
    numeric_digits: ty.Optional[int] = None,
    c6: ty.Any = None,
    verify: ty.Optional[bool] = None,
    name: str = "",
) -> ButcherTableau:
    """Builds the family member with the given parameters

    Parameters
    ----------
    params : FamilyParams
        the seven free parameters
    numeric_digits : int, optional
        run the pipeline in mpmath arithmetic at this precision instead of exactly
    c6 : optional
        overrides the closed form for the node c6 (numeric experiments; the result is
        then not of order 10)
    verify : bool, optional
        check the order-10 conditions of the result, by default only for exact
        constructions without a c6 override
    name : str
        label carried by the tableau

    Returns
    -------
    ButcherTableau
        the 15-stage tableau

    Raises
    ------
    Rk10ConstructionError
        if a step of the pipeline is degenerate for these parameters
    Rk10VerificationError
        if the exact result fails an order condition
    """
    if numeric_digits is None:
        arithmetic: Arithmetic = ExactArithmetic()
    else:
        arithmetic = NumericArithmetic(digits=numeric_digits)
    if verify is None:
        verify = arithmetic.exact and c6 is None
    logger.info(
        "Constructing %s family member (%s)",
        arithmetic.mode,
        ", ".join(f"{k}={v}" for k, v in params.as_dict().items()),
    )
    try:
        tableau = FamilyBuilder(params, arithmetic, c6=c6).tableau(name=name)
    except Rk10SingularSystemError as e:
        raise Rk10ConstructionError(e.name, e.msg) from e
    if verify:
        report = verify_order(tableau, ORDER)
        if not report.passed:
            worst = report.sorted_residuals()[0]
            raise Rk10VerificationError(
                "order conditions",
                f"constructed tableau fails {len(report.failing)} order conditions, "
                f"worst {worst[0]} with residual {worst[1]}",
            )
    return tableau


def closure_constants(
    params: FamilyParams, numeric_digits: ty.Optional[int] = None
) -> ClosureConstants:
    """The fifteen closure constants fitted during the closing sweep"""
    arithmetic: Arithmetic = (
        ExactArithmetic()
        if numeric_digits is None
        else NumericArithmetic(digits=numeric_digits)
    )
    builder = FamilyBuilder(params, arithmetic)
    _, draft = builder.closing(arithmetic.zero())
    return draft.freeze()


@lru_cache(maxsize=None)
def reference_method(numeric_digits: ty.Optional[int] = None) -> ButcherTableau:
    """The low-magnitude reference member, built once per precision"""
    return construct(
        reference_params(), numeric_digits=numeric_digits, name="reference"
    )


def weights_of(params: FamilyParams) -> ty.List[ty.Any]:
    """The 15 weights the family assigns for these parameters"""
    return FamilyBuilder(params).b[1:]


def nodes_of(params: FamilyParams) -> ty.List[ty.Any]:
    return FamilyBuilder(params).c[1:]


__all__ = [
    "FamilyBuilder",
    "construct",
    "closure_constants",
    "reference_method",
    "script_d",
    "weights_of",
    "nodes_of",
]
