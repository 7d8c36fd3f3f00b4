"""Diagnostics around the family: the renormalised closing coefficients, independent
numeric re-derivations of the printed constants and a labelled listing of the
constants block"""
from __future__ import annotations
import typing as ty
import logging
from fractions import Fraction
import attrs
import mpmath
from rk10.core.field import (
    FieldElement,
    NumericArithmetic,
    identify,
    solve_linear,
)
from rk10.core.exceptions import (
    Rk10ConvergenceError,
    Rk10SingularSystemError,
)
from rk10.core.tableau import ButcherTableau
from rk10.core.duality import would_be_dual
from .constants import (
    C6Constants,
    C6_NAMES,
    GAMMA_NAMES,
    PIVOT_ROW,
    ConstantsRow,
    constants_block,
    closing_pivot,
    printed_c6_constants,
    c6_of,
)
from .construction import (
    FamilyBuilder,
    ClosureConstantsDraft,
    STAGES,
    FIRST_CLOSING,
    LAST_CLOSING,
    closure_constants,
    reference_method,
    script_d,
)
from .lobatto import lobatto6
from .params import FamilyParams, reference_params

logger = logging.getLogger("rk10")

DEFAULT_C6_SAMPLES = (
    (Fraction(2, 5), Fraction(4, 7)),
    (Fraction(3, 8), Fraction(4, 7)),
    (Fraction(2, 5), Fraction(3, 5)),
    (Fraction(5, 12), Fraction(5, 9)),
    (Fraction(1, 3), Fraction(1, 2)),
    (Fraction(3, 7), Fraction(7, 12)),
    (Fraction(4, 9), Fraction(2, 3)),
    (Fraction(3, 10), Fraction(5, 8)),
)


@attrs.define(kw_only=True)
class RenormalizedClosing:
    """A_ij = b_i a_ij / b_j on the stages with nonzero weights from stage 7 on, and
    the rows Delta_nj = D_n(c_j) - sum_i (1 - c_i^n) A_ij, n = 0..4. Entries that
    would divide by a zero weight are None."""

    coefficients: ty.Dict[ty.Tuple[int, int], ty.Any]
    delta: ty.Dict[ty.Tuple[int, int], ty.Optional[ty.Any]]


def renormalized_closing(tableau: ButcherTableau) -> RenormalizedClosing:
    arith = tableau.arithmetic
    coefficients = {
        (i, j): value
        for (i, j), value in would_be_dual(tableau).items()
        if j >= FIRST_CLOSING
    }
    delta: ty.Dict[ty.Tuple[int, int], ty.Optional[ty.Any]] = {}
    with arith.context():
        one = tableau.one()
        for j in range(FIRST_CLOSING, tableau.s + 1):
            for n in range(5):
                if arith.is_zero(tableau.b[j - 1]):
                    delta[n, j] = None
                    continue
                cj = tableau.c[j - 1]
                total = script_d(n, cj, one)
                for i in range(j + 1, tableau.s + 1):
                    if (i, j) in coefficients:
                        ci = tableau.c[i - 1]
                        total = total - (one - ci**n) * coefficients[i, j]
                delta[n, j] = total
    return RenormalizedClosing(coefficients=coefficients, delta=delta)


def _column11_residuals(
    pivot: mpmath.mpf, params: FamilyParams, digits: int
) -> ty.Tuple[mpmath.mpf, mpmath.mpf]:
    """Residuals of the two surplus equations at closing column 11 when A_14,13 is
    set to ``pivot``; both vanish at the true value"""
    arith = NumericArithmetic(digits=digits)
    builder = FamilyBuilder(params, arith, pivot=pivot)
    a = builder.new_grid()
    d: ty.Dict = {}
    dA: ty.Dict = {}
    g = ClosureConstantsDraft()
    with arith.context():
        b = builder.b
        a[14][13] = b[13] * builder.pivot / b[14]
        builder._d_entries(a, d, dA, 14)
        builder._d_entries(a, d, dA, 13)
        g.gamma20, g.gamma21 = builder._fit(
            (13, 14), 1, lambda j: d[2, j], d, dA, False, "d2"
        )
        g.gammaA0, g.gammaA1 = builder._fit(
            (13, 14), 1, lambda j: dA[0, j], d, dA, False, "d1 A"
        )
        rows, rhs = builder.closing_system(12, d, g)
        for k, value in enumerate(solve_linear(rows, rhs, arith)):
            a[13 + k][12] = value
        builder._d_entries(a, d, dA, 12)
        g.gamma30, g.gamma31, g.gamma32 = builder._fit(
            (12, 13, 14), 2, lambda j: d[3, j], d, dA, False, "d3"
        )
        g.gammaC0, g.gammaC1, g.gammaC2 = builder._fit(
            (12, 13, 14), 2, lambda j: dA[1, j], d, dA, False, "(d1 . c) A"
        )
        rows, rhs = builder.closing_system(11, d, g)
        unknowns = LAST_CLOSING - 11
        solution = solve_linear(rows[:unknowns], rhs[:unknowns], arith)
        residuals = [
            sum((x * y for x, y in zip(row, solution)), mpmath.mpf(0)) - r
            for row, r in zip(rows[unknowns:], rhs[unknowns:])
        ]
    return residuals[0], residuals[1]


def derive_closing_pivot(
    params: ty.Optional[FamilyParams] = None,
    digits: int = 60,
    bracket: ty.Tuple[float, float] = (-3.0, 3.0),
    steps: int = 240,
) -> FieldElement:
    """Finds A_14,13 as the common root of the two surplus column-11 residuals and
    identifies it in Q(alpha, beta)

    The first residual is scanned for sign changes over ``bracket``; each change is
    refined with ``mpmath.findroot`` and the root where the second residual is
    smallest is kept.

    Raises
    ------
    Rk10ConvergenceError
        if no common root is found or it cannot be identified
    """
    if params is None:
        params = reference_params()
    with mpmath.workdps(digits + 10):

        def first(x: mpmath.mpf) -> mpmath.mpf:
            return _column11_residuals(x, params, digits)[0]

        def second(x: mpmath.mpf) -> mpmath.mpf:
            return _column11_residuals(x, params, digits)[1]

        lo, hi = mpmath.mpf(bracket[0]), mpmath.mpf(bracket[1])
        grid = [lo + (hi - lo) * k / steps for k in range(steps + 1)]
        values = []
        for x in grid:
            try:
                values.append(first(x))
            except Rk10SingularSystemError:
                values.append(None)
        best: ty.Optional[ty.Tuple[mpmath.mpf, mpmath.mpf]] = None
        for k in range(steps):
            v0, v1 = values[k], values[k + 1]
            if v0 is None or v1 is None or mpmath.sign(v0) == mpmath.sign(v1):
                continue
            try:
                root = mpmath.findroot(first, (grid[k], grid[k + 1]), solver="anderson")
                miss = abs(second(root))
            except (ValueError, ZeroDivisionError, Rk10SingularSystemError):
                continue
            logger.debug(
                "Column-11 root candidate %s, second residual %s",
                mpmath.nstr(root, 15),
                mpmath.nstr(miss, 5),
            )
            if best is None or miss < best[1]:
                best = (root, miss)
        if best is None:
            raise Rk10ConvergenceError(
                f"no sign change of the column-11 residual on {bracket}"
            )
        root, miss = best
        if miss > mpmath.mpf(10) ** (-digits // 2):
            raise Rk10ConvergenceError(
                "column-11 residuals have no common root", residual=miss
            )
        element = identify(root, digits=digits)
    if element is None:
        raise Rk10ConvergenceError(
            f"closing pivot {mpmath.nstr(root, 20)} not recognised in Q(alpha, beta)",
            residual=miss,
        )
    logger.info("Derived closing pivot %s", element)
    return element


def _c6_condition(params: FamilyParams, c6: mpmath.mpf, digits: int) -> mpmath.mpf:
    """d4 q3 of the numeric construction with the node c6 forced"""
    arith = NumericArithmetic(digits=digits)
    builder = FamilyBuilder(params, arith, c6=c6)
    a = builder.build()
    c = builder.c
    d4 = builder.d_vector(a, 4)
    with arith.context():
        total = mpmath.mpf(0)
        for i in range(1, STAGES + 1):
            q3 = -c[i] ** 4 / 4
            for j in range(1, i):
                q3 += a[i][j] * c[j] ** 3
            total += d4[i] * q3
    return total


def solve_c6(
    c4: ty.Any, c5: ty.Any, digits: int = 50, start: ty.Any = None
) -> mpmath.mpf:
    """The node c6 making d4 q3 vanish for the given c4, c5, found numerically with
    the secant method started from ``start`` (by default the closed-form value)"""
    params = reference_params().evolve(c4=c4, c5=c5)
    with mpmath.workdps(digits + 10):
        if start is None:
            start = c6_of(params.c4, params.c5).to_mpf(digits)
        try:
            return mpmath.findroot(
                lambda x: _c6_condition(params, x, digits),
                (mpmath.mpf(start), mpmath.mpf(start) + mpmath.mpf("0.01")),
                solver="secant",
                tol=mpmath.mpf(10) ** (-digits + 10),
            )
        except ValueError as e:
            raise Rk10ConvergenceError(f"c6 search for c4={c4}, c5={c5}: {e}")


@attrs.define(kw_only=True)
class C6Derivation:
    """Ratios of the c6 constants to U'' found numerically, their identification in
    Q(alpha, beta) and the comparison with the printed rows"""

    ratios: ty.Dict[str, mpmath.mpf]
    identified: ty.Dict[str, ty.Optional[FieldElement]]
    agrees: ty.Dict[str, bool]

    @property
    def all_agree(self) -> bool:
        return all(self.agrees.values())

    def constants(self, scale: ty.Any) -> C6Constants:
        """The constants with U'' set to ``scale``"""
        return C6Constants(
            **{n: scale * self.identified[n] for n in C6_NAMES}  # type: ignore
        )


def derive_c6_constants(
    samples: ty.Sequence[ty.Tuple[ty.Any, ty.Any]] = DEFAULT_C6_SAMPLES,
    digits: int = 50,
) -> C6Derivation:
    """Recovers (U, U', U'', V, V', V'') up to scale from numerically solved c6 values

    For each sample (c4, c5) the condition d4 q3 = 0 is solved for c6, which makes
    c6 (3U + 14U's + 2U''(c4^2+c5^2) + 7p(V + 20V's + 60V''p)) - (Us + 14U'p + U''ps)
    vanish (s = c4 + c5, p = c4 c5). With U'' = 1 this is a linear system for the
    other five ratios, solved over all samples. Each ratio agrees when it matches
    the printed row to within 10^(5 - digits/2); it is identified in Q(alpha, beta)
    by an integer relation, or else taken as the printed value it agrees with.
    """
    if len(samples) < 5:
        raise Rk10SingularSystemError(
            "c6 constants fit", f"need at least 5 samples, got {len(samples)}"
        )
    arith = NumericArithmetic(digits=digits)
    rows, rhs = [], []
    with arith.context():
        for c4, c5 in samples:
            c6 = solve_c6(c4, c5, digits=digits)
            c4_, c5_ = arith.coerce(c4), arith.coerce(c5)
            s, p = c4_ + c5_, c4_ * c5_
            logger.debug("c6(%s, %s) = %s", c4, c5, mpmath.nstr(c6, 20))
            # unknowns U, U', V, V', V'' with U'' = 1
            rows.append(
                [
                    3 * c6 - s,
                    14 * c6 * s - 14 * p,
                    7 * p * c6,
                    140 * p * s * c6,
                    420 * p * p * c6,
                ]
            )
            rhs.append(p * s - 2 * c6 * (c4_**2 + c5_**2))
        solution = solve_linear(rows, rhs, arith, name="c6 constants fit")
    ratios = dict(zip(("U", "U1", "V", "V1", "V2"), solution))
    ratios["U2"] = mpmath.mpf(1)
    printed = printed_c6_constants()
    identified: ty.Dict[str, ty.Optional[FieldElement]] = {}
    agrees = {}
    with mpmath.workdps(digits + 10):
        # accuracy reached by the fitted ratios
        tolerance = mpmath.mpf(10) ** (-(digits // 2) + 5)
        for name in C6_NAMES:
            expected = getattr(printed, name) / printed.U2
            miss = abs(ratios[name] - expected.to_mpf(digits))
            agrees[name] = bool(miss <= tolerance * max(1, abs(ratios[name])))
            element = identify(ratios[name], digits=digits)
            if element is None and agrees[name]:
                element = expected
            identified[name] = element
            if not agrees[name]:
                logger.warning(
                    "Derived c6 constant %s/U2 = %s differs from the printed row by %s",
                    name,
                    mpmath.nstr(ratios[name], 20),
                    mpmath.nstr(miss, 5),
                )
            elif element != expected:
                logger.warning(
                    "c6 constant %s/U2 identified as %s, not the printed %s",
                    name,
                    element,
                    expected,
                )
    return C6Derivation(ratios=ratios, identified=identified, agrees=agrees)


@attrs.define(kw_only=True)
class LabelledRow:

    row: ConstantsRow
    label: ty.Optional[str]

    def as_dict(self) -> ty.Dict[str, ty.Any]:
        return {
            "group": self.row.group,
            "index": self.row.index,
            "integers": list(self.row.integers),
            "value": str(self.row.value),
            "label": self.label,
        }


def constants_block_report(
    tableau: ty.Optional[ButcherTableau] = None,
    params: ty.Optional[FamilyParams] = None,
) -> ty.List[LabelledRow]:
    """Every decoded row of the constants block with the name of the quantity it
    equals, or None

    The closing group is matched against 1 - theta for the closing nodes, the pivot
    A_14,13 and the renormalised coefficients A_ij of ``tableau`` (which defaults to
    the exact reference member); the second group against closure constants computed
    afresh; the last group against the c6 constants in the order U, U', U'', V, V',
    V''.
    """
    if params is None:
        params = reference_params()
    if tableau is None:
        tableau = reference_method()
    candidates: ty.Dict[str, FieldElement] = {}
    lobatto = lobatto6()
    for k in range(1, 7):
        candidates[f"1 - theta{k}"] = 1 - lobatto.node(k)
    candidates["A[14,13]"] = closing_pivot()
    for (i, j), value in renormalized_closing(tableau).coefficients.items():
        candidates.setdefault(f"A[{i},{j}]", value)
    gammas = closure_constants(params).as_dict()
    groups = constants_block()
    report: ty.List[LabelledRow] = []
    for row in groups[0]:
        label = None
        if row.index == PIVOT_ROW:
            label = "A[14,13]"
        else:
            label = next(
                (name for name, value in candidates.items() if value == row.value),
                None,
            )
        report.append(LabelledRow(row=row, label=label))
    for name, row in zip(GAMMA_NAMES, groups[1]):
        report.append(
            LabelledRow(row=row, label=name if gammas[name] == row.value else None)
        )
    c6_ok = _c6_rows_reproduce_reference()
    for name, row in zip(C6_NAMES, groups[2]):
        report.append(LabelledRow(row=row, label=name if c6_ok else None))
    unmatched = [e for e in report if e.label is None]
    for entry in unmatched:
        logger.debug(
            "Constants row %d.%d (%s) matches nothing computed",
            entry.row.group,
            entry.row.index,
            entry.row.value,
        )
    if unmatched:
        logger.warning(
            "%d of %d constants rows match no computed quantity",
            len(unmatched),
            len(report),
        )
    return report


def _c6_rows_reproduce_reference() -> bool:
    """Whether the last group, read as U, U', U'', V, V', V'', gives the reference
    member's c6 through the closed form"""
    params = reference_params()
    value = c6_of(params.c4, params.c5)
    with mpmath.workdps(40):
        return bool(
            abs(value.to_mpf(30) - mpmath.mpf("0.778740761536291800442363524550"))
            < mpmath.mpf(10) ** -28
        )
