from __future__ import annotations
import typing as ty
import logging
import attrs
import mpmath
from rk10.core.field import DEFAULT_DIGITS
from rk10.core.tableau import ButcherTableau
from rk10.core.utils import short
from .error import error_coefficient_range
from .stability import StabilityPolynomial, stability_polynomial, stability_interval

logger = logging.getLogger("rk10")

TABLE_ORDERS = (11, 12, 13)


@attrs.define(kw_only=True)
class StabilityReport:
    """The comparison metrics of an order-10 method: stage count, T_11..T_13 (scaled
    by 10^6 when printed), max |a_ij|, the smallest nonzero weight and z_R"""

    name: str
    stages: int
    error_coefficients: ty.Dict[int, mpmath.mpf]
    max_abs_a: mpmath.mpf
    min_nonzero_b: mpmath.mpf
    z_R: ty.Optional[mpmath.mpf]
    polynomial: StabilityPolynomial

    def table_row(self, digits: int = 6) -> ty.Dict[str, ty.Any]:
        """Columns in the order s, 10^6 T_p..., max|a|, min b, z_R, as strings"""
        row: ty.Dict[str, ty.Any] = {"method": self.name, "s": self.stages}
        for p, value in sorted(self.error_coefficients.items()):
            row[f"1e6*T{p}"] = short(value * 10**6, digits)
        row["max|a|"] = short(self.max_abs_a, digits)
        row["min b"] = short(self.min_nonzero_b, digits)
        row["z_R"] = None if self.z_R is None else short(self.z_R, digits)
        return row


def largest_coefficient(tableau: ButcherTableau, digits: int = 30) -> mpmath.mpf:
    with mpmath.workdps(digits):
        return max(
            abs(tableau.arithmetic.to_mpf(a, digits)) for row in tableau.A for a in row
        )


def smallest_nonzero_weight(tableau: ButcherTableau, digits: int = 30) -> mpmath.mpf:
    """The smallest nonzero b_j, with its sign"""
    with mpmath.workdps(digits):
        weights = [
            tableau.arithmetic.to_mpf(b, digits)
            for b in tableau.b
            if not tableau.arithmetic.is_zero(b)
        ]
    return min(weights)


def stability_report(
    tableau: ButcherTableau,
    digits: int = DEFAULT_DIGITS,
    orders: ty.Sequence[int] = TABLE_ORDERS,
    jobs: int = 1,
) -> StabilityReport:
    polynomial = stability_polynomial(tableau)
    reports = error_coefficient_range(tableau, orders, digits=digits, jobs=jobs)
    return StabilityReport(
        name=tableau.name,
        stages=tableau.s,
        error_coefficients={p: r.Tp for p, r in reports.items()},
        max_abs_a=largest_coefficient(tableau),
        min_nonzero_b=smallest_nonzero_weight(tableau),
        z_R=stability_interval(polynomial, digits=digits),
        polynomial=polynomial,
    )
