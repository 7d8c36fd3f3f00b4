from .error import (
    ErrorCoefficientReport,
    error_coefficients,
    error_coefficient_range,
)
from .stability import (
    StabilityPolynomial,
    RegionSamples,
    stability_polynomial,
    stability_interval,
    region_samples,
    marching_squares,
)
from .zeros import polynomial_zeros, szego_curve, szego_distances, szego_radius
from .report import (
    StabilityReport,
    stability_report,
    largest_coefficient,
    smallest_nonzero_weight,
    TABLE_ORDERS,
)

__all__ = [
    "ErrorCoefficientReport",
    "error_coefficients",
    "error_coefficient_range",
    "StabilityPolynomial",
    "RegionSamples",
    "stability_polynomial",
    "stability_interval",
    "region_samples",
    "marching_squares",
    "polynomial_zeros",
    "szego_curve",
    "szego_distances",
    "szego_radius",
    "StabilityReport",
    "stability_report",
    "largest_coefficient",
    "smallest_nonzero_weight",
    "TABLE_ORDERS",
]
