"""Zeros of the stability polynomial and the Szego curve |z exp(1 - z)| = 1 they
approach after scaling"""
from __future__ import annotations
import typing as ty
import logging
import mpmath
from rk10.core.exceptions import Rk10ConvergenceError, Rk10UsageError
from rk10.core.field import DEFAULT_DIGITS
from .stability import StabilityPolynomial

logger = logging.getLogger("rk10")

# extra working digits of the simultaneous iteration
ZERO_GUARD_DIGITS = 20
MAX_ITERATIONS = 500
SZEGO_WARNING_DISTANCE = 1


def _trimmed(coeffs: ty.Sequence[mpmath.mpf]) -> ty.List[mpmath.mpf]:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _value_and_derivative(
    descending: ty.Sequence[ty.Any], z: mpmath.mpc
) -> ty.Tuple[mpmath.mpc, mpmath.mpc]:
    value, derivative = descending[0], mpmath.mpc(0)
    for a in descending[1:]:
        derivative = derivative * z + value
        value = value * z + a
    return value, derivative


def _relative_residual(descending: ty.Sequence[ty.Any], z: mpmath.mpc) -> mpmath.mpf:
    value, _ = _value_and_derivative(descending, z)
    scale = mpmath.mpf(0)
    for a in descending:
        scale = scale * abs(z) + abs(a)
    return abs(value) / scale


def polynomial_zeros(
    poly: ty.Union[StabilityPolynomial, ty.Sequence[ty.Any]],
    digits: int = DEFAULT_DIGITS,
) -> ty.List[mpmath.mpc]:
    """All complex zeros of a polynomial by Aberth-Ehrlich simultaneous iteration

    The iteration runs at ``digits`` + 20 working digits from starting points spread
    on the circle of radius |r_0 / r_n|^(1/n), updating each approximation in turn,
    and every zero is then polished with Newton steps.

    Parameters
    ----------
    poly : StabilityPolynomial or sequence
        the polynomial, or its coefficients in ascending order
    digits : int
        the zeros satisfy |P(z)| < 10^(-digits) relative to sum |r_k| |z|^k

    Returns
    -------
    list[mpc]
        the zeros sorted by real and then imaginary part

    Raises
    ------
    Rk10ConvergenceError
        if the residual target is not reached within the iteration cap
    """
    work = digits + ZERO_GUARD_DIGITS
    with mpmath.workdps(work):
        if isinstance(poly, StabilityPolynomial):
            ascending = poly.mpf_coeffs(work)
        else:
            ascending = [
                c.to_mpf(work) if hasattr(c, "to_mpf") else mpmath.mpf(c) for c in poly
            ]
        ascending = _trimmed(ascending)
        n = len(ascending) - 1
        if n < 1:
            raise Rk10UsageError("polynomial zeros need degree at least 1")
        leading = ascending[-1]
        descending = [a / leading for a in reversed(ascending)]
        if n == 1:
            return [mpmath.mpc(-descending[1])]
        if ascending[0]:
            radius = abs(ascending[0] / leading) ** (mpmath.mpf(1) / n)
        else:
            radius = mpmath.mpf(1)
        offset = mpmath.pi / (2 * n)
        zeros = [
            radius * mpmath.expjpi(mpmath.mpf(2 * k) / n) * mpmath.expj(offset)
            for k in range(n)
        ]
        change_tol = mpmath.mpf(10) ** (-work + 5)
        iteration = 0
        for iteration in range(1, MAX_ITERATIONS + 1):
            change = mpmath.mpf(0)
            for k in range(n):
                value, derivative = _value_and_derivative(descending, zeros[k])
                if not value:
                    continue
                ratio = value / derivative if derivative else mpmath.mpc(1)
                repulsion = mpmath.fsum(
                    1 / (zeros[k] - zeros[j]) for j in range(n) if j != k
                )
                delta = ratio / (1 - ratio * repulsion)
                zeros[k] -= delta
                change = max(change, abs(delta) / max(1, abs(zeros[k])))
            if change < change_tol:
                break
        logger.debug("Aberth iteration settled after %d sweeps", iteration)
        for k in range(n):
            for _ in range(3):
                value, derivative = _value_and_derivative(descending, zeros[k])
                if not value or not derivative:
                    break
                zeros[k] -= value / derivative
        worst = max(_relative_residual(descending, z) for z in zeros)
        if worst > mpmath.mpf(10) ** (-digits):
            raise Rk10ConvergenceError(
                f"polynomial zeros not converged after {iteration} sweeps, "
                f"worst relative residual {mpmath.nstr(worst, 5)}",
                residual=worst,
            )
        return sorted(zeros, key=lambda z: (z.real, z.imag))


def szego_radius(cos_phi: mpmath.mpf) -> mpmath.mpf:
    """The modulus r <= 1 with r exp(1 - r cos(phi)) = 1, from the principal branch
    of the Lambert W function"""
    x = -cos_phi / mpmath.e
    if not x:
        return 1 / mpmath.e
    return mpmath.re(mpmath.lambertw(x)) / x / mpmath.e


def szego_curve(
    resolution: int, factor: ty.Any = 1, digits: int = 30
) -> ty.List[mpmath.mpc]:
    """Points of |z exp(1 - z)| = 1 inside the unit disc at ``resolution`` equally
    spaced arguments from 0, scaled by ``factor``. The curve is closed, symmetric
    under conjugation and passes through z = 1."""
    if resolution < 1:
        raise Rk10UsageError(f"Resolution must be positive, got {resolution}")
    with mpmath.workdps(digits):
        points = []
        for k in range(resolution):
            phi = 2 * mpmath.pi * k / resolution
            radius = mpmath.mpf(1) if k == 0 else szego_radius(mpmath.cos(phi))
            points.append(factor * radius * mpmath.expj(phi))
    return points


def szego_distances(
    zeros: ty.Sequence[ty.Any], factor: ty.Any = 10, digits: int = 30
) -> ty.List[mpmath.mpf]:
    """|log |w exp(1 - w)|| for each w = z / factor, zero exactly on the curve"""
    distances = []
    with mpmath.workdps(digits):
        for z in zeros:
            w = mpmath.mpc(z) / factor
            distances.append(abs(mpmath.log(abs(w)) + 1 - w.real))
    if distances and max(distances) > SZEGO_WARNING_DISTANCE:
        logger.warning(
            "Scaled zeros lie far from the Szego curve (largest log distance %s)",
            mpmath.nstr(max(distances), 5),
        )
    return distances
