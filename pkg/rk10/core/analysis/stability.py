"""The stability polynomial of an explicit tableau, its real interval of absolute
stability and samples of the stability region"""
from __future__ import annotations
import typing as ty
import logging
from fractions import Fraction
from math import factorial
import attrs
import numpy as np
import mpmath
from rk10.core.exceptions import Rk10ConvergenceError, Rk10UsageError
from rk10.core.field import Arithmetic, ExactArithmetic, DEFAULT_DIGITS
from rk10.core.tableau import ButcherTableau, evaluator_for, vector_dot

logger = logging.getLogger("rk10")

SCAN_STEP = Fraction(1, 64)
SCAN_REFINEMENT = Fraction(1, 16)
SCAN_REFINEMENTS = 2
SCAN_LIMIT = -64


@attrs.frozen(kw_only=True)
class StabilityPolynomial:
    """R(z) = r_0 + r_1 z + ... + r_s z^s with r_0 = 1 and r_(n+1) = b A^n 1

    The coefficients are exact field elements for exact tableaus and mpmath reals
    otherwise.
    """

    coeffs: ty.Tuple[ty.Any, ...] = attrs.field(converter=tuple)
    arithmetic: Arithmetic = attrs.field(factory=ExactArithmetic, eq=False)
    name: str = attrs.field(default="", eq=False)

    @coeffs.validator
    def coeffs_validator(self, _: attrs.Attribute, coeffs: ty.Tuple[ty.Any, ...]):
        if not coeffs:
            raise Rk10UsageError("A stability polynomial needs at least r_0")

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient"""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return 0

    def mpf_coeffs(self, digits: int = DEFAULT_DIGITS) -> ty.List[mpmath.mpf]:
        with mpmath.workdps(digits + 10):
            return [_to_mpf(r, digits) for r in self.coeffs]

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(r) for r in self.mpf_coeffs(20)], dtype=float)

    def __call__(self, z: ty.Any, digits: int = DEFAULT_DIGITS) -> ty.Any:
        """Horner evaluation at a real or complex point in mpmath"""
        with mpmath.workdps(digits + 10):
            return mpmath.polyval(self.mpf_coeffs(digits)[::-1], z)

    def taylor_order(self) -> int:
        """Largest k with r_j = 1/j! for every j <= k"""
        k = 0
        with self.arithmetic.context():
            for j, r in enumerate(self.coeffs):
                expected = self.arithmetic.coerce(Fraction(1, factorial(j)))
                if not self.arithmetic.is_zero(r - expected):
                    break
                k = j
        return k

    def __str__(self) -> str:
        return " + ".join(
            f"({r}) z^{k}" if k else f"({r})"
            for k, r in enumerate(self.coeffs)
            if r
        )


def _to_mpf(value: ty.Any, digits: int) -> mpmath.mpf:
    if hasattr(value, "to_mpf"):
        return value.to_mpf(digits)
    return mpmath.mpf(value)


def stability_polynomial(tableau: ButcherTableau) -> StabilityPolynomial:
    """The stability function of an explicit tableau

    Raises
    ------
    Rk10UsageError
        if the tableau is not explicit, when R(z) is not a polynomial
    """
    if not tableau.is_explicit:
        raise Rk10UsageError(
            "stability polynomial requires a strictly lower-triangular A"
        )
    evaluator = evaluator_for(tableau)
    coeffs = [tableau.one()]
    vector = tableau.ones()
    with tableau.arithmetic.context():
        for _ in range(tableau.s):
            coeffs.append(vector_dot(tableau.b, vector, tableau.zero()))
            vector = evaluator.matvec(vector)
    return StabilityPolynomial(
        coeffs=coeffs, arithmetic=tableau.arithmetic, name=tableau.name
    )


def _exceeds(poly_coeffs: ty.Sequence[mpmath.mpf], z: mpmath.mpf) -> bool:
    return bool(abs(mpmath.polyval(poly_coeffs, z)) > 1)


def stability_interval(
    tableau_or_poly: ty.Union[ButcherTableau, StabilityPolynomial],
    digits: int = DEFAULT_DIGITS,
) -> mpmath.mpf:
    """Left end z_R of the connected component of {z real : |R(z)| <= 1} holding 0

    The negative axis is scanned with step 1/64 for the first point where |R| > 1,
    the bracket is rescanned twice with a step 16 times finer and the crossing of
    |R(z)| = 1 is then bisected to 10^(-digits+5).

    Raises
    ------
    Rk10ConvergenceError
        if |R| stays below 1 over the whole scan range [-64, 0]
    """
    poly = (
        tableau_or_poly
        if isinstance(tableau_or_poly, StabilityPolynomial)
        else stability_polynomial(tableau_or_poly)
    )
    with mpmath.workdps(digits + 10):
        descending = poly.mpf_coeffs(digits)[::-1]
        step = mpmath.mpf(SCAN_STEP.numerator) / SCAN_STEP.denominator
        stable = mpmath.mpf(0)
        unstable = None
        z = -step
        while z >= SCAN_LIMIT:
            if _exceeds(descending, z):
                unstable = z
                break
            stable = z
            z -= step
        if unstable is None:
            raise Rk10ConvergenceError(
                f"interval extends beyond scan range [{SCAN_LIMIT}, 0]"
            )
        for _ in range(SCAN_REFINEMENTS):
            step = step * SCAN_REFINEMENT.numerator / SCAN_REFINEMENT.denominator
            z = stable - step
            while z > unstable:
                if _exceeds(descending, z):
                    break
                stable = z
                z -= step
            unstable = z
        logger.debug(
            "Stability boundary bracketed in [%s, %s]",
            mpmath.nstr(unstable, 12),
            mpmath.nstr(stable, 12),
        )

        def excess(x: mpmath.mpf) -> mpmath.mpf:
            return abs(mpmath.polyval(descending, x)) - 1

        # bisection stalls on a bracket end that is already a root
        on_boundary = [e for e in (stable, unstable) if excess(e) == 0]
        if on_boundary:
            root = on_boundary[0]
        else:
            tolerance = mpmath.mpf(10) ** (-digits + 5)
            try:
                root = mpmath.findroot(
                    excess,
                    (unstable, stable),
                    solver="bisect",
                    tol=tolerance,
                    maxsteps=4 * digits + 100,
                )
            except ValueError as e:
                raise Rk10ConvergenceError(
                    f"bisection of |R(z)| = 1 failed: {e}"
                ) from e
    logger.info(
        "Interval of absolute stability of %s: [%s, 0]",
        poly.name or "tableau",
        mpmath.nstr(root, 10),
    )
    return root


Point = ty.Tuple[float, float]
Segment = ty.Tuple[Point, Point]


@attrs.define(kw_only=True)
class RegionSamples:
    """|R(z)| sampled on a rectangular grid and the segments of |R(z)| = 1 traced
    through it by marching squares

    Parameters
    ----------
    x : ndarray
        the real parts of the grid columns
    y : ndarray
        the imaginary parts of the grid rows
    modulus : ndarray
        |R(x + iy)| with shape (len(y), len(x))
    segments : list
        boundary pieces as pairs of (re, im) points
    """

    x: np.ndarray
    y: np.ndarray
    modulus: np.ndarray
    segments: ty.List[Segment] = attrs.field(factory=list)

    def grid_lines(self) -> ty.Iterator[str]:
        for i, yi in enumerate(self.y):
            for j, xj in enumerate(self.x):
                yield f"{xj:.10g} {yi:.10g} {self.modulus[i, j]:.10g}"

    def boundary_lines(self) -> ty.Iterator[str]:
        """Segments one per block, blank-line separated"""
        for (x0, y0), (x1, y1) in self.segments:
            yield f"{x0:.10g} {y0:.10g}"
            yield f"{x1:.10g} {y1:.10g}"
            yield ""

    def real_axis_crossings(self) -> ty.List[float]:
        """Boundary points lying on the real axis, when y = 0 is a grid row"""
        tolerance = 1e-12 * max(1.0, float(np.ptp(self.y)))
        crossings = set()
        for segment in self.segments:
            for px, py in segment:
                if abs(py) <= tolerance:
                    crossings.add(px)
        return sorted(crossings)


def region_samples(
    tableau_or_poly: ty.Union[ButcherTableau, StabilityPolynomial],
    window: ty.Tuple[float, float, float, float],
    resolution: int,
) -> RegionSamples:
    """Samples |R| over [xmin, xmax] x [ymin, ymax] with ``resolution`` points along
    each axis and traces the level set |R| = 1

    Raises
    ------
    Rk10UsageError
        if the resolution is not positive or the window is inverted
    """
    if resolution < 1:
        raise Rk10UsageError(f"Resolution must be positive, got {resolution}")
    xmin, xmax, ymin, ymax = (float(w) for w in window)
    if xmin > xmax or ymin > ymax:
        raise Rk10UsageError(f"Inverted window {window}")
    poly = (
        tableau_or_poly
        if isinstance(tableau_or_poly, StabilityPolynomial)
        else stability_polynomial(tableau_or_poly)
    )
    x = np.linspace(xmin, xmax, resolution)
    y = np.linspace(ymin, ymax, resolution)
    xx, yy = np.meshgrid(x, y)
    values = np.polynomial.polynomial.polyval(xx + 1j * yy, poly.float_coeffs())
    modulus = np.abs(values)
    samples = RegionSamples(x=x, y=y, modulus=modulus)
    samples.segments = marching_squares(x, y, modulus - 1.0)
    logger.debug(
        "Sampled |R| on a %dx%d grid, %d boundary segments",
        resolution,
        resolution,
        len(samples.segments),
    )
    return samples


# edges of a grid cell as pairs of (row offset, column offset) corners
_EDGES = (((0, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 0), (1, 1)), ((0, 0), (1, 0)))


def marching_squares(x: np.ndarray, y: np.ndarray, f: np.ndarray) -> ty.List[Segment]:
    """Segments of the zero level of ``f`` sampled at (x[j], y[i]), with f <= 0
    counted as inside. Saddle cells are resolved by the value at the cell centre."""
    if len(x) < 2 or len(y) < 2:
        return []
    inside = f <= 0
    corners = (
        inside[:-1, :-1].astype(int)
        + inside[:-1, 1:]
        + inside[1:, :-1]
        + inside[1:, 1:]
    )
    segments: ty.List[Segment] = []
    for i, j in zip(*np.nonzero((corners > 0) & (corners < 4))):
        points = []
        for (r0, c0), (r1, c1) in _EDGES:
            fa, fb = f[i + r0, j + c0], f[i + r1, j + c1]
            if (fa <= 0) == (fb <= 0):
                continue
            t = fa / (fa - fb)
            px = x[j + c0] + t * (x[j + c1] - x[j + c0])
            py = y[i + r0] + t * (y[i + r1] - y[i + r0])
            points.append((float(px), float(py)))
        if len(points) == 2:
            segments.append((points[0], points[1]))
        elif len(points) == 4:
            centre = f[i : i + 2, j : j + 2].mean()
            bottom, right, top, left = points
            if (centre <= 0) == bool(inside[i, j]):
                segments.extend([(bottom, right), (top, left)])
            else:
                segments.extend([(bottom, left), (top, right)])
    return segments
