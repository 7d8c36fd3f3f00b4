"""Fixed-step explicit Runge-Kutta integration in mpmath at a chosen precision"""
from __future__ import annotations
import typing as ty
import logging
import attrs
import numpy as np
import mpmath
from rk10.core.exceptions import (
    Rk10ConvergenceError,
    Rk10StepError,
    Rk10UsageError,
)
from rk10.core.field import DEFAULT_DIGITS, GUARD_DIGITS
from rk10.core.tableau import ButcherTableau
from rk10.core.analysis import stability_polynomial
from rk10.core.utils import parallel_map
from .problems import OdeProblem, State, LINEAR_CIRCLE, NONLINEAR_CIRCLE

logger = logging.getLogger("rk10")


def _working_tableau(tableau: ButcherTableau, digits: int) -> ButcherTableau:
    if not tableau.is_explicit:
        raise Rk10StepError(
            "explicit stepping requires strictly lower-triangular A"
        )
    return tableau.to_numeric(digits)


def _step(
    tableau: ButcherTableau,
    rows: ty.Sequence[ty.Sequence[ty.Tuple[int, ty.Any]]],
    problem: OdeProblem,
    t: mpmath.mpf,
    x: State,
    h: mpmath.mpf,
) -> State:
    """One step with a numeric explicit tableau inside its precision context; the
    stages are computed in sequence"""
    slopes: ty.List[State] = []
    for i in range(tableau.s):
        stage = list(x)
        for j, a in rows[i]:
            ha = h * a
            stage = [s + ha * k for s, k in zip(stage, slopes[j])]
        slopes.append(problem.derivative(t + tableau.c[i] * h, tuple(stage)))
    result = list(x)
    for b, k in zip(tableau.b, slopes):
        if b:
            hb = h * b
            result = [r + hb * kj for r, kj in zip(result, k)]
    return tuple(result)


def rk_step(
    tableau: ButcherTableau,
    problem: OdeProblem,
    t: ty.Any,
    x: ty.Sequence[ty.Any],
    h: ty.Any,
    digits: int = DEFAULT_DIGITS,
) -> State:
    """One explicit Runge-Kutta step from (t, x) with step size h

    Parameters
    ----------
    tableau : ButcherTableau
        an explicit method; exact tableaus are converted to ``digits`` digits
    problem : OdeProblem
        supplies the right-hand side
    t, x, h
        the time, state and step size, converted to mpmath reals
    digits : int
        working precision

    Returns
    -------
    tuple of mpf
        the state at t + h

    Raises
    ------
    Rk10StepError
        if A has entries on or above the diagonal
    """
    numeric = _working_tableau(tableau, digits)
    with numeric.arithmetic.context():
        return _step(
            numeric,
            numeric.nonzero_rows(),
            problem,
            mpmath.mpf(t),
            tuple(mpmath.mpf(v) for v in x),
            mpmath.mpf(h),
        )


@attrs.define(kw_only=True)
class Trajectory:

    times: ty.List[mpmath.mpf]
    states: ty.List[State]

    @property
    def endpoint(self) -> State:
        return self.states[-1]

    def rows(self) -> ty.Iterator[ty.Tuple[mpmath.mpf, State]]:
        return iter(zip(self.times, self.states))


def integrate(
    tableau: ButcherTableau,
    problem: OdeProblem,
    t_end: ty.Any,
    n_steps: int,
    digits: int = DEFAULT_DIGITS,
) -> Trajectory:
    """n_steps equal steps from the problem's initial point to ``t_end``; the
    trajectory holds the initial point followed by every step endpoint. Step k starts
    at t0 + k h, computed afresh."""
    if n_steps < 1:
        raise Rk10UsageError(f"Need at least one step, got {n_steps}")
    numeric = _working_tableau(tableau, digits)
    rows = numeric.nonzero_rows()
    with numeric.arithmetic.context():
        t0 = problem.initial_time()
        x = problem.initial_state()
        h = (mpmath.mpf(t_end) - t0) / n_steps
        times, states = [t0], [x]
        for k in range(n_steps):
            x = _step(numeric, rows, problem, t0 + k * h, x, h)
            times.append(t0 + (k + 1) * h)
            states.append(x)
    logger.debug(
        "Integrated %s over %d steps of %s", problem.name, n_steps, mpmath.nstr(h, 10)
    )
    return Trajectory(times=times, states=states)


def _one_step_error(
    args: ty.Tuple[ButcherTableau, OdeProblem, mpmath.mpf, int]
) -> mpmath.mpf:
    tableau, problem, h, digits = args
    with mpmath.workdps(digits + GUARD_DIGITS):
        t0 = problem.initial_time()
        approx = rk_step(tableau, problem, t0, problem.initial_state(), h, digits)
        exact = problem.exact_solution(t0 + h)
        return max(abs(a - e) for a, e in zip(approx, exact))


@attrs.define(kw_only=True)
class OrderMeasurement:
    """One-step errors at h0, h0/2, ... and the least-squares slope of log(error)
    against log(h), which estimates p + 1 for an order-p method"""

    step_sizes: ty.List[mpmath.mpf]
    errors: ty.List[mpmath.mpf]
    slope: float

    @property
    def observed_order(self) -> float:
        return self.slope - 1


def measure_order(
    tableau: ButcherTableau,
    problem: OdeProblem = LINEAR_CIRCLE,
    h0: ty.Any = "0.5",
    levels: int = 6,
    digits: int = DEFAULT_DIGITS,
    jobs: int = 1,
) -> OrderMeasurement:
    """Measures the local order by step halving: the one-step error against the
    exact solution at h0 / 2^k for k = 0 .. levels

    Raises
    ------
    Rk10UsageError
        if fewer than 3 halvings are asked for or the problem has no exact solution
    Rk10ConvergenceError
        if an error falls below the working precision
    """
    if levels < 3:
        raise Rk10UsageError(f"Order measurement needs at least 3 levels, got {levels}")
    if problem.exact is None:
        raise Rk10UsageError(f"Problem '{problem.name}' has no known exact solution")
    numeric = _working_tableau(tableau, digits)
    with mpmath.workdps(digits + GUARD_DIGITS):
        first = mpmath.mpf(h0)
        step_sizes = [first / 2**k for k in range(levels + 1)]
    errors = parallel_map(
        _one_step_error, [(numeric, problem, h, digits) for h in step_sizes], jobs=jobs
    )
    floor = mpmath.mpf(10) ** (-digits + 5)
    for h, error in zip(step_sizes, errors):
        if error <= floor:
            raise Rk10ConvergenceError(
                f"one-step error at h = {mpmath.nstr(h, 6)} is below the working "
                f"precision, raise the number of digits above {digits}",
                residual=error,
            )
    log_h = np.array([float(mpmath.log(h)) for h in step_sizes])
    log_e = np.array([float(mpmath.log(e)) for e in errors])
    slope = float(np.polyfit(log_h, log_e, 1)[0])
    logger.info(
        "Measured local error slope %.3f for %s on %s",
        slope,
        tableau.name or f"{tableau.s}-stage tableau",
        problem.name,
    )
    return OrderMeasurement(step_sizes=step_sizes, errors=errors, slope=slope)


def linear_step_identity_check(
    tableau: ButcherTableau, h: ty.Any, digits: int = 50
) -> bool:
    """Whether one step on the linear circle from (1, 0) lands on R(ih), the
    stability polynomial at ih read as x + iy, to ``digits`` digits"""
    work = digits + 10
    polynomial = stability_polynomial(tableau)
    with mpmath.workdps(work + GUARD_DIGITS):
        h = mpmath.mpf(h)
        x, y = rk_step(tableau, LINEAR_CIRCLE, 0, (1, 0), h, digits=work)
        expected = polynomial(mpmath.mpc(0, h), digits=work)
        difference = abs(mpmath.mpc(x, y) - expected)
        return bool(difference <= mpmath.mpf(10) ** (-digits) * max(1, abs(expected)))


@attrs.define(kw_only=True)
class OneStepRow:
    """The state after one step h = pi/2 from (1, 0) on both circle problems"""

    linear: State
    nonlinear: State

    def as_dict(self, digits: int = 12) -> ty.Dict[str, str]:
        return {
            "linear x": mpmath.nstr(self.linear[0], digits),
            "linear y": mpmath.nstr(self.linear[1], digits),
            "nonlinear x": mpmath.nstr(self.nonlinear[0], digits),
            "nonlinear y": mpmath.nstr(self.nonlinear[1], digits),
        }


def one_step_table_row(tableau: ButcherTableau, digits: int = 60) -> OneStepRow:
    with mpmath.workdps(digits + GUARD_DIGITS):
        h = mpmath.pi / 2
        linear = rk_step(tableau, LINEAR_CIRCLE, 0, (1, 0), h, digits)
        nonlinear = rk_step(tableau, NONLINEAR_CIRCLE, 0, (1, 0), h, digits)
    return OneStepRow(linear=linear, nonlinear=nonlinear)
