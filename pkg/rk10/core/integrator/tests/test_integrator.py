from fractions import Fraction
import mpmath
import pytest
from rk10.common import classic_rk4, euler, heun
from rk10.core.exceptions import Rk10FormatError, Rk10StepError, Rk10UsageError
from rk10.core.tableau import ButcherTableau
from rk10.core.integrator import (
    BUILTIN_PROBLEMS,
    LINEAR_CIRCLE,
    NONLINEAR_CIRCLE,
    ExpressionProblem,
    evaluate_constant,
    integrate,
    linear_step_identity_check,
    measure_order,
    one_step_table_row,
    parse_expression,
    rk_step,
)


@pytest.mark.parametrize(
    "text,value",
    [
        ("1 + 2 * 3", 7),
        ("(1 + 2) * 3", 9),
        ("2^3^2", 512),
        ("2**3", 8),
        ("-2^2", -4),
        ("7 / 2 - 1", 2.5),
        ("+3 - -1", 4),
    ],
)
def test_expression_values(text, value):
    assert parse_expression(text).evaluate({}) == value


def test_expression_names():
    expression = parse_expression("-y * t + sin_x")
    assert expression.names() == {"y", "t", "sin_x"}
    assert expression.evaluate({"y": 2, "t": 3, "sin_x": 1}) == -5


def test_expression_constants():
    with mpmath.workdps(40):
        assert abs(evaluate_constant("pi/2", digits=40) - mpmath.pi / 2) < 1e-38
    assert parse_expression("e").evaluate({}) == +mpmath.e


@pytest.mark.parametrize("text", ["", "1 +", "(1", "1 2", "2 $ 3", ")"])
def test_malformed_expressions(text):
    with pytest.raises(Rk10FormatError):
        parse_expression(text)


def test_division_by_zero_in_expression():
    with pytest.raises(Rk10UsageError, match="division by zero"):
        parse_expression("1 / (x - x)").evaluate({"x": 1})


def test_expression_problem():
    problem = ExpressionProblem.parse(
        ["x' = -y", "y' = x"], {"x": "1", "y": 0}, name="rotation"
    )
    assert problem.variables == ("x", "y")
    assert problem.dimension == 2
    assert problem.derivative(0, (mpmath.mpf(1), mpmath.mpf(2))) == (-2, 1)
    assert problem.initial_state() == (1, 0)


def test_expression_problem_errors():
    with pytest.raises(Rk10FormatError, match="is not of the form"):
        ExpressionProblem.parse(["x = -y"], {"x": 1})
    with pytest.raises(Rk10UsageError, match="no initial value"):
        ExpressionProblem.parse(["x' = -x"], {})
    with pytest.raises(Rk10UsageError, match="unknown names"):
        ExpressionProblem.parse(["x' = -z"], {"x": 1})
    with pytest.raises(Rk10UsageError, match="repeated variable"):
        ExpressionProblem.parse(["x' = 1", "x' = 2"], {"x": 1})


def test_builtin_problems():
    assert set(BUILTIN_PROBLEMS) == {"linear-circle", "nonlinear-circle"}
    with mpmath.workdps(30):
        assert NONLINEAR_CIRCLE.derivative(0, (mpmath.mpf(2), mpmath.mpf(0))) == (
            0,
            mpmath.mpf("0.5"),
        )


def test_rk4_single_step():
    x, y = rk_step(classic_rk4(), LINEAR_CIRCLE, 0, (1, 0), "0.5", digits=30)
    # R(ih) for R(z) = 1 + z + z^2/2 + z^3/6 + z^4/24
    with mpmath.workdps(30):
        h = mpmath.mpf("0.5")
        assert abs(x - (1 - h**2 / 2 + h**4 / 24)) < 1e-25
        assert abs(y - (h - h**3 / 6)) < 1e-25


def test_implicit_tableau_refused():
    implicit = ButcherTableau.from_rows([[Fraction(1, 2)]], [1])
    with pytest.raises(Rk10StepError, match="strictly lower-triangular"):
        rk_step(implicit, LINEAR_CIRCLE, 0, (1, 0), "0.1")


def test_integrate_full_circle():
    trajectory = integrate(classic_rk4(), LINEAR_CIRCLE, 2 * mpmath.pi, 100, digits=30)
    assert len(trajectory.times) == 101
    assert len(trajectory.states) == 101
    x, y = trajectory.endpoint
    assert abs(x - 1) < 1e-5
    assert abs(y) < 1e-5
    assert abs(trajectory.times[-1] - 2 * mpmath.pi) < 1e-25


def test_integrate_expression_problem():
    problem = ExpressionProblem.parse(["u' = u"], {"u": 1})
    trajectory = integrate(classic_rk4(), problem, 1, 20, digits=30)
    (u,) = trajectory.endpoint
    assert abs(u - mpmath.e) < 1e-6


def test_integrate_needs_a_step():
    with pytest.raises(Rk10UsageError, match="at least one step"):
        integrate(euler(), LINEAR_CIRCLE, 1, 0)


@pytest.mark.parametrize(
    "method,low,high", [(euler, 1.8, 2.2), (heun, 2.8, 3.2), (classic_rk4, 4.7, 5.3)]
)
def test_measured_slope(method, low, high):
    measurement = measure_order(method(), h0="0.25", levels=6, digits=40)
    assert low <= measurement.slope <= high
    assert len(measurement.errors) == 7
    assert measurement.observed_order == pytest.approx(measurement.slope - 1)


def test_measure_order_arguments():
    with pytest.raises(Rk10UsageError, match="at least 3 levels"):
        measure_order(euler(), levels=2)
    problem = ExpressionProblem.parse(["u' = u"], {"u": 1})
    with pytest.raises(Rk10UsageError, match="no known exact solution"):
        measure_order(euler(), problem=problem)


def test_identity_check_on_rk4():
    assert linear_step_identity_check(classic_rk4(), "0.3", digits=40)


def test_golden_measured_slope(golden_numeric):
    measurement = measure_order(golden_numeric, h0="0.5", levels=6, digits=60)
    assert 10.7 <= measurement.slope <= 11.3


def test_golden_identity_check(golden_numeric):
    with mpmath.workdps(70):
        h = mpmath.pi / 2
    assert linear_step_identity_check(golden_numeric, h, digits=50)


def test_golden_one_step_row(golden_numeric):
    row = one_step_table_row(golden_numeric, digits=60)
    x, y = row.linear
    assert mpmath.mpf("-0.00000075") <= x <= mpmath.mpf("-0.000000735")
    assert abs(y - mpmath.mpf("1.0000335")) < 1e-7
    nx, ny = row.nonlinear
    assert abs(nx - mpmath.mpf("0.0002031491")) < 1e-10
    assert abs(ny - mpmath.mpf("1.0000544744")) < 1e-10
    assert set(row.as_dict()) == {"linear x", "linear y", "nonlinear x", "nonlinear y"}
