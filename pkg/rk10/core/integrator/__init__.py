from .expression import Expression, parse_expression, evaluate_constant
from .problems import (
    OdeProblem,
    ExpressionProblem,
    LINEAR_CIRCLE,
    NONLINEAR_CIRCLE,
    BUILTIN_PROBLEMS,
)
from .stepping import (
    Trajectory,
    OrderMeasurement,
    OneStepRow,
    rk_step,
    integrate,
    measure_order,
    linear_step_identity_check,
    one_step_table_row,
)

__all__ = [
    "Expression",
    "parse_expression",
    "evaluate_constant",
    "OdeProblem",
    "ExpressionProblem",
    "LINEAR_CIRCLE",
    "NONLINEAR_CIRCLE",
    "BUILTIN_PROBLEMS",
    "Trajectory",
    "OrderMeasurement",
    "OneStepRow",
    "rk_step",
    "integrate",
    "measure_order",
    "linear_step_identity_check",
    "one_step_table_row",
]
