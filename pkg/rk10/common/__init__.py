from .methods import (
    euler,
    midpoint,
    implicit_midpoint,
    heun,
    classic_rk4,
    three_eighths,
    BUILTIN_METHODS,
    builtin_method,
)
