"""Well-known low-order methods, used as small test beds and as ``--method`` choices
on the command line"""
from __future__ import annotations
import typing as ty
from fractions import Fraction
from rk10.core.exceptions import Rk10UsageError
from rk10.core.field import DEFAULT_DIGITS
from rk10.core.tableau import ButcherTableau

F = Fraction


def euler(mode: str = "exact", digits: int = DEFAULT_DIGITS) -> ButcherTableau:
    return ButcherTableau.from_rows(
        [[0]], [1], [0], mode=mode, digits=digits, name="euler"
    )


def midpoint(mode: str = "exact", digits: int = DEFAULT_DIGITS) -> ButcherTableau:
    return ButcherTableau.from_rows(
        [[0, 0], [F(1, 2), 0]],
        [0, 1],
        [0, F(1, 2)],
        mode=mode,
        digits=digits,
        name="midpoint",
    )


def implicit_midpoint(
    mode: str = "exact", digits: int = DEFAULT_DIGITS
) -> ButcherTableau:
    """The one-stage Gauss-Legendre method"""
    return ButcherTableau.from_rows(
        [[F(1, 2)]], [1], [F(1, 2)], mode=mode, digits=digits, name="implicit-midpoint"
    )


def heun(mode: str = "exact", digits: int = DEFAULT_DIGITS) -> ButcherTableau:
    return ButcherTableau.from_rows(
        [[0, 0], [1, 0]],
        [F(1, 2), F(1, 2)],
        [0, 1],
        mode=mode,
        digits=digits,
        name="heun",
    )


def classic_rk4(mode: str = "exact", digits: int = DEFAULT_DIGITS) -> ButcherTableau:
    """The classical fourth-order method"""
    return ButcherTableau.from_rows(
        [
            [0, 0, 0, 0],
            [F(1, 2), 0, 0, 0],
            [0, F(1, 2), 0, 0],
            [0, 0, 1, 0],
        ],
        [F(1, 6), F(1, 3), F(1, 3), F(1, 6)],
        [0, F(1, 2), F(1, 2), 1],
        mode=mode,
        digits=digits,
        name="rk4",
    )


def three_eighths(mode: str = "exact", digits: int = DEFAULT_DIGITS) -> ButcherTableau:
    """Kutta's 3/8 rule"""
    return ButcherTableau.from_rows(
        [
            [0, 0, 0, 0],
            [F(1, 3), 0, 0, 0],
            [F(-1, 3), 1, 0, 0],
            [1, -1, 1, 0],
        ],
        [F(1, 8), F(3, 8), F(3, 8), F(1, 8)],
        [0, F(1, 3), F(2, 3), 1],
        mode=mode,
        digits=digits,
        name="three-eighths",
    )


BUILTIN_METHODS: ty.Dict[str, ty.Callable[..., ButcherTableau]] = {
    "euler": euler,
    "midpoint": midpoint,
    "implicit-midpoint": implicit_midpoint,
    "heun": heun,
    "rk4": classic_rk4,
    "three-eighths": three_eighths,
}


def builtin_method(
    name: str, mode: str = "exact", digits: int = DEFAULT_DIGITS
) -> ButcherTableau:
    try:
        factory = BUILTIN_METHODS[name]
    except KeyError:
        raise Rk10UsageError(
            f"Unrecognised method '{name}', expected one of {sorted(BUILTIN_METHODS)}"
        )
    return factory(mode=mode, digits=digits)
