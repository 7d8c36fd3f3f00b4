from __future__ import annotations
import typing as ty
import logging
import math
import traceback
from concurrent.futures import ProcessPoolExecutor
import mpmath

logger = logging.getLogger("rk10")

# stands in for an unbounded stage order or co-order
UNBOUNDED = math.inf

T = ty.TypeVar("T")
R = ty.TypeVar("R")


def show_cli_trace(result: ty.Any) -> str:
    "Used in testing to show traceback of CLI output"
    if result.exc_info is None:
        return result.output
    return "".join(traceback.format_exception(*result.exc_info))


def format_decimal(value: ty.Any, digits: int) -> str:
    """Fixed-point text of a real number with an explicit sign and ``digits``
    digits after the point, e.g. ``+0.1333`` for digits=4. Zero is written with a plus
    sign."""
    with mpmath.workdps(digits + 30):
        scaled = int(mpmath.nint(mpmath.mpf(value) * mpmath.mpf(10) ** digits))
    sign = "-" if scaled < 0 else "+"
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def format_order(order: ty.Union[int, float]) -> str:
    return "inf" if order == UNBOUNDED else str(order)


def short(value: ty.Any, digits: int = 12) -> str:
    """Compact rendering of a scalar for logs and text reports"""
    if hasattr(value, "to_mpf"):
        value = value.to_mpf(digits + 5)
    return mpmath.nstr(mpmath.mpf(value), digits)


def parallel_map(
    func: ty.Callable[[T], R], items: ty.Sequence[T], jobs: int = 1
) -> ty.List[R]:
    """Maps ``func`` over ``items`` in order, in worker processes when jobs > 1"""
    if jobs <= 1 or len(items) < 2:
        return [func(item) for item in items]
    logger.info("Distributing %d work items over %d processes", len(items), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, items))
