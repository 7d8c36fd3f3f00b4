from __future__ import annotations
from pathlib import Path
import typing as ty
import click
from click_option_group import optgroup, MutuallyExclusiveOptionGroup
from rk10.core.field import DEFAULT_DIGITS


def tableau_source(func):
    return _apply_options(
        func,
        [
            optgroup.group(
                "Tableau",
                cls=MutuallyExclusiveOptionGroup,
                help="The method to work on, read from a file or built in",
            ),
            optgroup.option(
                "--tableau",
                "tableau_path",
                type=click.Path(exists=True, dir_okay=False, path_type=Path),
                default=None,
                help="A tableau file, in the decimal or the exact layout",
            ),
            optgroup.option(
                "--reference",
                is_flag=True,
                default=False,
                help="The reference member of the order-10 family, constructed afresh",
            ),
            optgroup.option(
                "--golden",
                is_flag=True,
                default=False,
                help="The reference member read from its embedded 90-digit listing",
            ),
            optgroup.option(
                "--method",
                "method_name",
                type=str,
                default=None,
                help=(
                    "A built-in method: euler, midpoint, implicit-midpoint, heun, "
                    "rk4 or three-eighths"
                ),
            ),
        ],
    )


def arithmetic(func):
    return _apply_options(
        func,
        [
            optgroup.group(
                "Arithmetic", help="How scalars are represented during the computation"
            ),
            optgroup.option(
                "--exact/--numeric",
                type=bool,
                default=None,
                help=(
                    "Work in exact Q(alpha, beta) arithmetic or in mpmath reals. "
                    "Defaults to the natural mode of the tableau source"
                ),
            ),
            optgroup.option(
                "--digits",
                type=int,
                default=DEFAULT_DIGITS,
                show_default=True,
                help="Working decimal digits of numeric computations",
            ),
            optgroup.option(
                "--jobs",
                type=int,
                default=1,
                show_default=True,
                help="Worker processes for data-parallel work",
            ),
        ],
    )


def output(func):
    return _apply_options(
        func,
        [
            optgroup.group("Output", help="Where and how the results are written"),
            optgroup.option(
                "--out",
                "out_path",
                type=click.Path(dir_okay=False, writable=True, path_type=Path),
                default=None,
                help="Write the output to this file instead of standard output",
            ),
            optgroup.option(
                "--format",
                "output_format",
                type=click.Choice(["text", "yaml"]),
                default="text",
                show_default=True,
                help="Format of the report",
            ),
        ],
    )


def debugging(func):
    return _apply_options(
        func,
        [
            optgroup.group(
                "Debugging",
                help="Logging and error propagation",
            ),
            optgroup.option(
                "--loglevel",
                type=click.Choice(
                    ["debug", "info", "warning", "error", "critical"],
                    case_sensitive=False,
                ),
                default="warning",
                show_default=True,
                help="The level to display logs at",
            ),
            optgroup.option(
                "--raise-errors/--log-errors",
                type=bool,
                default=False,
                help="Raise exceptions instead of logging failures",
            ),
        ],
    )


def _apply_options(func, options: ty.List[click.Option]):

    for opt in reversed(options):
        func = opt(func)

    return func
