from __future__ import annotations
import sys
import typing as ty
import logging
from contextlib import contextmanager
from pathlib import Path
import click
import mpmath
import yaml
from click_option_group import optgroup
from rk10.core import __version__
from rk10.core.exceptions import Rk10Error, Rk10UsageError
from rk10.core.field import DEFAULT_DIGITS
from rk10.core.trees import enumerate_trees, format_tree, tree_statistics
from rk10.core.tableau import (
    ButcherTableau,
    verify_order,
    verify_order_q_form,
    verify_order_d_form,
    check_bcd,
    cluster_analysis,
    DEFAULT_MAX_ORDER,
)
from rk10.core.duality import dualize, check_duality_theorem
from rk10.core.family import (
    FamilyParams,
    ORDER,
    construct,
    reference_params,
    reference_method,
    closing_pivot,
    derive_closing_pivot,
    derive_c6_constants,
    constants_block_report,
)
from rk10.core.analysis import (
    error_coefficient_range,
    stability_polynomial,
    stability_interval,
    region_samples,
    polynomial_zeros,
    szego_curve,
    szego_distances,
    stability_report,
)
from rk10.core.integrator import (
    BUILTIN_PROBLEMS,
    ExpressionProblem,
    evaluate_constant,
    integrate as integrate_problem,
    measure_order,
    one_step_table_row,
    linear_step_identity_check,
)
from rk10.core.serialization import (
    LISTING_DIGITS,
    embedded_golden,
    format_tableau,
    parse_decimal_listing,
    read_tableau,
)
from rk10.core.options import tableau_source, arithmetic, output, debugging
from rk10.common import builtin_method
from rk10.core.utils import short

logger = logging.getLogger("rk10")


@click.group()
@click.version_option(version=__version__)
def cli() -> None:
    """Exact construction, verification and analysis of explicit Runge-Kutta
    methods, centred on a seven-parameter family of 15-stage order-10 methods"""


@contextmanager
def _handled_errors(raise_errors: bool) -> ty.Iterator[None]:
    try:
        yield
    except Rk10Error as e:
        if raise_errors:
            raise
        logger.error("%s", e)
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


def _set_loglevel(loglevel: str) -> None:
    logging.basicConfig(level=getattr(logging, loglevel.upper()))


def _mode(exact: ty.Optional[bool]) -> ty.Optional[str]:
    if exact is None:
        return None
    return "exact" if exact else "numeric"


def load_tableau(
    tableau_path: ty.Optional[Path],
    reference: bool,
    golden: bool,
    method_name: ty.Optional[str],
    exact: ty.Optional[bool] = None,
    digits: int = DEFAULT_DIGITS,
) -> ButcherTableau:
    """The tableau selected by the tableau options, in the requested mode or else
    in the natural mode of its source"""
    mode = _mode(exact)
    if tableau_path is not None:
        return read_tableau(tableau_path, mode=mode, digits=digits)
    if reference:
        tableau = reference_method()
        return tableau.to_numeric(digits) if mode == "numeric" else tableau
    if golden:
        listing = "\n".join(embedded_golden().decimal_listing)
        return parse_decimal_listing(
            listing,
            mode=mode or "numeric",
            digits=None if exact is None else digits,
            name="golden",
        )
    if method_name is not None:
        return builtin_method(method_name, mode=mode or "exact", digits=digits)
    raise Rk10UsageError(
        "Select a tableau with one of --tableau, --reference, --golden or --method"
    )


def _emit(
    report: ty.Any,
    text: str,
    out_path: ty.Optional[Path],
    output_format: str,
) -> None:
    """Writes the report to the output file or standard output, as YAML or as the
    given text"""
    if output_format == "yaml":
        content = yaml.safe_dump(report, sort_keys=False, allow_unicode=True)
    else:
        content = text if text.endswith("\n") else text + "\n"
    if out_path is None:
        click.echo(content, nl=False)
    else:
        out_path.write_text(content)
        logger.info("Wrote report to %s", out_path)


def _table(rows: ty.Sequence[ty.Mapping[str, ty.Any]]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    widths = [
        max(len(str(k)), *(len(str(row[k])) for row in rows)) for k in keys
    ]
    lines = ["  ".join(str(k).rjust(w) for k, w in zip(keys, widths))]
    for row in rows:
        lines.append("  ".join(str(row[k]).rjust(w) for k, w in zip(keys, widths)))
    return "\n".join(lines)


@cli.command(
    name="trees",
    help="""Enumerates the rooted trees up to a given order and prints the number of
trees of each order together with the sum of their labelling counts""",
)
@click.option(
    "--max-order",
    type=int,
    default=DEFAULT_MAX_ORDER,
    show_default=True,
    help="Largest tree order to enumerate",
)
@click.option(
    "--list/--no-list",
    "list_trees",
    default=False,
    help="Also list every tree with its density and symmetry",
)
@output
@debugging
def trees(
    max_order: int,
    list_trees: bool,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        if max_order < 1:
            raise Rk10UsageError(f"--max-order must be at least 1, got {max_order}")
        statistics = tree_statistics(max_order)
        report: ty.Dict[str, ty.Any] = {
            "orders": statistics,
            "total": sum(s["count"] for s in statistics),
        }
        text = _table(statistics) + f"\ntotal {report['total']}"
        if list_trees:
            listed = [
                {
                    "tree": format_tree(t),
                    "order": t.order,
                    "density": t.density,
                    "symmetry": t.symmetry,
                }
                for t in enumerate_trees(max_order)
            ]
            report["trees"] = listed
            text += "\n\n" + _table(listed)
        _emit(report, text, out_path, output_format)


VERIFIERS = {
    "direct": verify_order,
    "q": verify_order_q_form,
    "d": verify_order_d_form,
}


@cli.command(
    name="verify",
    help="""Checks the order conditions of a tableau up to a given order and reports the
order achieved together with the largest residuals""",
)
@tableau_source
@click.option(
    "--order",
    type=int,
    default=ORDER,
    show_default=True,
    help="Order up to which the conditions are checked",
)
@click.option(
    "--form",
    type=click.Choice(list(VERIFIERS)),
    default="direct",
    show_default=True,
    help=(
        "Which form of the conditions to check: b Phi(t) = 1/t! directly, the "
        "Q-type conditions or the D-type conditions"
    ),
)
@click.option(
    "--show",
    type=int,
    default=5,
    show_default=True,
    help="Number of largest residuals to report",
)
@click.option(
    "--check/--no-check",
    default=False,
    help="Exit with status 1 when the order is not achieved",
)
@arithmetic
@output
@debugging
def verify(
    tableau_path: ty.Optional[Path],
    reference: bool,
    golden: bool,
    method_name: ty.Optional[str],
    order: int,
    form: str,
    show: int,
    check: bool,
    exact: ty.Optional[bool],
    digits: int,
    jobs: int,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        tableau = load_tableau(
            tableau_path, reference, golden, method_name, exact, digits
        )
        result = VERIFIERS[form](tableau, order)
        largest = [
            {"tree": format_tree(t), "residual": mpmath.nstr(r, 6)}
            for t, r in result.sorted_residuals()[:show]
        ]
        report = {
            "tableau": tableau.name,
            "stages": tableau.s,
            "mode": tableau.mode,
            "form": result.form,
            "order_checked": result.order_checked,
            "achieved_order": result.achieved_order,
            "passed": result.passed,
            "conditions": len(result.residuals),
            "failing": len(result.failing),
            "max_abs_residual": mpmath.nstr(result.max_abs_residual, 6),
            "largest_residuals": largest,
        }
        text = "\n".join(
            f"{k}: {v}" for k, v in report.items() if k != "largest_residuals"
        )
        if largest:
            text += "\n\n" + _table(largest)
        _emit(report, text, out_path, output_format)
    if check and not result.passed:
        sys.exit(1)


@cli.command(
    name="bcd",
    help="""Reports the largest k for which a tableau satisfies each of the simplifying
assumptions B(k), C(k) and D(k)""",
)
@tableau_source
@click.option(
    "--cap",
    type=int,
    default=None,
    help="Largest k tested, max(2s, 10) by default",
)
@arithmetic
@output
@debugging
def bcd(
    tableau_path: ty.Optional[Path],
    reference: bool,
    golden: bool,
    method_name: ty.Optional[str],
    cap: ty.Optional[int],
    exact: ty.Optional[bool],
    digits: int,
    jobs: int,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        tableau = load_tableau(
            tableau_path, reference, golden, method_name, exact, digits
        )
        assumptions = check_bcd(tableau, cap=cap)
        report = {"tableau": tableau.name, **assumptions.as_dict()}
        _emit(report, str(assumptions), out_path, output_format)


@cli.command(
    name="clusters",
    help="""Partitions the stages of a tableau into node clusters and reports the type,
order and co-order of each cluster along with the stage order, strong stage order and
weak stage co-order of every stage""",
)
@tableau_source
@click.option(
    "--max-order",
    type=int,
    default=DEFAULT_MAX_ORDER,
    show_default=True,
    help="Cap on every order searched",
)
@arithmetic
@output
@debugging
def clusters(
    tableau_path: ty.Optional[Path],
    reference: bool,
    golden: bool,
    method_name: ty.Optional[str],
    max_order: int,
    exact: ty.Optional[bool],
    digits: int,
    jobs: int,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        tableau = load_tableau(
            tableau_path, reference, golden, method_name, exact, digits
        )
        result = cluster_analysis(tableau, max_order=max_order)
        cluster_rows = [
            {
                "stages": ",".join(str(i) for i in c.stages),
                "type": c.type_label,
                "order": d["order"],
                "coorder": d["coorder"],
            }
            for c, d in ((c, c.as_dict()) for c in result.clusters)
        ]
        stage_rows = [s.as_dict() for s in result.stages]
        text = _table(cluster_rows) + "\n\n" + _table(stage_rows)
        _emit(result.as_dict(), text, out_path, output_format)


@cli.command(
    name="dualize",
    help="""Writes the dual of a tableau, with the stages reversed, the nodes reflected
about 1/2 and A renormalised by the weights. The tableau must have nonzero weights
and satisfy D(1)""",
)
@tableau_source
@click.option(
    "--layout",
    type=click.Choice(["decimal", "exact"]),
    default=None,
    help="Layout of the written dual, by default exact for exact tableaus",
)
@click.option(
    "--listing-digits",
    type=int,
    default=None,
    help=(
        f"Digits of a decimal listing, {LISTING_DIGITS} for exact tableaus and the "
        "working precision for numeric ones by default"
    ),
)
@click.option(
    "--theorem",
    type=int,
    nargs=3,
    default=None,
    metavar="L M N",
    help="Also confirm that B(L) C(M) D(N) dualises to B(L) C(N) D(M)",
)
@arithmetic
@output
@debugging
def dualize_cmd(
    tableau_path: ty.Optional[Path],
    reference: bool,
    golden: bool,
    method_name: ty.Optional[str],
    layout: ty.Optional[str],
    listing_digits: ty.Optional[int],
    theorem: ty.Optional[ty.Tuple[int, int, int]],
    exact: ty.Optional[bool],
    digits: int,
    jobs: int,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        tableau = load_tableau(
            tableau_path, reference, golden, method_name, exact, digits
        )
        outcome = dualize(tableau)
        dual = outcome.dual
        if layout is None:
            layout = "exact" if dual.exact else "decimal"
        if listing_digits is None:
            listing_digits = LISTING_DIGITS if dual.exact else dual.digits
        listing = format_tableau(dual, layout=layout, digits=listing_digits)
        report: ty.Dict[str, ty.Any] = {
            "tableau": tableau.name,
            "self_dual": outcome.self_dual,
        }
        if theorem:
            holds = check_duality_theorem(tableau, *theorem)
            report["theorem"] = {
                "premise": "B({}) C({}) D({})".format(*theorem),
                "dual": f"B({holds.dual_B}) C({holds.dual_C}) D({holds.dual_D})",
                "holds": holds.holds,
            }
        if output_format == "text":
            for key, value in report.items():
                click.echo(f"{key}: {value}", err=True)
        report["listing"] = listing.splitlines()
        _emit(report, listing, out_path, output_format)


@cli.command(
    name="derive",
    help="""Constructs a member of the 15-stage order-10 family from its seven free
parameters and writes its tableau. Without --params the low-magnitude reference
member is built""",
)
@click.option(
    "--reference",
    is_flag=True,
    default=False,
    help="Build the reference member (the default when no parameters are given)",
)
@click.option(
    "--params",
    "params_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help=(
        "YAML file mapping c2, c4, c5, b10, b12, b13 and b14 to rationals or field "
        "literals such as '2/7*w2'"
    ),
)
@click.option(
    "--param",
    "overrides",
    type=(str, str),
    multiple=True,
    metavar="NAME VALUE",
    help="Override a single parameter of the reference member or of --params",
)
@click.option(
    "--layout",
    type=click.Choice(["decimal", "exact"]),
    default="decimal",
    show_default=True,
    help="Layout of the written tableau",
)
@click.option(
    "--listing-digits",
    type=int,
    default=LISTING_DIGITS,
    show_default=True,
    help="Digits after the point in a decimal listing",
)
@click.option(
    "--verify/--no-verify",
    "verify_result",
    default=None,
    help="Check the order-10 conditions of the result, on by default when exact",
)
@click.option(
    "--rederive-constants",
    is_flag=True,
    default=False,
    help=(
        "Independently re-derive the closing pivot and the c6 constants numerically "
        "and report whether they agree with the constants block"
    ),
)
@optgroup.group("Arithmetic", help="How scalars are represented during construction")
@optgroup.option(
    "--exact/--numeric",
    default=True,
    help="Construct exactly in Q(alpha, beta) or numerically at --digits",
)
@optgroup.option(
    "--digits",
    type=int,
    default=DEFAULT_DIGITS,
    show_default=True,
    help="Working digits of a numeric construction and of the re-derivations",
)
@optgroup.option(
    "--jobs",
    type=int,
    default=1,
    show_default=True,
    help="Worker processes for data-parallel work",
)
@output
@debugging
def derive(
    reference: bool,
    params_path: ty.Optional[Path],
    overrides: ty.Sequence[ty.Tuple[str, str]],
    layout: str,
    listing_digits: int,
    verify_result: ty.Optional[bool],
    rederive_constants: bool,
    exact: bool,
    digits: int,
    jobs: int,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        if reference and params_path is not None:
            raise Rk10UsageError("--reference and --params are mutually exclusive")
        params = load_params(params_path, overrides)
        is_reference = params == reference_params()
        if is_reference and exact and verify_result is None:
            tableau = reference_method()
        else:
            tableau = construct(
                params,
                numeric_digits=None if exact else digits,
                verify=verify_result,
                name="reference" if is_reference else "member",
            )
        listing = format_tableau(tableau, layout=layout, digits=listing_digits)
        report: ty.Dict[str, ty.Any] = {
            "params": params.as_dict(),
            "mode": tableau.mode,
        }
        if rederive_constants:
            report["rederived"] = rederive(params, digits)
        if output_format == "text":
            for key, value in report.get("rederived", {}).items():
                click.echo(f"{key}: {value}", err=True)
        report["listing"] = listing.splitlines()
        _emit(report, listing, out_path, output_format)


def load_params(
    params_path: ty.Optional[Path],
    overrides: ty.Sequence[ty.Tuple[str, str]] = (),
) -> FamilyParams:
    """Family parameters from a YAML file or the reference member, with single
    parameters overridden"""
    if params_path is None:
        params = reference_params()
    else:
        try:
            mapping = yaml.safe_load(params_path.read_text())
        except yaml.YAMLError as e:
            raise Rk10UsageError(f"Cannot parse parameter file {params_path}: {e}")
        if not isinstance(mapping, dict):
            raise Rk10UsageError(
                f"Parameter file {params_path} must hold a mapping of parameters"
            )
        params = FamilyParams.from_mapping(mapping)
    if overrides:
        try:
            params = params.evolve(**dict(overrides))
        except TypeError as e:
            raise Rk10UsageError(f"Unrecognised parameter override: {e}")
    return params


def rederive(params: FamilyParams, digits: int) -> ty.Dict[str, ty.Any]:
    pivot = derive_closing_pivot(params, digits=digits)
    c6 = derive_c6_constants(digits=digits)
    result = {
        "closing_pivot": str(pivot),
        "closing_pivot_agrees": pivot == closing_pivot(),
        "c6_constants_agree": c6.all_agree,
    }
    if not (result["closing_pivot_agrees"] and result["c6_constants_agree"]):
        logger.warning("Re-derived constants disagree with the constants block")
    return result


@cli.command(
    name="analyze",
    help="""Computes the comparison metrics of an explicit method: error coefficients,
the interval of absolute stability, the stability region boundary, the zeros of the
stability polynomial and their distance from the Szego curve. Without any selection
the one-line comparison table row is printed""",
)
@tableau_source
@click.option(
    "--error-coeffs",
    type=int,
    nargs=2,
    default=None,
    metavar="P Q",
    help="Error coefficients T_p for P <= p <= Q",
)
@click.option(
    "--stability-interval",
    "want_interval",
    is_flag=True,
    default=False,
    help="The left end z_R of the real interval of absolute stability",
)
@click.option(
    "--region",
    type=(float, float, float, float, int),
    default=None,
    metavar="XMIN XMAX YMIN YMAX RES",
    help="Trace |R(z)| = 1 over the window on a RES x RES grid",
)
@click.option(
    "--region-out",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write the traced boundary segments to this file",
)
@click.option(
    "--zeros",
    is_flag=True,
    default=False,
    help="The complex zeros of the stability polynomial",
)
@click.option(
    "--szego",
    type=(float, int),
    default=None,
    metavar="FACTOR RES",
    help=(
        "Distances of the zeros scaled down by FACTOR from the Szego curve; RES "
        "points of the scaled curve go to --szego-out"
    ),
)
@click.option(
    "--szego-out",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write points of the scaled Szego curve to this file",
)
@click.option(
    "--table-row",
    is_flag=True,
    default=False,
    help="The comparison table row, including the one-step circle tests",
)
@arithmetic
@output
@debugging
def analyze(
    tableau_path: ty.Optional[Path],
    reference: bool,
    golden: bool,
    method_name: ty.Optional[str],
    error_coeffs: ty.Optional[ty.Tuple[int, int]],
    want_interval: bool,
    region: ty.Optional[ty.Tuple[float, float, float, float, int]],
    region_out: ty.Optional[Path],
    zeros: bool,
    szego: ty.Optional[ty.Tuple[float, int]],
    szego_out: ty.Optional[Path],
    table_row: bool,
    exact: ty.Optional[bool],
    digits: int,
    jobs: int,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        tableau = load_tableau(
            tableau_path, reference, golden, method_name, exact, digits
        )
        if not (error_coeffs or want_interval or region or zeros or szego):
            table_row = True
        report: ty.Dict[str, ty.Any] = {"tableau": tableau.name}
        lines: ty.List[str] = []
        if error_coeffs:
            first, last = error_coeffs
            if first > last:
                raise Rk10UsageError(f"Empty order range {first}..{last}")
            coefficients = error_coefficient_range(
                tableau, range(first, last + 1), digits=digits, jobs=jobs
            )
            report["error_coefficients"] = {
                p: short(r.Tp, 8) for p, r in coefficients.items()
            }
            lines.extend(f"T{p} = {v}" for p, v in report["error_coefficients"].items())
        polynomial = stability_polynomial(tableau)
        if want_interval:
            z_R = _interval_end(polynomial, digits)
            report["z_R"] = z_R
            lines.append(f"z_R = {z_R}")
        if region:
            xmin, xmax, ymin, ymax, resolution = region
            samples = region_samples(polynomial, (xmin, xmax, ymin, ymax), resolution)
            crossings = [f"{x:.8g}" for x in samples.real_axis_crossings()]
            report["region"] = {
                "segments": len(samples.segments),
                "real_axis_crossings": crossings,
            }
            lines.append(f"boundary segments: {len(samples.segments)}")
            lines.append(f"real-axis crossings: {' '.join(crossings)}")
            if region_out is not None:
                region_out.write_text("\n".join(samples.boundary_lines()) + "\n")
        if zeros or szego:
            roots = polynomial_zeros(polynomial, digits=digits)
            if zeros:
                report["zeros"] = [mpmath.nstr(z, 15) for z in roots]
                lines.extend(f"zero {mpmath.nstr(z, 15)}" for z in roots)
            if szego:
                factor, resolution = szego
                distances = szego_distances(roots, factor=factor)
                report["szego_distances"] = [mpmath.nstr(d, 6) for d in distances]
                lines.append(
                    f"largest Szego distance {mpmath.nstr(max(distances), 6)}"
                )
                if szego_out is not None:
                    points = szego_curve(resolution, factor=factor)
                    szego_out.write_text(
                        "\n".join(
                            f"{mpmath.nstr(p.real, 12)} {mpmath.nstr(p.imag, 12)}"
                            for p in points
                        )
                        + "\n"
                    )
        if table_row:
            row = stability_report(tableau, digits=digits, jobs=jobs).table_row()
            row.update(one_step_table_row(tableau, digits=digits).as_dict())
            report["table_row"] = row
            lines.append(_table([row]))
        _emit(report, "\n".join(lines), out_path, output_format)


def _interval_end(polynomial: ty.Any, digits: int) -> str:
    return mpmath.nstr(stability_interval(polynomial, digits=digits), 12)


@cli.command(
    name="integrate",
    help="""Integrates an initial value problem with an explicit method in fixed steps
at high precision, or measures the method's local order by step halving""",
)
@tableau_source
@click.option(
    "--problem",
    type=click.Choice(sorted(BUILTIN_PROBLEMS) + ["expr"]),
    default="linear-circle",
    show_default=True,
    help="A built-in test problem, or 'expr' for equations given with --equation",
)
@click.option(
    "--equation",
    "equations",
    type=str,
    multiple=True,
    help="One equation per state variable, e.g. \"x' = -y\"",
)
@click.option(
    "--initial",
    type=(str, str),
    multiple=True,
    metavar="NAME VALUE",
    help="Initial value of a state variable, a constant expression such as 'pi/2'",
)
@click.option(
    "--t0",
    type=str,
    default="0",
    show_default=True,
    help="Initial time of an 'expr' problem",
)
@click.option(
    "--h",
    "step",
    type=str,
    default=None,
    help="Step size, a constant expression",
)
@click.option(
    "--t-end",
    type=str,
    default=None,
    help="Final time, a constant expression (instead of --h)",
)
@click.option(
    "--steps",
    type=int,
    default=1,
    show_default=True,
    help="Number of equal steps",
)
@click.option(
    "--measure-order",
    is_flag=True,
    default=False,
    help="Measure the local order by step halving instead of integrating",
)
@click.option(
    "--h0",
    type=str,
    default="0.5",
    show_default=True,
    help="Largest step of the order measurement",
)
@click.option(
    "--levels",
    type=int,
    default=6,
    show_default=True,
    help="Number of halvings of the order measurement",
)
@click.option(
    "--check-identity",
    is_flag=True,
    default=False,
    help="Confirm that one step on the linear circle equals R(ih)",
)
@arithmetic
@output
@debugging
def integrate(
    tableau_path: ty.Optional[Path],
    reference: bool,
    golden: bool,
    method_name: ty.Optional[str],
    problem: str,
    equations: ty.Sequence[str],
    initial: ty.Sequence[ty.Tuple[str, str]],
    t0: str,
    step: ty.Optional[str],
    t_end: ty.Optional[str],
    steps: int,
    measure_order: bool,
    h0: str,
    levels: int,
    check_identity: bool,
    exact: ty.Optional[bool],
    digits: int,
    jobs: int,
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        tableau = load_tableau(
            tableau_path, reference, golden, method_name, exact, digits
        )
        if problem == "expr":
            if not equations:
                raise Rk10UsageError("--problem expr needs at least one --equation")
            ode = ExpressionProblem.parse(equations, dict(initial), t0=t0)
        else:
            if equations:
                raise Rk10UsageError(
                    f"--equation is only used with --problem expr, not {problem}"
                )
            ode = BUILTIN_PROBLEMS[problem]
        report: ty.Dict[str, ty.Any] = {"tableau": tableau.name, "problem": ode.name}
        if measure_order:
            measurement = _measure(tableau, ode, h0, levels, digits, jobs)
            report.update(measurement)
            text = "\n".join(f"{k}: {v}" for k, v in measurement.items())
        else:
            rows = _trajectory(tableau, ode, step, t_end, steps, digits)
            report["trajectory"] = rows
            text = _table(rows)
        if check_identity:
            if step is None:
                raise Rk10UsageError("--check-identity needs the step size --h")
            h = evaluate_constant(step, digits)
            holds = linear_step_identity_check(tableau, h, digits=min(digits, 50))
            report["linear_step_identity"] = holds
            text += f"\nlinear step identity: {holds}"
        _emit(report, text, out_path, output_format)


def _trajectory(
    tableau: ButcherTableau,
    ode: ty.Any,
    step: ty.Optional[str],
    t_end: ty.Optional[str],
    steps: int,
    digits: int,
) -> ty.List[ty.Dict[str, str]]:
    if (step is None) == (t_end is None):
        raise Rk10UsageError("Give exactly one of --h and --t-end")
    with mpmath.workdps(digits + 10):
        if t_end is None:
            end = ode.initial_time() + steps * evaluate_constant(step, digits)
        else:
            end = evaluate_constant(t_end, digits)
    trajectory = integrate_problem(tableau, ode, end, steps, digits=digits)
    shown = min(digits, 30)
    return [
        {
            "t": mpmath.nstr(t, shown),
            **{v: mpmath.nstr(x, shown) for v, x in zip(ode.variables, state)},
        }
        for t, state in trajectory.rows()
    ]


def _measure(
    tableau: ButcherTableau,
    ode: ty.Any,
    h0: str,
    levels: int,
    digits: int,
    jobs: int,
) -> ty.Dict[str, ty.Any]:
    with mpmath.workdps(digits + 10):
        first = evaluate_constant(h0, digits)
    measurement = measure_order(
        tableau, ode, h0=first, levels=levels, digits=digits, jobs=jobs
    )
    return {
        "step_sizes": [mpmath.nstr(h, 8) for h in measurement.step_sizes],
        "errors": [mpmath.nstr(e, 8) for e in measurement.errors],
        "slope": round(measurement.slope, 4),
        "observed_order": round(measurement.observed_order, 4),
    }


@cli.command(
    name="constants",
    help="""Decodes every row of the constants block of the family and names the
computed quantity each row equals""",
)
@output
@debugging
def constants(
    out_path: ty.Optional[Path],
    output_format: str,
    loglevel: str,
    raise_errors: bool,
) -> None:
    _set_loglevel(loglevel)
    with _handled_errors(raise_errors):
        entries = constants_block_report()
        rows = [
            {
                "row": f"{e.row.group}.{e.row.index}",
                "label": e.label or "-",
                "value": short(e.row.value, 15),
            }
            for e in entries
        ]
        _emit([e.as_dict() for e in entries], _table(rows), out_path, output_format)


if __name__ == "__main__":
    cli()
