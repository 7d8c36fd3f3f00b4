from __future__ import annotations
import math
import yaml
import pytest
from rk10.common import classic_rk4
from rk10.core.cli import cli
from rk10.core.serialization import write_tableau
from rk10.core.utils import show_cli_trace

PARAMS_YAML = (
    "c2: 2/15\nc4: 2/5\nc5: 4/7\nb10: 2/7*w2\nb12: 2/9*w3\nb13: w4\nb14: w5\n"
)


def _yaml_report(cli_runner, work_dir, args):
    out_path = work_dir / "report.yaml"
    result = cli_runner(
        cli, args + ["--format", "yaml", "--out", str(out_path), "--raise-errors"]
    )
    assert result.exit_code == 0, show_cli_trace(result)
    return yaml.safe_load(out_path.read_text())


def test_trees_cli(cli_runner):
    result = cli_runner(cli, ["trees", "--max-order", "5"])
    assert result.exit_code == 0, show_cli_trace(result)
    assert result.output.strip().splitlines()[-1] == "total 17"


def test_trees_cli_yaml(cli_runner, work_dir):
    report = _yaml_report(cli_runner, work_dir, ["trees", "--max-order", "5", "--list"])
    assert [row["count"] for row in report["orders"]] == [1, 1, 2, 4, 9]
    assert [row["labelings"] for row in report["orders"]] == [
        math.factorial(p - 1) for p in range(1, 6)
    ]
    assert len(report["trees"]) == 17


def test_trees_cli_bad_order(cli_runner):
    result = cli_runner(cli, ["trees", "--max-order", "0"])
    assert result.exit_code == 1
    assert "--max-order must be at least 1" in result.output


@pytest.mark.parametrize("form", ["direct", "q", "d"])
def test_verify_cli(form, cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        ["verify", "--method", "rk4", "--order", "4", "--form", form],
    )
    assert report["tableau"] == "rk4"
    assert report["mode"] == "exact"
    assert report["passed"]
    assert report["achieved_order"] == 4


def test_verify_cli_check(cli_runner):
    result = cli_runner(cli, ["verify", "--method", "rk4", "--order", "5"])
    assert result.exit_code == 0, show_cli_trace(result)
    assert "achieved_order: 4" in result.output
    result = cli_runner(cli, ["verify", "--method", "rk4", "--order", "5", "--check"])
    assert result.exit_code == 1


def test_verify_cli_numeric(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        ["verify", "--method", "heun", "--order", "2", "--numeric", "--digits", "30"],
    )
    assert report["mode"] == "numeric"
    assert report["passed"]


def test_verify_cli_tableau_file(cli_runner, work_dir):
    path = write_tableau(classic_rk4(), work_dir / "classic.txt", layout="exact")
    report = _yaml_report(
        cli_runner, work_dir, ["verify", "--tableau", str(path), "--order", "4"]
    )
    assert report["tableau"] == "classic"
    assert report["passed"]


def test_cli_needs_a_tableau(cli_runner):
    result = cli_runner(cli, ["bcd"])
    assert result.exit_code == 1
    assert "Select a tableau" in result.output


def test_cli_unknown_method(cli_runner):
    result = cli_runner(cli, ["bcd", "--method", "rk45"])
    assert result.exit_code == 1
    assert "Unrecognised method 'rk45'" in result.output


def test_bcd_cli(cli_runner):
    result = cli_runner(cli, ["bcd", "--method", "rk4"])
    assert result.exit_code == 0, show_cli_trace(result)
    assert result.output.strip() == "B(4) C(1) D(1)"


def test_clusters_cli(cli_runner, work_dir):
    report = _yaml_report(cli_runner, work_dir, ["clusters", "--method", "rk4"])
    assert [c["stages"] for c in report["clusters"]] == [[1], [2, 3], [4]]
    assert report["clusters"][0]["order"] == "inf"
    assert [s["stage"] for s in report["stages"]] == [1, 2, 3, 4]


def test_dualize_cli(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        ["dualize", "--method", "three-eighths", "--theorem", "4", "1", "1"],
    )
    assert report["self_dual"]
    assert report["theorem"]["holds"]
    assert report["theorem"]["dual"] == "B(4) C(1) D(1)"
    assert report["listing"][0] == "s=4 mode=exact"


def test_dualize_cli_listing(cli_runner, work_dir):
    out_path = work_dir / "dual.txt"
    result = cli_runner(
        cli,
        [
            "dualize",
            "--method",
            "rk4",
            "--layout",
            "decimal",
            "--listing-digits",
            "12",
            "--out",
            str(out_path),
        ],
    )
    assert result.exit_code == 0, show_cli_trace(result)
    lines = out_path.read_text().splitlines()
    assert len(lines) == 14
    assert lines[4] == "+0.166666666667"


def test_dualize_cli_rejects_euler(cli_runner):
    result = cli_runner(cli, ["dualize", "--method", "euler"])
    assert result.exit_code == 1
    assert "D(1) violated" in result.output


def test_analyze_cli_interval(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        ["analyze", "--method", "rk4", "--stability-interval", "--digits", "30"],
    )
    assert report["z_R"].startswith("-2.785293563")


def test_analyze_cli_zeros_and_coefficients(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        [
            "analyze",
            "--method",
            "rk4",
            "--zeros",
            "--error-coeffs",
            "5",
            "6",
            "--digits",
            "30",
        ],
    )
    assert len(report["zeros"]) == 4
    assert set(report["error_coefficients"]) == {5, 6}


def test_analyze_cli_region(cli_runner, work_dir):
    region_path = work_dir / "boundary.txt"
    szego_path = work_dir / "szego.txt"
    report = _yaml_report(
        cli_runner,
        work_dir,
        [
            "analyze",
            "--method",
            "rk4",
            "--region",
            "-3",
            "1",
            "-3",
            "3",
            "61",
            "--region-out",
            str(region_path),
            "--szego",
            "4",
            "32",
            "--szego-out",
            str(szego_path),
            "--digits",
            "30",
        ],
    )
    assert report["region"]["segments"] > 0
    assert region_path.read_text().strip()
    assert len(report["szego_distances"]) == 4
    assert len(szego_path.read_text().splitlines()) == 32


def test_analyze_cli_empty_range(cli_runner):
    result = cli_runner(cli, ["analyze", "--method", "rk4", "--error-coeffs", "6", "5"])
    assert result.exit_code == 1
    assert "Empty order range" in result.output


def test_analyze_cli_table_row(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner, work_dir, ["analyze", "--method", "rk4", "--digits", "30"]
    )
    row = report["table_row"]
    assert row["method"] == "rk4"
    assert row["s"] == 4
    assert {"max|a|", "min b", "z_R", "linear x", "nonlinear y"} <= set(row)


def test_integrate_cli(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        [
            "integrate",
            "--method",
            "rk4",
            "--problem",
            "linear-circle",
            "--h",
            "0.1",
            "--steps",
            "2",
            "--digits",
            "30",
        ],
    )
    trajectory = report["trajectory"]
    assert len(trajectory) == 3
    assert set(trajectory[0]) == {"t", "x", "y"}
    assert abs(float(trajectory[-1]["t"]) - 0.2) < 1e-12
    assert abs(float(trajectory[-1]["x"]) - math.cos(0.2)) < 1e-6


def test_integrate_cli_expression(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        [
            "integrate",
            "--method",
            "rk4",
            "--problem",
            "expr",
            "--equation",
            "u' = u",
            "--initial",
            "u",
            "1",
            "--t-end",
            "1",
            "--steps",
            "20",
            "--digits",
            "30",
        ],
    )
    assert abs(float(report["trajectory"][-1]["u"]) - math.e) < 1e-6


def test_integrate_cli_measure_order(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        [
            "integrate",
            "--method",
            "heun",
            "--measure-order",
            "--h0",
            "1/4",
            "--levels",
            "6",
            "--digits",
            "40",
            "--h",
            "0.5",
            "--check-identity",
        ],
    )
    assert 2.8 <= report["slope"] <= 3.2
    assert len(report["errors"]) == 7
    assert report["linear_step_identity"]


@pytest.mark.parametrize(
    "args,message",
    [
        (["--h", "0.1", "--t-end", "1"], "Give exactly one of --h and --t-end"),
        (["--problem", "expr", "--h", "0.1"], "needs at least one --equation"),
        (["--equation", "x' = y", "--h", "0.1"], "only used with --problem expr"),
        (["--t-end", "1", "--check-identity"], "needs the step size --h"),
    ],
)
def test_integrate_cli_errors(args, message, cli_runner):
    result = cli_runner(cli, ["integrate", "--method", "rk4"] + args)
    assert result.exit_code == 1
    assert message in result.output


def test_derive_cli_numeric(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner,
        work_dir,
        [
            "derive",
            "--numeric",
            "--digits",
            "60",
            "--listing-digits",
            "30",
        ],
    )
    assert report["mode"] == "numeric"
    assert report["params"]["c2"] == "2/15"
    assert len(report["listing"]) == 135
    assert report["listing"][1] == "+0.1" + "3" * 29


def test_derive_cli_params_file(cli_runner, work_dir):
    params_path = work_dir / "params.yaml"
    params_path.write_text(PARAMS_YAML)
    out_path = work_dir / "member.txt"
    result = cli_runner(
        cli,
        [
            "derive",
            "--params",
            str(params_path),
            "--param",
            "c2",
            "1/10",
            "--numeric",
            "--listing-digits",
            "20",
            "--out",
            str(out_path),
        ],
    )
    assert result.exit_code == 0, show_cli_trace(result)
    lines = out_path.read_text().splitlines()
    assert len(lines) == 135
    assert lines[1] == "+0.1" + "0" * 19


@pytest.mark.parametrize(
    "content,message",
    [
        ("- c2\n- c4\n", "must hold a mapping"),
        ("c2: [1\n", "Cannot parse parameter file"),
        (PARAMS_YAML.replace("2/15", "0.1"), "is not exact"),
    ],
)
def test_derive_cli_bad_params(content, message, cli_runner, work_dir):
    params_path = work_dir / "params.yaml"
    params_path.write_text(content)
    result = cli_runner(cli, ["derive", "--params", str(params_path), "--numeric"])
    assert result.exit_code == 1
    assert message in result.output


def test_derive_cli_exclusive_sources(cli_runner, work_dir):
    params_path = work_dir / "params.yaml"
    params_path.write_text("c2: 2/15\n")
    result = cli_runner(
        cli, ["derive", "--reference", "--params", str(params_path), "--numeric"]
    )
    assert result.exit_code == 1
    assert "mutually exclusive" in result.output


def test_derive_cli_unknown_override(cli_runner):
    result = cli_runner(cli, ["derive", "--param", "c7", "1/2", "--numeric"])
    assert result.exit_code == 1
    assert "Unrecognised parameter override" in result.output


@pytest.mark.slow
def test_constants_cli(cli_runner, work_dir):
    report = _yaml_report(cli_runner, work_dir, ["constants"])
    assert len(report) == 63
    assert report[2]["label"] == "A[14,13]"
    assert report[-1]["label"] == "V2"


@pytest.mark.slow
def test_golden_cli_interval(cli_runner, work_dir):
    report = _yaml_report(
        cli_runner, work_dir, ["analyze", "--golden", "--stability-interval"]
    )
    assert report["z_R"].startswith("-4.429")
