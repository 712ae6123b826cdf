"""End-to-end tests for the command-line frontend.

Every test drives ``expansions.cli.main`` in-process with an argv list and
asserts on captured stdout/stderr and the exit code, so the goldens here pin
the exact bytes a shell user sees.
"""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

from expansions.cli import main
from expansions.registry import system_ids


def run_cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# Registry listing
# ---------------------------------------------------------------------------


def test_systems_list_covers_registry():
    code, out, err = run_cli("systems", "list")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert len(lines) == len(system_ids())
    listed = [line.split()[0] for line in lines]
    assert listed == list(system_ids())


# ---------------------------------------------------------------------------
# expand / convergent / order
# ---------------------------------------------------------------------------


def test_expand_continued_fraction():
    code, out, err = run_cli(
        "expand", "--system", "cf", "--input", "7/10", "--depth", "4"
    )
    assert (code, out, err) == (0, "1 2 3 inf\n", "")


def test_expand_certified_irrational():
    code, out, err = run_cli(
        "expand",
        "--system", "egyptian",
        "--input", "sqrt(1/2)",
        "--depth", "4",
        "--bits", "256",
    )
    assert (code, out, err) == (0, "2 5 141 68575\n", "")


def test_convergent_trace_lists_stages_top_down():
    code, out, err = run_cli(
        "convergent",
        "--system", "base10",
        "--input", "1/3",
        "--order", "3",
        "--emit", "trace",
    )
    assert code == 0 and err == ""
    assert out == "3: 0\n2: 3/10\n1: 33/100\n0: 333/1000\n"


def test_convergent_value_with_decimal_rendering():
    code, out, err = run_cli(
        "convergent",
        "--system", "base10",
        "--input", "1/3",
        "--order", "3",
        "--approx", "8",
    )
    assert (code, out, err) == (0, "0.333\n", "")


def test_order_finite_and_censored():
    code, out, _ = run_cli(
        "order", "--system", "taylor", "--input", "1 + x^2", "--max", "10"
    )
    assert (code, out) == (0, "finite(3)\n")
    code, out, _ = run_cli(
        "order",
        "--system", "taylor",
        "--input", "exp",
        "--max", "6",
        "--series-order", "6",
    )
    assert (code, out) == (0, "infinite-up-to(6)\n")


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def test_report_csv_file(tmp_path):
    out_path = tmp_path / "report.csv"
    code, out, err = run_cli(
        "report",
        "--system", "base10",
        "--input", "1/3",
        "--nmax", "4",
        "--out", str(out_path),
    )
    assert (code, out, err) == (0, "", "")
    assert out_path.read_text() == (
        'n,proper,distance,coeffs\n'
        '0,true,"1/3",""\n'
        '1,true,"1/30","3"\n'
        '2,true,"1/300","3 3"\n'
        '3,true,"1/3000","3 3 3"\n'
        '4,true,"1/30000","3 3 3 3"\n'
    )


def test_report_json_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        code, _, _ = run_cli(
            "report",
            "--system", "base10",
            "--input", "1/3",
            "--nmax", "3",
            "--format", "json",
            "--out", str(path),
        )
        assert code == 0
    blobs = [path.read_bytes() for path in paths]
    assert blobs[0] == blobs[1]
    doc = json.loads(blobs[0])
    assert doc["metric_id"] == "abs"
    assert [row["n"] for row in doc["rows"]] == [0, 1, 2, 3]


# ---------------------------------------------------------------------------
# morphism verify
# ---------------------------------------------------------------------------


def test_morphism_verify_builtins():
    for spec in ("newton-reflection", "decimal-shift", "cf-shift", "as-d-shift"):
        code, out, err = run_cli(
            "morphism", "verify",
            "--spec", spec,
            "--samples", "6",
            "--depth", "4",
        )
        assert code == 0 and err == "", spec
        assert out == "ok: no violation found on 6 samples to depth 4\n", spec


# ---------------------------------------------------------------------------
# approximation systems
# ---------------------------------------------------------------------------


def test_as_run_derivative_power():
    code, out, err = run_cli(
        "as", "run",
        "--transform", "d",
        "--nonlinearity", "power",
        "--alpha", "1/2",
        "--input", "sqrt(1/(1 - x))",
        "--depth", "3",
    )
    assert (code, out, err) == (0, "c: 1/2 3/4 7/8\nm: 0 0 0\n", "")


def test_as_run_kd_reports_three_streams():
    code, out, err = run_cli(
        "as", "run",
        "--transform", "kd",
        "--nonlinearity", "power",
        "--alpha", "3",
        "--input", "(1 + x)^3",
        "--depth", "2",
    )
    assert (code, out, err) == (0, "c: 6 3/2\nm: 1 1\nb: 3 3/2\n", "")


def test_as_eval_along_real_segment():
    code, out, err = run_cli(
        "as", "eval",
        "--transform", "d",
        "--nonlinearity", "power",
        "--alpha", "1/2",
        "--input", "sqrt(1/(1 - x))",
        "--order", "3",
        "--path", "0,0.5",
    )
    assert code == 0 and err == ""
    value_line, error_line, panels_line = out.splitlines()
    assert value_line.startswith("value: 1.39608424901962")
    assert float(error_line.split(": ")[1]) < 1e-12
    assert panels_line == "panels: 1"


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_exit_code_parse_error():
    code, out, err = run_cli(
        "expand", "--system", "base10", "--input", "1 +", "--depth", "2"
    )
    assert code == 2 and out == ""
    assert err.startswith("error: ParseError:")


def test_exit_code_unknown_system():
    code, _, err = run_cli(
        "expand", "--system", "nope", "--input", "1/2", "--depth", "2"
    )
    assert code == 2
    assert err.startswith("error: DomainError:")


def test_exit_code_improper_convergent():
    code, _, err = run_cli(
        "convergent",
        "--system", "norm-taylor",
        "--input", "1/2 + x - x^2 + x^3 - x^4",
        "--order", "2",
    )
    assert code == 4
    assert err == "error: Improper: convergent improper at level 0\n"


def test_exit_code_precision_exhausted():
    code, _, err = run_cli(
        "expand",
        "--system", "cf",
        "--input", "sqrt(1/2)",
        "--bits", "16",
        "--depth", "40",
    )
    assert code == 3
    assert err.startswith("error: PrecisionExhausted:")


def test_exit_code_truncated_knowledge():
    code, _, err = run_cli(
        "order",
        "--system", "taylor",
        "--input", "exp",
        "--max", "12",
        "--series-order", "6",
    )
    assert code == 3
    assert err.startswith("error: TruncationInconclusive:")


# ---------------------------------------------------------------------------
# config files and determinism
# ---------------------------------------------------------------------------


def test_config_file_supplies_defaults_and_flags_win(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"system": "cf", "input": "7/10", "depth": 4}))
    code, out, _ = run_cli("expand", "--config", str(cfg))
    assert (code, out) == (0, "1 2 3 inf\n")
    code, out, _ = run_cli("expand", "--config", str(cfg), "--depth", "2")
    assert (code, out) == (0, "1 2\n")


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"system": "cf", "bogus-key": 1}))
    code, _, err = run_cli(
        "expand", "--config", str(cfg), "--input", "7/10", "--depth", "2"
    )
    assert code == 2
    assert "unknown config key" in err


def test_repeated_invocations_are_byte_identical():
    first = run_cli("expand", "--system", "engel", "--input", "3/8", "--depth", "5")
    second = run_cli("expand", "--system", "engel", "--input", "3/8", "--depth", "5")
    assert first == second
    assert first[0] == 0
