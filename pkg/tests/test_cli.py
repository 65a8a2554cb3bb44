import json
import subprocess
import sys

import pytest

from mcc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def assert_single_line_error(err):
    lines = err.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


# -- betti ---------------------------------------------------------------

def test_betti_S_table(capsys):
    code, out, _ = run(capsys, "betti", "--space", "S", "--r", "3", "--format", "table")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:15]]
    assert [int(c) for _, c in rows] == [1, 2, 6, 10, 16, 19, 22, 19, 16, 10, 6, 2, 1]
    assert "euler characteristic 130" in out


def test_betti_S_json(capsys):
    rec = run_json(capsys, "betti", "--space", "S", "--r", "3")
    assert rec["schema_version"] == "1"
    assert rec["r"] == 3
    coeffs = rec["payload"]["coefficients"]
    assert len(coeffs) == 25
    assert coeffs[1::2] == [0] * 12
    assert coeffs[::2] == [1, 2, 6, 10, 16, 19, 22, 19, 16, 10, 6, 2, 1]
    assert rec["payload"]["palindromic"] is True
    assert rec["payload"]["euler"] == 130


def test_betti_M_r1(capsys):
    rec = run_json(capsys, "betti", "--space", "M", "--r", "1")
    assert rec["payload"]["coefficients"] == [1, 0, 1, 0, 2, 0, 1, 0, 1]


def test_betti_latex(capsys):
    code, out, _ = run(capsys, "betti", "--space", "M", "--r", "1", "--format", "latex")
    assert code == 0
    assert out.strip() == "$P_t = 1 + t^{2} + 2t^{4} + t^{6} + t^{8}$"


@pytest.mark.parametrize(
    "argv",
    [
        ["betti", "--space", "S", "--r", "2"],
        ["betti", "--space", "S"],
        ["betti", "--space", "X", "--r", "3"],
        ["betti", "--space", "S", "--r", "three"],
        [],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert assert_single_line_error(err)["error"] == "UsageError"


# -- terms ---------------------------------------------------------------

def test_terms_reconstruct(capsys):
    rec = run_json(capsys, "terms", "--r", "3", "--reconstruct")
    verdicts = [t["reconstruction"] for t in rec["payload"]["terms"]]
    assert verdicts == ["ok", "ok", "literal-only", "ok", "ok", "ok"]


def test_terms_r4(capsys):
    rec = run_json(capsys, "terms", "--r", "4")
    assert len(rec["payload"]["terms"]) == 6
    assert rec["payload"]["sum_check"] == "ok"
    assert all("reconstruction" not in t for t in rec["payload"]["terms"])


def test_terms_table(capsys):
    code, out, _ = run(capsys, "terms", "--r", "3", "--reconstruct")
    assert code == 0
    assert "[literal-only]" in out and "sum check ok" in out


def test_terms_r0(capsys):
    code, _, err = run(capsys, "terms", "--r", "0")
    assert code == 2
    assert_single_line_error(err)


def test_terms_mismatch_exits_3(capsys, monkeypatch):
    from mcc import cli
    from mcc.ratpoly import RatFun

    monkeypatch.setattr(cli, "reconstruct_term", lambda i, r: RatFun(0))
    code, out, err = run(capsys, "terms", "--r", "3", "--reconstruct")
    assert code == 3
    assert out == ""
    assert assert_single_line_error(err)["error"] == "ConsistencyError"


# -- eval ----------------------------------------------------------------

def test_eval_grass(capsys):
    rec = run_json(capsys, "eval", "--expr", "Gr(2,r+1)", "--r", "3")
    assert rec["payload"]["coefficients"] == [1, 0, 1, 0, 2, 0, 1, 0, 1]


def test_eval_blowup(capsys):
    rec = run_json(capsys, "eval", "--expr", "blowup(P(2),center=pt,codim=2)", "--r", "1")
    assert rec["payload"]["coefficients"] == [1, 0, 2, 0, 1]


def test_eval_parse_error(capsys):
    code, out, err = run(capsys, "eval", "--expr", "P(", "--r", "3")
    assert code == 2
    assert out == ""
    rec = assert_single_line_error(err)
    assert rec["error"] == "ParseError"
    assert rec["offset"] == 2
    assert rec["expected"]


def test_eval_not_polynomial(capsys):
    code, _, err = run(capsys, "eval", "--expr", "lit((1)/(1-t^2))", "--r", "1")
    assert code == 3
    assert assert_single_line_error(err)["error"] == "NotPolynomial"


def test_eval_invalid_dimension(capsys):
    code, _, err = run(capsys, "eval", "--expr", "P(r-5)", "--r", "3")
    assert code == 2
    assert assert_single_line_error(err)["error"] == "InvalidDimension"


def test_eval_file(capsys, tmp_path):
    f = tmp_path / "center.msd"
    f.write_text("# fiber over P^r\nbundle(fiber=WP(1,2,2), base=P(r))\n")
    rec = run_json(capsys, "eval", "--expr-file", str(f), "--r", "2")
    assert rec["payload"]["coefficients"] == [1, 0, 2, 0, 3, 0, 2, 0, 1]
    assert rec["payload"]["dimension"] == 4


def test_eval_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "--expr-file", str(tmp_path / "none.msd"), "--r", "2")
    assert code == 2
    assert_single_line_error(err)


def test_eval_needs_one_source(capsys):
    code, _, _ = run(capsys, "eval", "--r", "2")
    assert code == 2


# -- walls / classify ----------------------------------------------------

def test_walls(capsys):
    rec = run_json(capsys, "walls", "--factors", "sym:3,copies:2|sym:1,copies:4")
    assert rec["payload"]["walls"] == ["1", "3"]
    rec = run_json(capsys, "walls", "--factors", "sym:1,copies:1|sym:2,copies:2")
    assert rec["payload"]["walls"] == ["1/2"]


def test_walls_single_factor(capsys):
    rec = run_json(capsys, "walls", "--factors", "sym:3,copies:4")
    assert rec["payload"]["walls"] == []


def test_classify(capsys):
    rec = run_json(capsys, "classify", "--factors", "sym:3,copies:2|sym:1,copies:1",
                   "--point", "z0^3; z0^2*z1 | z1", "--lambda", "2")
    assert rec["payload"]["verdict"] == "Stable"
    assert rec["payload"]["witness"] is None


def test_classify_semistable_witness(capsys):
    rec = run_json(capsys, "classify", "--factors", "sym:3,copies:2|sym:1,copies:1",
                   "--point", "z0^3; z0^2*z1 | z1", "--lambda", "3")
    assert rec["payload"]["verdict"] == "StrictlySemistable"
    assert rec["payload"]["witness"]["mu"] == "0"


def test_classify_lambda_fraction(capsys):
    rec = run_json(capsys, "classify", "--factors", "sym:3,copies:2|sym:1,copies:1",
                   "--point", "z0^3; z0^2*z1 | z1", "--lambda", "1/2")
    assert rec["payload"]["verdict"] == "Unstable"
    assert rec["payload"]["lambda"] == "1/2"
    assert rec["payload"]["min_mu"] == "-1/2"


@pytest.mark.parametrize(
    "argv",
    [
        ["walls", "--factors", "sym3"],
        ["walls", "--factors", "sym:3|sym:1", "--free-slot", "5"],
        ["classify", "--factors", "sym:3|sym:1", "--point", "z0^3 | z1", "--lambda", "x"],
        ["classify", "--factors", "sym:3|sym:1", "--point", "z0^3 | z1", "--lambda", "-1"],
        ["classify", "--factors", "sym:3|sym:1", "--point", "z0^2 | z1", "--lambda", "1"],
    ],
)
def test_malformed_git_specs(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert_single_line_error(err)


# -- stab / hilb ---------------------------------------------------------

def test_stab_line_sum(capsys):
    rec = run_json(capsys, "stab", "--sheaf", "line:[0,-1,-1]")
    assert rec["payload"]["verdict"] == "Unstable"
    assert rec["payload"]["destabilizer"] == "line:[0]"
    assert rec["payload"]["destabilizer_hilbert_polynomial"] == "m+1"


def test_stab_abstract(capsys):
    rec = run_json(capsys, "stab", "--sheaf", "abs:3m+1;quot:m+1,2m+1")
    assert rec["payload"]["verdict"] == "Stable"


def test_stab_table(capsys):
    code, out, _ = run(capsys, "stab", "--sheaf", "abs:3m+1;quot:m+1,2m+1")
    assert code == 0
    assert "verdict: Stable" in out
    assert "destabilizer: none" in out


def test_hilb(capsys):
    rec = run_json(capsys, "hilb", "--ideal", "x2^2,x2*x3,x3^2", "--vars", "4")
    assert rec["payload"]["hilbert_polynomial"] == "3m+1"
    assert rec["payload"]["dimension"] == 1
    assert rec["payload"]["coefficients"] == ["1", "3"]


@pytest.mark.parametrize(
    "argv",
    [["stab", "--sheaf", "line:[x]"], ["hilb", "--ideal", "x9", "--vars", "4"], ["hilb", "--ideal", "1", "--vars", "3"]],
)
def test_malformed_sheaf_specs(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert_single_line_error(err)


# -- verify --------------------------------------------------------------

def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--rmax", "4")
    assert code == 0
    lines = out.splitlines()
    assert [line.split()[:2] for line in lines[:10]] == [["PASS", f"A{i}"] for i in range(1, 11)]
    assert lines[-1] == "ALL PASS"


def test_verify_perturbed_table(capsys, tmp_path):
    table = [1, 2, 6, 10, 16, 19, 23, 19, 16, 10, 6, 2, 1]
    f = tmp_path / "eps.json"
    f.write_text(json.dumps(table))
    code, out, _ = run(capsys, "verify", "--rmax", "3", "--eps-table", str(f))
    assert code == 1
    assert out.splitlines()[0].startswith("FAIL A1")
    assert all(line.startswith("PASS") for line in out.splitlines()[1:10])


def test_verify_bad_table(capsys, tmp_path):
    f = tmp_path / "eps.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "verify", "--eps-table", str(f))
    assert code == 2
    assert_single_line_error(err)


def test_verify_rmax_too_small(capsys):
    code, _, _ = run(capsys, "verify", "--rmax", "2")
    assert code == 2


# -- output properties ---------------------------------------------------

def test_color_env(capsys, monkeypatch):
    monkeypatch.setenv("MCC_COLOR", "always")
    _, out, _ = run(capsys, "betti", "--space", "M", "--r", "1")
    assert "\x1b[1m" in out
    _, out, _ = run(capsys, "betti", "--space", "M", "--r", "1", "--format", "json")
    assert "\x1b" not in out
    monkeypatch.setenv("MCC_COLOR", "never")
    _, out, _ = run(capsys, "betti", "--space", "M", "--r", "1")
    assert "\x1b" not in out


@pytest.mark.parametrize(
    "argv",
    [
        ["betti", "--space", "S", "--r", "5", "--format", "json"],
        ["terms", "--r", "3", "--reconstruct", "--format", "json"],
        ["walls", "--factors", "sym:1,copies:1|sym:2,copies:2", "--format", "json"],
    ],
)
def test_byte_determinism(argv):
    cmd = [sys.executable, "-m", "mcc", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert not _has_float(json.loads(first))


def _has_float(value):
    if isinstance(value, float):
        return True
    if isinstance(value, dict):
        return any(_has_float(v) for v in value.values())
    if isinstance(value, list):
        return any(_has_float(v) for v in value)
    return False


def test_subprocess_exit_code():
    proc = subprocess.run([sys.executable, "-m", "mcc", "eval", "--expr", "P(", "--r", "3"],
                          check=False, capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stderr)["offset"] == 2
