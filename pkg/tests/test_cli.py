import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from kronbasis import cli
from kronbasis.errors import VerificationError
from kronbasis.report import Check, Report, ReportError, emit_report, jsonable
from kronbasis.permcomb import Permutation

DATA = Path(__file__).parent / "data"


def run(*argv):
    buf = io.StringIO()
    code, report = cli.run(list(argv), stdout=buf)
    return code, buf.getvalue(), report


def test_basis_text_output():
    code, out, report = run("basis", "--n", "4", "--r", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "23 permutations (increasing, n=4, r=2):"
    assert len(lines[1].split()) == 23 and lines[1].split()[0] == "1234"
    assert lines[-1] == "1/1 checks passed"


def test_basis_decreasing():
    code, out, _ = run("basis", "--n", "3", "--r", "1", "--direction", "decreasing")
    words = out.splitlines()[1].split()
    assert code == 0 and "321" in words and "123" not in words


def test_grid_output():
    code, out, _ = run("grid", "--n", "4")
    assert code == 0
    assert out.startswith("1234  2134  2314  2341\n")
    assert "(4,3,2,1)  (4,3,2)  (4,3)  (1)\n" in out


@pytest.mark.parametrize("argv", [
    ["basis", "--n", "4"],                 # missing --r
    ["frobnicate"],                        # unknown subcommand
    [],                                    # no subcommand
    ["basis", "--n", "0", "--r", "1"],
    ["basis", "--n", "3", "--r", "1", "--format", "yaml"],
    ["decompose", "--n", "2", "--r", "1"],  # missing --matrix
    ["decompose", "--n", "2", "--r", "1", "--matrix", "/nonexistent/m.mtx"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, report = run(*argv)
    assert code == 2 and out == ""
    assert "kronbasis: error:" in capsys.readouterr().err


def test_budget_exceeded_exit_3():
    code, out, report = run("rank", "--n", "8", "--r", "1")
    assert code == 3
    assert report.checks[0].status == "incomplete"
    assert out.splitlines()[0].startswith("INCOMPLETE")


def test_cell_budget_exit_3():
    code, _, report = run("rank", "--n", "4", "--r", "3", "--budget-cells", "100")
    assert code == 3 and report.incomplete


def test_failing_check_exit_1(tmp_path):
    # doubly stochastic swap of two entries of the 2^2 grid, outside the span
    m = tmp_path / "bad.mtx"
    m.write_text("4 4\n0 1 1/1\n1 0 1/1\n2 2 1/1\n3 3 1/1\n")
    code, out, report = run("decompose", "--n", "2", "--r", "2", "--matrix", str(m))
    assert code == 1 and report.failed
    assert out.startswith("FAIL")


def test_fail_beats_incomplete():
    r = Report()
    r.add(Check("a", {}, 1, None, "incomplete"))
    r.add(Check("b", {}, 1, 2, "fail"))
    assert r.exit_code() == 1


def test_crashing_task_is_a_failed_check(monkeypatch):
    def boom(*args):
        return cli.run_check("rank boom", {}, 1, lambda: (_ for _ in ()).throw(VerificationError("mismatch")))
    monkeypatch.setattr(cli, "task_rank", boom)
    code, out, report = run("rank", "--n", "3", "--r", "1")
    assert code == 1 and report.checks[0].detail == "mismatch"


def test_decompose_counterexample_gives_certificate(tmp_path):
    cert = tmp_path / "cert.json"
    code, _, report = run("decompose", "--n", "4", "--r", "2", "--matrix", str(DATA / "counterexample.mtx"),
                          "--certificate", str(cert))
    assert code == 0
    actual = report.checks[0].actual
    assert actual["greedy"] is False and actual["conv_hull"] == "infeasible"
    assert len(json.loads(cert.read_text())["farkas"]) == 257


def test_decompose_convex_mixture(tmp_path):
    m = tmp_path / "mix.mtx"
    # 1/2 I + 1/2 swap on C^2 (x) C^2
    m.write_text("4 4\n0 0 1/2\n0 3 1/2\n3 0 1/2\n3 3 1/2\n1 1 1/2\n2 2 1/2\n1 2 1/2\n2 1 1/2\n")
    code, _, report = run("decompose", "--n", "2", "--r", "2", "--matrix", str(m))
    assert code == 0 and report.checks[0].actual["greedy"] is True


def test_counterexample_output(tmp_path):
    code, out, report = run("counterexample", "--dir", str(tmp_path))
    assert code == 0
    assert out.splitlines()[0] == (
        "doubly stochastic: yes; in im(Φ): yes; positive diagonal: none; conv hull: infeasible")
    assert (tmp_path / "counterexample.mtx").read_text() == (DATA / "counterexample.mtx").read_text()
    assert json.loads((tmp_path / "counterexample_farkas.json").read_text())


def test_json_byte_determinism(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        code, stdout, _ = run("hecke-verify", "--n", "3", "--format", "json", "--no-timing", "--out", str(path))
        assert code == 0 and stdout == ""
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["version"] == "1.0" and "timing" not in doc
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_timing_is_isolated(tmp_path):
    code, out, _ = run("rank", "--n", "3", "--r", "2", "--format", "json")
    doc = json.loads(out)
    assert set(doc) == {"version", "checks", "timing"}
    assert set(doc["timing"]) == {c["name"] for c in doc["checks"]}


def test_csv_format():
    code, out, _ = run("rank", "--n", "3", "--r", "2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "name,status,inputs,expected,actual,detail"
    assert lines[1].split(",")[1] == "pass"


def test_env_override(monkeypatch):
    monkeypatch.setenv("KRONBASIS_N", "3")
    monkeypatch.setenv("KRONBASIS_R", "1")
    code, out, _ = run("basis")
    assert code == 0 and out.startswith("5 permutations")
    # flags beat the environment
    code, out, _ = run("basis", "--n", "2")
    assert out.startswith("2 permutations")
    monkeypatch.setenv("KRONBASIS_SEED", "x")
    assert run("basis")[0] == 2


def test_report_io_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "missing" / "deeper" / "r.json"
    code, _, report = run("rank", "--n", "2", "--r", "1", "--out", str(bad))
    assert code == 2 and report is not None
    assert "cannot write report" in capsys.readouterr().err


def test_empty_report():
    r = Report()
    assert json.loads(r.to_json(timing=False)) == {"version": "1.0", "checks": []}
    assert r.exit_code() == 0
    assert r.to_text() == "0/0 checks passed\n"


def test_duplicate_check_names_rejected():
    r = Report()
    r.add(Check("x", {}, 1, 1, "pass"))
    with pytest.raises(ValueError):
        r.add(Check("x", {}, 1, 1, "pass"))
    with pytest.raises(ValueError):
        Check("y", {}, 1, 1, "maybe")


def test_jsonable():
    assert jsonable({Permutation((2, 1)): Fraction(1, 3)}) == {"2 1": "1/3"}
    assert jsonable({(1, 2): {3, 1}}) == {"1 2": [1, 3]}
    assert jsonable(Fraction(-2)) == "-2/1"
    with pytest.raises(TypeError):
        jsonable(object())


def test_emit_report_to_unwritable_path(tmp_path):
    with pytest.raises(ReportError):
        emit_report(Report(), "json", tmp_path / "no" / "such" / "file.json")


def test_suite_quick_parallel_matches_serial(tmp_path):
    texts = []
    for jobs in ("1", "2"):
        path = tmp_path / f"s{jobs}.json"
        code, _, report = run("suite", "--quick", "--jobs", jobs, "--format", "json", "--no-timing",
                              "--out", str(path))
        assert code == 0, [c for c in report.checks if not c.passed]
        texts.append(path.read_bytes())
    assert texts[0] == texts[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kronbasis", "basis", "--n", "3", "--r", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("6 permutations")
