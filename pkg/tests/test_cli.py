import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lieconformal.cli import run

DATA = Path(__file__).parent / "data"


def capture(capsys, argv):
    rc = run(argv)
    return rc, capsys.readouterr().out


def test_dump_roots_schema(capsys):
    rc, out = capture(capsys, ["dump-roots", "A", "2"])
    assert rc == 0
    data = json.loads(out)
    assert data["label"] == "A" and data["rank"] == 2
    assert data["simples"] == [["1", "-1", "0"], ["0", "1", "-1"]]
    assert len(data["positives"]) == 3


def test_dump_roots_deterministic(capsys):
    rc1, out1 = capture(capsys, ["dump-roots", "F4", "4"])
    rc2, out2 = capture(capsys, ["dump-roots", "F4", "4"])
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_dump_roots_bad_rank(capsys):
    rc = run(["dump-roots", "B", "1"])
    capsys.readouterr()
    assert rc == 2


def test_dump_constants_sorted(capsys):
    rc, out = capture(capsys, ["dump-constants", "A", "2"])
    assert rc == 0
    lines = [json.loads(x) for x in out.strip().splitlines()]
    assert all(set(d) == {"alpha", "beta", "n"} for d in lines)
    keys = [(d["alpha"], d["beta"]) for d in lines]
    assert keys == sorted(keys)


def test_classify_json_deterministic(capsys):
    rc1, out1 = capture(capsys, ["classify", "--max-rank", "2", "--format", "json"])
    rc2, out2 = capture(capsys, ["classify", "--max-rank", "2", "--format", "json"])
    assert rc1 == rc2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["matches_expected"] is True


def test_classify_table_output(capsys):
    rc, out = capture(capsys, ["classify", "--max-rank", "2"])
    assert rc == 0
    assert "Survivor" in out and "G2" in out


def test_classify_case_filter(capsys):
    rc, out = capture(capsys, ["classify", "--max-rank", "3", "--case", "case2", "--format", "json"])
    assert rc == 0
    data = json.loads(out)
    assert all(c["case"] == "Case2" for c in data["candidates"])


def test_classify_bad_rank(capsys):
    rc = run(["classify", "--max-rank", "1"])
    capsys.readouterr()
    assert rc == 2


def test_classify_expect_mismatch(tmp_path, capsys):
    bogus = tmp_path / "expect.json"
    bogus.write_text("[]")
    rc = run(["classify", "--max-rank", "2", "--format", "json", "--expect", str(bogus)])
    capsys.readouterr()
    assert rc == 1


def test_classify_expect_golden(capsys):
    rc = run([
        "classify", "--max-rank", "8", "--format", "json",
        "--expect", str(DATA / "expected_survivors_rank8.json"),
    ])
    capsys.readouterr()
    assert rc == 0


def test_solve_feasible_config(capsys):
    rc, out = capture(capsys, ["solve", str(DATA / "b3_alpha_e3.json")])
    assert rc == 0
    data = json.loads(out)
    assert data["feasible"] is True
    assert data["dimension"] == 1
    assert data["witness"] == [["1", "-1", "1"]]
    assert len(data["unknowns"]) == 3


def test_solve_infeasible_config(capsys):
    rc, out = capture(capsys, ["solve", str(DATA / "a2_alpha_e1e2.json")])
    assert rc == 0
    data = json.loads(out)
    assert data["feasible"] is False
    assert data["certificate"]


def test_solve_missing_file(capsys):
    rc = run(["solve", "/nonexistent/config.json"])
    capsys.readouterr()
    assert rc == 2


def test_check_examples_g2(capsys):
    rc, out = capture(capsys, ["check-examples", "--construction", "g2"])
    assert rc == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["results"]["g2"]["global_scale"] == "2/3"
    assert data["results"]["g2"]["form_dimension"] == 1


def test_check_examples_embeddings(capsys):
    rc, out = capture(capsys, [
        "check-examples", "--construction", "sp", "--n", "3", "--trials", "10", "--seed", "5",
    ])
    assert rc == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["results"]["sp"]["max_residual"] == "0"


def test_usage_error_exit_code():
    assert run([]) == 2
    assert run(["no-such-command"]) == 2


def test_threaded_classify_matches_serial(capsys, monkeypatch):
    rc1, serial = capture(capsys, ["classify", "--max-rank", "3", "--format", "json"])
    monkeypatch.setenv("LIE_CONFORMAL_THREADS", "3")
    rc2, threaded = capture(capsys, ["classify", "--max-rank", "3", "--format", "json"])
    assert rc1 == rc2 == 0
    assert serial == threaded


def test_console_script_subprocess():
    """The installed entry point behaves like the in-process runner."""
    out = subprocess.run(
        [sys.executable, "-m", "lieconformal", "dump-roots", "A", "1"],
        capture_output=True, text=True, env=dict(os.environ),
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["label"] == "A"
