import json
import subprocess
import sys

import pytest

from siegelmult.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main

E4 = "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_w_examples(capsys):
    code, out, _ = run(capsys, "w", "--m", "0,-1;1,0", "--n", "0,-1;1,0", "--exact")
    assert code == EXIT_PASS and out.startswith("w=0\n")
    code, out, _ = run(capsys, "w", "--m", E4, "--n", "0,0,-1,0;0,0,0,-1;1,0,1,0;0,1,0,0")
    assert code == EXIT_PASS and out.startswith("w=0\n")
    code, out, _ = run(capsys, "w", "--m", "13,8;8,5", "--n", "13,8;8,5")
    assert out.startswith("w=0\n") and "residual=" in out


def test_w_routes_and_conventions(capsys):
    args = ["w", "--m", "1,0;1,1", "--n=-2,-3;1,1"]
    assert run(capsys, *args)[1].startswith("w=-1")
    assert run(capsys, *args, "--rational")[1].startswith("w=-1")
    assert run(capsys, *args, "--convention", "petersson", "--exact")[1].startswith("w=1")


def test_usage_errors(capsys):
    assert run(capsys, "w", "--m", "1,1;1,1", "--n", "1,0;0,1")[0] == EXIT_USAGE
    assert run(capsys, "w", "--m", "1,0;0,1", "--n", E4)[0] == EXIT_USAGE
    assert run(capsys, "w", "--m", E4, "--n", E4, "--exact")[0] == EXIT_USAGE
    assert run(capsys, "lemma", "Nope")[0] == EXIT_USAGE
    assert run(capsys, "deligne", "--q", "6")[0] == EXIT_USAGE
    assert run(capsys, "lemma", "LTra", "--samples", "0")[0] == EXIT_USAGE
    assert run(capsys, "bogus")[0] == EXIT_USAGE
    assert run(capsys, "zpir", "--m", "1,4;4,17")[0] == EXIT_USAGE


def test_residual_guard_failure(capsys):
    m, n = "0,0,2,1;0,0,1,0;0,-1,0,0;-1,2,0,0", "-3,9,4,2;-10,29,12,6;2,-6,7,2;0,0,-3,-1"
    assert run(capsys, "w", "--m", m, "--n=" + n)[0] == EXIT_PASS
    assert run(capsys, "w", "--m", m, "--n=" + n, "--tol", "1e-300")[0] == EXIT_FAIL
    assert run(capsys, "w", "--m", "0,-1;1,0", "--n", "0,-1;1,0", "--tol", "-1")[0] == EXIT_USAGE


def test_deligne_and_lemma(capsys):
    code, out, err = run(capsys, "deligne", "--q", "4")
    data = json.loads(out)
    assert code == EXIT_PASS and data["pass"] and data["conclusion"].endswith("2r ∈ ℤ")
    assert err.startswith("PASS")
    code, out, _ = run(capsys, "lemma", "ITra", "--samples", "100", "--seed", "7")
    assert code == EXIT_PASS and json.loads(out)["pass"]


def test_byte_identical(capsys):
    first = run(capsys, "lemma", "TraI", "--samples", "20", "--seed", "3")[1]
    second = run(capsys, "lemma", "TraI", "--samples", "20", "--seed", "3")[1]
    assert first == second
    assert run(capsys, "deligne")[1] == run(capsys, "deligne")[1]


def test_out_file_and_replay(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "krons", "--q", "4", "--out", str(path))
    assert code == EXIT_PASS and out == ""
    code, out, _ = run(capsys, "replay", str(path))
    assert code == EXIT_PASS and json.loads(out)["reproduced"]
    data = json.loads(path.read_text())
    data["steps"][0]["computed"] = "999"
    path.write_text(json.dumps(data))
    assert run(capsys, "replay", str(path))[0] == EXIT_FAIL
    assert run(capsys, "replay", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_matrix_file_literal(capsys, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("13,8;8,5\n")
    code, out, _ = run(capsys, "zpir", "--m", f"@{f}")
    assert code == EXIT_PASS and json.loads(out)["pass"]


def test_multiplier_reports(capsys):
    code, out, _ = run(capsys, "delta", "--r", "0.3", "--samples", "50")
    data = json.loads(out)
    assert code == EXIT_PASS and data["worst_deviation"] < 1e-9
    code, out, _ = run(capsys, "theta", "--samples", "5", "--matrix", "0,-1;1,0")
    assert code == EXIT_PASS and json.loads(out)["matrix"]["deviation"] < 1e-9


def test_other_certificates(capsys):
    for argv in (["bms", "--samples", "3"], ["identities"], ["krons", "--c", "4", "--d", "5"]):
        assert run(capsys, *argv)[0] == EXIT_PASS


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("SIEGELMULT_TOL", "abc")
    assert run(capsys, "delta", "--samples", "2")[0] == EXIT_USAGE
    monkeypatch.setenv("SIEGELMULT_TOL", "1e-30")
    assert run(capsys, "delta", "--samples", "5")[0] == EXIT_FAIL


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "siegelmult.cli", "w", "--m", "0,-1;1,0", "--n", "0,-1;1,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("w=0")
