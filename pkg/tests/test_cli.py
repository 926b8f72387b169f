import json
import subprocess
import sys
from pathlib import Path

import pytest

from qkwhitney.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def strip_times(report):
    report = json.loads(json.dumps(report))
    report["summary"].pop("wall_time_ms")
    for r in report["results"]:
        r.pop("wall_time_ms")
    return report


def test_rank_one_all_checks(capsys):
    code, report = run_json(capsys, "--n", "1", "--qdeg", "3")
    assert code == 0
    assert set(report) == {"config", "results", "summary"}
    s = report["summary"]
    assert s["failed"] == 0 and s["passed"] == s["total"] > 0
    assert {"name", "params", "status", "residual", "wall_time_ms"} <= set(report["results"][0])


def test_whitney_selection(capsys):
    code, report = run_json(capsys, "--n", "2", "--checks", "whitney*")
    assert code == 0
    assert {r["name"] for r in report["results"]} == {"whitney_rel1", "whitney_rel2", "whitney_rel3"}


def test_unknown_check(capsys):
    assert main(["--n", "2", "--checks", "nonexistent"]) == 2
    err = capsys.readouterr().err
    assert "available checks" in err and "whitney_rel1" in err


def test_report_determinism(capsys):
    _, a = run_json(capsys, "--n", "2", "--checks", "borel,quantum_inverse")
    _, b = run_json(capsys, "--n", "2", "--checks", "borel,quantum_inverse")
    assert strip_times(a) == strip_times(b)


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nn = 1\nqdeg=2\nchecks = quantum_inverse, borel\nseed2 = 5\n")
    code, report = run_json(capsys, "--config", str(cfg), "--qdeg", "4")
    assert code == 0
    assert report["config"]["n"] == 1 and report["config"]["qdeg"] == 4 and report["config"]["seed2"] == 5
    assert {r["name"] for r in report["results"]} == {"quantum_inverse", "borel"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("color = blue\n")
    assert main(["--config", str(bad)]) == 2


def test_invalid_config_values(capsys):
    assert main(["--n", "5"]) == 2
    assert main(["--qdeg", "0"]) == 2
    assert main(["--n", "1", "--seed", "3", "--seed2", "3", "--checks", "qam_am"]) == 0
    assert "trivially" in capsys.readouterr().err


def test_markdown_and_out(tmp_path):
    out = tmp_path / "r.md"
    assert main(["--n", "1", "--format", "md", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# qkwhitney report") and "passed" in text
    assert main(["--n", "1", "--out", str(tmp_path / "missing" / "r.json")]) == 2


def test_dumps(capsys):
    assert main(["--list-checks"]) == 0
    assert "whitney_rel3" in capsys.readouterr().out
    assert main(["--dump-qbg", "--n", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["n"] == 1
    assert main(["--dump-chain", "-1"]) == 0
    assert json.loads(capsys.readouterr().out)["steps"] == [{"gamma": [-2], "level": 1}]
    assert main(["--dump-records", "-1", "--start", "-1"]) == 0
    rows = [json.loads(r) for r in capsys.readouterr().out.splitlines()]
    assert rows[1]["down"] == [1]


def test_golden_files(capsys):
    code, report = run_json(capsys, "--n", "1", "--checks", "rank1_oracle", "--golden", str(GOLDEN))
    assert code == 0
    golden = [r for r in report["results"] if r["name"] == "golden"]
    assert len(golden) == 2 and all(r["status"] == "pass" for r in golden)


def test_failing_run_exit_status(tmp_path, capsys):
    data = json.loads((GOLDEN / "line_bundles_n1.json").read_text())
    data["classes"]["(1)"] = "O^[1]: 1"
    (tmp_path / "bad.json").write_text(json.dumps(data))
    code, report = run_json(capsys, "--n", "1", "--checks", "rank1_oracle", "--golden", str(tmp_path))
    assert code == 1 and report["summary"]["failed"] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qkwhitney", "--list-checks"], capture_output=True, text=True)
    assert proc.returncode == 0 and "borel" in proc.stdout
