import json
import subprocess
import sys

import pytest

from mnep import io
from mnep.cli import main

from instances import two_arc


@pytest.fixture
def two_arc_file(tmp_path):
    path = tmp_path / "two.json"
    io.write_instance(path, two_arc(4))
    return path


def test_lemke_solve_reports_one_pivot(two_arc_file, tmp_path, capsys):
    out = tmp_path / "sol.json"
    assert main(["solve", "--algo", "lemke", "-i", str(two_arc_file), "-o", str(out)]) == 0
    assert "1 pivot" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    assert doc["classes"][0]["x"] == {"a1": "3", "a2": "1"}
    assert doc["omega"] == "0"
    assert doc["meta"]["algorithm"] == "lemke" and doc["meta"]["pivots"] == 1


@pytest.mark.parametrize("algo", ["arrangement", "brute"])
def test_enumeration_solvers(algo, two_arc_file, tmp_path):
    out = tmp_path / "sol.json"
    assert main(["solve", "--algo", algo, "-i", str(two_arc_file), "-o", str(out)]) == 0
    assert main(["verify", "-i", str(two_arc_file), "-s", str(out)]) == 0


def test_verify_rejects_broken_conservation(two_arc_file, tmp_path, capsys):
    out = tmp_path / "sol.json"
    main(["solve", "-i", str(two_arc_file), "-o", str(out)])
    doc = json.loads(out.read_text())
    doc["classes"][0]["x"]["a1"] = "2"
    out.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", "-i", str(two_arc_file), "-s", str(out)]) == 1
    text = capsys.readouterr().out
    assert "REJECTED" in text and "violation:" in text


def test_verify_flow_only_document(two_arc_file, tmp_path, capsys):
    sol = tmp_path / "flows.json"
    sol.write_text(json.dumps({"classes": [{"x": {"a1": "3", "a2": "1"}}]}))
    assert main(["verify", "-i", str(two_arc_file), "-s", str(sol)]) == 0
    assert "complementarity: skipped" in capsys.readouterr().out


def test_parse_failures_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["solve", "-i", str(bad), "-o", str(tmp_path / "o.json")]) == 2
    assert main(["solve", "-i", str(tmp_path / "missing.json"), "-o", str(tmp_path / "o.json")]) == 2
    assert main(["verify", "-i", str(bad), "-s", str(bad)]) == 2
    assert main(["gen", "--n", "1", "--classes", "1", "-o", str(tmp_path / "g.json")]) == 2


def test_size_guard_exit_3(tmp_path):
    grid = tmp_path / "grid.json"
    assert main(["gen", "--n", "3", "--classes", "2", "--seed", "1", "-o", str(grid)]) == 0
    assert main(["solve", "--algo", "brute", "-i", str(grid), "-o", str(tmp_path / "o.json")]) == 3
    assert main(["solve", "--algo", "arrangement", "-i", str(grid), "-o", str(tmp_path / "o.json")]) == 3


def test_internal_error_exit_4(two_arc_file, tmp_path, monkeypatch):
    from mnep.errors import InfiniteRayError

    def boom(instance):
        raise InfiniteRayError("no blocking variable")

    monkeypatch.setattr("mnep.lemke.lemke_solve", boom)
    assert main(["solve", "-i", str(two_arc_file), "-o", str(tmp_path / "o.json")]) == 4


def test_gen_is_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["gen", "--n", "4", "--classes", "2", "--seed", "7", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert (len(doc["vertices"]), len(doc["arcs"])) == (16, 48)


def test_bench_report(tmp_path):
    report = tmp_path / "report.md"
    assert main(["bench", "--grids", "2,3", "--classes", "2", "--seeds", "2", "-o", str(report)]) == 0
    text = report.read_text()
    assert "demand: uniform integer in [1, 10]" in text
    assert "| 2 | 2 x 2 | 4 | 8 |" in text and "| 2 | 3 x 3 | 9 | 24 |" in text
    assert "INCOMPLETE" not in text


def test_console_entry_point(two_arc_file, tmp_path):
    out = tmp_path / "sol.json"
    proc = subprocess.run([sys.executable, "-m", "mnep.cli", "solve", "-i", str(two_arc_file),
                           "-o", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "mnep.cli", "nonsense"], capture_output=True)
    assert proc.returncode == 2
