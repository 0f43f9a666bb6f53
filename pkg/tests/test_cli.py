import csv
import json

import pytest

from halfguard.cli import RunReport, main
from halfguard.families import FamilySpec, generate
from halfguard.geom import write_polygon_text

SQUARE_TEXT = "4\n0 0\n1 0\n1 1\n0 1\n"


@pytest.fixture
def square(tmp_path):
    path = tmp_path / "square.poly"
    path.write_text(SQUARE_TEXT)
    return str(path)


def _family_file(tmp_path, name, n, seed=0):
    path = tmp_path / f"{name}-{n}-{seed}.poly"
    path.write_text(write_polygon_text(generate(FamilySpec(name, n, seed=seed))))
    return str(path)


def test_classify_square(square, capsys):
    assert main(["classify", square]) == 0
    out = capsys.readouterr().out.split()
    assert {"orthogonal", "staircase", "x-monotone"} <= set(out)


def test_classify_spiral(tmp_path, capsys):
    assert main(["classify", _family_file(tmp_path, "RandomSpiral", 3)]) == 0
    assert "spiral" in capsys.readouterr().out.split()


def test_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.poly"
    bad.write_text("3\n0 0\n1 x\n0 1\n")
    assert main(["classify", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_generate_round_trips(tmp_path, capsys):
    out = tmp_path / "g.poly"
    assert main(["generate", "--family", "OrthLower", "--n", "8", "-o", str(out)]) == 0
    assert main(["classify", str(out)]) == 0
    assert "orthogonal" in capsys.readouterr().out


def test_solve_staircase_with_oracle(tmp_path, capsys):
    path = _family_file(tmp_path, "RandomStaircase", 2, seed=1)
    report = tmp_path / "r.json"
    assert main(["solve", path, "--alg", "staircase", "--oracle", "--json", str(report)]) == 0
    last = capsys.readouterr().out.strip().splitlines()[-1]
    assert last.startswith("PASS")
    data = json.loads(report.read_text())
    assert set(RunReport.header()) <= set(data)
    assert data["covered"] and data["guard_count"] <= 2 * data["opt"]
    assert len(data["guards"]) == data["guard_count"]


def test_solve_class_mismatch_exits_3(tmp_path, capsys):
    assert main(["solve", _family_file(tmp_path, "RandomSpiral", 2), "--alg", "lshape"]) == 3
    assert "lshape" in capsys.readouterr().err


def test_solve_mountain_prints_roof_guards(tmp_path, capsys):
    assert main(["solve", _family_file(tmp_path, "MountainMedium", 12), "--alg", "mountain"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    guards = lines[:-1]
    assert guards and {g.split()[2] for g in guards} == {"10"}


def test_oracle_command(square, capsys):
    assert main(["oracle", square]) == 0
    assert "OPT=1" in capsys.readouterr().out


def test_oracle_timeout_exits_4(tmp_path, monkeypatch):
    monkeypatch.setenv("HALFGUARD_TIMEOUT_SECS", "0.000000001")
    assert main(["oracle", _family_file(tmp_path, "RandomStaircase", 5, seed=2)]) == 4


def test_render_writes_svg(tmp_path):
    out = tmp_path / "s.svg"
    path = _family_file(tmp_path, "RandomStaircase", 3)
    assert main(["render", path, "-o", str(out), "--alg", "staircase", "--regions"]) == 0
    text = out.read_text()
    assert text.startswith("<?xml") and "</svg>" in text


def test_batch_rows_follow_spec_order(tmp_path):
    spec = tmp_path / "batch.json"
    spec.write_text(json.dumps({"runs": [
        {"family": "RandomSpiral", "sizes": [2], "seeds": 3, "algorithms": ["spiral"]},
        {"family": "OrthLower", "n": 8, "algorithms": ["lshape", "fisk"]},
    ]}))
    out = tmp_path / "out.csv"
    assert main(["batch", str(spec), "-o", str(out), "--jobs", "2"]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["algorithm"] for r in rows] == ["SpiralDP"] * 3 + ["LShape", "FiskDouble"]
    assert [r["instance"].split(":")[-1] for r in rows[:3]] == ["seed=0", "seed=1", "seed=2"]
    assert all(r["covered"] == "True" for r in rows)


def test_batch_records_failures_in_row(tmp_path):
    spec = tmp_path / "batch.json"
    spec.write_text(json.dumps({"runs": [{"family": "RandomSpiral", "n": 2, "algorithms": ["lshape"]}]}))
    out = tmp_path / "out.csv"
    assert main(["batch", str(spec), "-o", str(out)]) == 1
    (row,) = list(csv.DictReader(out.open()))
    assert row["status"] == "ERROR" and row["error"]


def test_empty_batch_gives_header_only(tmp_path):
    spec = tmp_path / "empty.json"
    spec.write_text("")
    out = tmp_path / "out.csv"
    assert main(["batch", str(spec), "-o", str(out)]) == 0
    assert out.read_text().strip() == ",".join(RunReport.header())
