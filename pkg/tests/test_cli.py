import csv
import json

import pytest

import cases
from conftest import DATA
from efgpath.cli import main

EX1 = str(DATA / "example1.game.json")
EX3 = str(DATA / "example3.game.json")


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def _point(point):
    return {k: [float(x) for x in v] for k, v in point.items()}


def test_validate(tmp_path, capsys):
    assert main(["validate", EX1]) == 0
    assert "valid" in capsys.readouterr().out
    doc = json.loads(open(EX1).read())
    doc["infosets"]["p3.1"]["actions"] = ["N", "X"]
    assert main(["validate", _write(tmp_path / "bad.json", doc)]) == 2
    assert "p3.1" in capsys.readouterr().out
    assert main(["validate", str(tmp_path / "missing.json")]) == 1
    (tmp_path / "junk.json").write_text("{")
    assert main(["validate", str(tmp_path / "junk.json")]) == 1


def test_validate_reports_recall_violation(tmp_path, capsys):
    doc = {"num_players": 1, "root": "r", "nodes": {
        "r": {"kind": "decision", "owner": 1, "infoset": "i1",
              "actions": [{"label": "L", "child": "x"}, {"label": "R", "child": "y"}]},
        "x": {"kind": "decision", "owner": 1, "infoset": "i2",
              "actions": [{"label": "l", "child": "x1"}, {"label": "r", "child": "x2"}]},
        "y": {"kind": "decision", "owner": 1, "infoset": "i2",
              "actions": [{"label": "l", "child": "y1"}, {"label": "r", "child": "y2"}]},
        **{k: {"kind": "terminal", "payoffs": [0]} for k in ("x1", "x2", "y1", "y2")}},
        "infosets": {"i1": {"player": 1, "members": ["r"], "actions": ["L", "R"]},
                     "i2": {"player": 1, "members": ["x", "y"], "actions": ["l", "r"]}}}
    assert main(["validate", _write(tmp_path / "forget.json", doc)]) == 2
    assert "i2" in capsys.readouterr().out


def test_solve_and_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "eq.json"
    trace = tmp_path / "trace.csv"
    assert main(["solve", EX1, "--trace", str(trace), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "p1.1" in text and "steps" in text
    rows = list(csv.reader(trace.open()))
    assert rows[0][0] == "iter" and rows[1][0] == "0"
    assert main(["verify", EX1, "--profile", str(out)]) == 0


def test_solve_sgpe_and_forced_failure(capsys):
    assert main(["solve", EX3, "--refinement", "sgpe", "--method", "cqpm"]) == 0
    assert main(["solve", EX3, "--max-iters", "1"]) == 3


def test_solve_trace_bytes_repeat(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["solve", EX1, "--trace", str(a), "--alpha-norm", "1e-4", "--seed", "3"])
    main(["solve", EX1, "--trace", str(b), "--alpha-norm", "1e-4", "--seed", "3"])
    assert a.read_bytes() == b.read_bytes()


def test_verify_exit_codes(tmp_path, capsys):
    from efgpath.fixtures import EXAMPLE1_TYPE3
    good = _write(tmp_path / "t3.json", _point(EXAMPLE1_TYPE3))
    assert main(["verify", EX1, "--profile", good, "--tol", "1e-9"]) == 0
    bad = _write(tmp_path / "nn.json", _point(cases.EXAMPLE3_NASH_NOT_SGPE[1]))
    assert main(["verify", EX3, "--profile", bad]) == 0
    assert main(["verify", EX3, "--profile", bad, "--refinement", "sgpe-semiseq"]) == 4
    assert main(["verify", EX3, "--profile", bad, "--refinement", "sgpe"]) == 4
    (tmp_path / "broken.json").write_text("[1, 2")
    assert main(["verify", EX1, "--profile", str(tmp_path / "broken.json")]) == 1
    wrong = _write(tmp_path / "wrong.json", {"p1.1": [1, 0, 0]})
    assert main(["verify", EX1, "--profile", wrong]) == 1
    report = tmp_path / "r.json"
    assert main(["verify", EX1, "--profile", good, "--report", str(report)]) == 0
    assert json.loads(report.read_text())["passed"] is True


def test_verify_accepts_full_assessment(tmp_path):
    from efgpath.fixtures import EXAMPLE3_SGPE
    doc = {"beta": _point(EXAMPLE3_SGPE[2]),
           "beta_tilde": _point(EXAMPLE3_SGPE[2]),
           "mu": {"p1.2": [0.5, 0.5]}}
    assert main(["verify", EX3, "--profile", _write(tmp_path / "a.json", doc),
                 "--refinement", "sgpe"]) == 0


def test_generate(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["generate", "--family", "A", "--n", "3", "--branching", "2,3,3", "--m", "1,1,2",
                 "--seed", "4", "-o", str(out)]) == 0
    assert main(["validate", str(out)]) == 0
    again = tmp_path / "g2.json"
    main(["generate", "--family", "A", "--n", "3", "--branching", "2,3,3", "--seed", "4", "-o", str(again)])
    assert out.read_bytes() == again.read_bytes()
    assert main(["generate", "--family", "A", "--n", "3", "--branching", "2,3,3", "--m", "1,1,3"]) == 1
    spec = _write(tmp_path / "spec.json", {"family": "B", "n": 4, "branching": [2, 2, 5, 3],
                                          "m": [1, 2, 2, 5]})
    assert main(["generate", "--spec", spec, "-o", str(tmp_path / "b.json")]) == 0


def test_bench_shapes(tmp_path):
    spec = _write(tmp_path / "spec.json", {"rows": [
        {"family": "A", "n": 3, "m": [1, 1, 2], "branching": [2, 3, 3], "instances": 3}],
        "methods": ["logm"]})
    out, per = tmp_path / "r.csv", tmp_path / "i.csv"
    assert main(["bench", "--spec", spec, "--out", str(out), "--instances", str(per)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["family", "n", "m", "branching", "L", "method", "refinement", "stat",
                       "time_s", "iters"]
    assert [r[7] for r in rows[1:]] == ["avg", "min", "max"]
    assert rows[1][:7] == ["A", "3", "1 1 2", "2 3 3", "1", "logm", "nash"]
    inst = list(csv.reader(per.open()))
    assert [r[8] for r in inst[1:]] == ["ok"] * 3


def test_bench_failures_and_empty(tmp_path):
    spec = _write(tmp_path / "spec.json", {"rows": [
        {"family": "A", "n": 3, "branching": [2, 3, 3], "instances": 2}], "max_iters": 1,
        "methods": ["cqpm"]})
    out = tmp_path / "r.csv"
    assert main(["bench", "--spec", spec, "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert all(r[8] == "-" and r[9] == "-" for r in rows[1:])
    empty = _write(tmp_path / "empty.json", [])
    assert main(["bench", "--spec", empty, "--out", str(out)]) == 0
    assert out.read_text() == ",".join(["family", "n", "m", "branching", "L", "method",
                                        "refinement", "stat", "time_s", "iters"]) + "\n"


@pytest.mark.parametrize("doc", [
    {"rows": [{"family": "A", "n": 3}]},
    {"rows": [{"family": "A", "n": 3, "branching": [2, 3, 3], "m": [1, 1, 3]}]},
    {"rows": [], "methods": ["newton"]},
    {"rows": "nope"},
])
def test_bench_schema_errors(tmp_path, doc):
    spec = _write(tmp_path / "spec.json", doc)
    assert main(["bench", "--spec", spec, "--out", str(tmp_path / "r.csv")]) == 1


def test_bench_workers_keep_order(tmp_path):
    spec = _write(tmp_path / "spec.json", {"rows": [
        {"family": "C", "n": 2, "branching": [2, 2], "L": 2, "instances": 2},
        {"family": "B", "n": 3, "branching": [2, 2, 2], "instances": 2}], "methods": ["logm"]})
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    pa, pb = tmp_path / "pa.csv", tmp_path / "pb.csv"
    main(["bench", "--spec", spec, "--out", str(a), "--instances", str(pa)])
    main(["bench", "--spec", spec, "--out", str(b), "--instances", str(pb), "--workers", "2"])
    strip = lambda p: [r[:8] + r[9:] for r in csv.reader(p.open())]
    assert strip(a) == strip(b)
    keep = lambda p: [r[:9] + r[10:] for r in csv.reader(p.open())]
    assert keep(pa) == keep(pb)
