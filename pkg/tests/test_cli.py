import json
import math
from pathlib import Path

import pytest

from fpquiver.cli import main
from fpquiver.report import SCHEMA, verify_certificate

QUIVERS = Path(__file__).resolve().parent.parent / "quivers"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_fpdim_four_vertex(capsys):
    code, doc = run(capsys, "fpdim", QUIVERS / "four_vertex.q", "--cap", "2,2,2,2", "--field", "2")
    assert code == 0 and doc["schema"] == SCHEMA
    res = doc["results"]
    assert abs(res["best"] - (1 + math.sqrt(2))) < 1e-9
    assert sorted(sum(res["adjacency"], [])) == [0, 1, 1, 2]
    assert verify_certificate(doc) == []


def test_tampered_certificate_is_caught(capsys):
    _, doc = run(capsys, "fpdim", QUIVERS / "four_vertex.q", "--cap", "1")
    doc["certificate"]["rho"] += 0.5
    doc["certificate"]["adjacency"][0][0] += 1
    problems = verify_certificate(doc)
    assert any("rho" in p for p in problems) and any("adjacency" in p for p in problems)


def test_bricks_report_and_recheck(capsys, tmp_path):
    out = tmp_path / "bricks.json"
    code, _ = run(capsys, "--out", out, "bricks", QUIVERS / "tube3.q")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["results"]["count"] == 6 and doc["results"]["exhaustive"]
    code, re = run(capsys, "recheck", out)
    assert code == 0 and re["results"]["passed"]
    doc["certificate"]["bricks"].append(doc["certificate"]["bricks"][0])
    out.write_text(json.dumps(doc))
    code, re = run(capsys, "recheck", out)
    assert code == 2 and not re["results"]["passed"]


def test_out_after_subcommand(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, printed = run(capsys, "formula", "case2", "--nmax", "4", "--out", out)
    assert code == 0 and printed is None
    assert abs(json.loads(out.read_text())["results"]["value"] - 4.236067977) < 1e-9


def test_formulas(capsys):
    _, doc = run(capsys, "formula", "case3", "--nmax", "2", "--s", "1")
    assert abs(doc["results"]["value"] - (1 + math.sqrt(2))) < 1e-10
    _, doc = run(capsys, "formula", "root", "--factors", "0:1,2:1")
    assert abs(doc["results"]["value"] - (1 + math.sqrt(2))) < 1e-10
    assert run(capsys, "formula", "case3", "--nmax", "2")[0] == 1
    assert run(capsys, "formula", "root", "--factors", "1:1,1.5:1")[0] == 1


def test_polyext(capsys):
    _, doc = run(capsys, "polyext", "--r", "2", "--lambda", "1,1/2", "--mu", "1,1/2")
    assert doc["results"]["ext1"] == 2
    _, doc = run(capsys, "polyext", "--lambda", "0", "--mu", "1", "--field", "3")
    assert doc["results"]["ext1"] == 0
    assert run(capsys, "polyext", "--r", "3", "--lambda", "1", "--mu", "1")[0] == 1


def test_check(capsys, tmp_path):
    code, doc = run(capsys, "check", QUIVERS / "a2_loops.q")
    assert code == 0 and doc["results"]["loop_commutativity"]
    free = tmp_path / "free.q"
    free.write_text("vertices 1\narrow g 1 1\n")
    code, doc = run(capsys, "check", free)
    assert code == 1 and not doc["results"]["admissible"]


def test_loopcheck(capsys):
    code, doc = run(capsys, "loopcheck", QUIVERS / "a2_loops.q", "--cap", "2")
    assert code == 0 and doc["results"]["passed"]
    assert doc["results"]["self_ext"] == {"1": {"ext": 1, "loops": 1}, "2": {"ext": 2, "loops": 2}}


def test_verify(capsys):
    code, doc = run(capsys, "verify", "ex6.4")
    assert code == 0 and doc["results"]["passed"]


@pytest.mark.parametrize("argv", [
    ["fpdim"],
    ["verify", "nonsense"],
    ["bricks", "does-not-exist.q"],
    ["fpdim", str(QUIVERS / "four_vertex.q"), "--cap", "1,2"],
    ["fpdim", str(QUIVERS / "four_vertex.q"), "--field", "6"],
    ["bricks", str(QUIVERS / "four_vertex.q"), "--field", "Q"],
])
def test_input_errors_exit_one(argv, capsys):
    with pytest.raises(SystemExit) as e:
        raise SystemExit(main(argv))
    assert e.value.code == 1


def test_parse_error_message(capsys, tmp_path):
    bad = tmp_path / "bad.q"
    bad.write_text("vertices 1 2\narrow a 2 1\nrel a\n")
    assert main(["check", str(bad)]) == 1
    assert "line 3, column 5" in capsys.readouterr().err
