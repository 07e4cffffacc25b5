import json

import pytest

from iboxes.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_worked_example(capsys):
    code, out, _ = run(capsys, "analyze", "--cartan", "A2", "--word", "1,2,1", "--chain", "1;RR")
    assert code == 0
    data = json.loads(out)
    m = data["matrix"]
    assert m["exchangeable"] == [[1, 1]]
    col = {tuple(b): row[0] for b, row in zip(m["boxes"], m["entries"])}
    assert (col[(2, 2)], col[(1, 3)]) == (-1, 1)
    assert data["vertical"][0]["context"] == "<"


def test_analyze_g2_dot(capsys):
    code, out, _ = run(capsys, "analyze", "--cartan", "G2", "--word", "1,2,1,2,1,2", "--chain", "1;RRRRR",
                       "--format", "dot")
    assert code == 0 and out.startswith("digraph") and 'label="3"' in out


def test_analyze_length_one(capsys):
    data = json.loads(run(capsys, "analyze", "--cartan", "A2", "--word", "1")[1])
    assert data["frozen"] == [[1, 1]] and data["matrix"]["entries"] == [[]]


def test_move_and_enumerate(capsys):
    code, out, _ = run(capsys, "move", "--word", "1,2,1", "--chain", "2;RL", "--k", "2")
    data = json.loads(out)
    assert (data["kind"], data["old"], data["new"]) == ("mutation", [3, 3], [1, 1])
    assert json.loads(run(capsys, "enumerate", "--word", "1,2,1")[1])["count"] == 2


def test_verify_line_and_exit(capsys):
    code, out, _ = run(capsys, "verify", "--cartan", "G2", "--word", "1,2,1,2,1,2")
    assert code == 0 and out.strip() == "32 chains, 0 failures"


def test_family_round_trip(capsys, tmp_path):
    args = ["analyze", "--cartan", "A3", "--word", "1,2,3,1,2,1", "--chain", "3;RLRLR"]
    first = run(capsys, *args)[1]
    p = tmp_path / "fam.json"
    p.write_text(first)
    again = run(capsys, *args[:5], "--family", str(p))[1]
    assert json.loads(again)["family"] == json.loads(first)["family"]
    p.write_text(json.dumps(json.loads(first)["family"]))
    assert json.loads(run(capsys, *args[:5], "--family", str(p))[1])["matrix"] == json.loads(first)["matrix"]


def test_output_is_deterministic(capsys):
    args = ["enumerate", "--cartan", "B2", "--word", "1,2,1,2,1"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


@pytest.mark.parametrize("cmd", ["matrix", "quiver", "chain"])
def test_other_commands(capsys, cmd):
    code, out, _ = run(capsys, cmd, "--cartan", "B2", "--word", "1,2,1,2", "--chain", "2;RLR")
    assert code == 0 and out


def test_mutate_and_relations(capsys):
    code, out, _ = run(capsys, "mutate", "--cartan", "A2", "--word", "1,2,1", "--box", "1,1")
    col = json.loads(out)["entries"]
    assert [r[0] for r in col] == [0, 1, -1]
    data = json.loads(run(capsys, "relations", "--cartan", "A2", "--word", "1,2,1", "--box", "1,1")[1])
    assert data["mutation"] == {"in": [[[1, 3], 1]], "out": [[[2, 2], 1]]}


def test_hat_word(capsys):
    data = json.loads(run(capsys, "chain", "--hat-word", "1,2", "--star", "1:2,2:1", "--range", "1:4")[1])
    assert data["boxes"][-1] == [1, 4]


def test_errors_name_the_problem(capsys):
    code, _, err = run(capsys, "chain", "--word", "1,2,1", "--chain", "3;R")
    assert code == 2 and "envelope escapes range" in err
    code, _, err = run(capsys, "matrix", "--word", "1,2,1")
    assert code == 2 and "--cartan" in err
    code, _, err = run(capsys, "chain", "--word", "1,x")
    assert code == 2 and "'x'" in err


def test_non_maximal_family_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"range": [1, 3], "boxes": [[1, 1], [2, 2]]}))
    code, _, err = run(capsys, "analyze", "--cartan", "A2", "--word", "1,2,1", "--family", str(p))
    assert code == 2 and "maximal" in err
