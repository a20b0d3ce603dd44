import json

import pytest

from boxball.cli import main
from boxball.state import BoxBallState
from boxball.verify import InvariantReport
from conftest import naive_tts


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_simulate_example(capsys):
    code, out = run(capsys, "simulate", "--state", "0010011011")
    assert code == 0
    assert out.splitlines() == [
        "t=0 : 0 0 1 0 0 1 1 0 1 1 0 0 0 0 0",
        "t=1 : 0 0 0 1 0 0 0 1 0 0 1 1 1 0 0",
    ]


def test_simulate_vacuum(capsys):
    code, out = run(capsys, "simulate", "--state", "000", "--steps", "5")
    assert code == 0
    assert out.splitlines() == [f"t={t}:" for t in range(6)]


def test_simulate_json(capsys):
    code, out = run(capsys, "simulate", "--state", "11011", "--steps", "3", "--format", "json")
    rows = json.loads(out)["runs"][0]
    cells = [1, 1, 0, 1, 1]
    expected = []
    for _ in range(4):
        expected.append(str(BoxBallState.from_cells(cells)))
        cells = naive_tts(cells)
    assert [r["state"] for r in rows] == expected
    assert expected[1] == "100111@2"


def test_invariants_example(capsys):
    code, out = run(capsys, "invariants", "--state", "0010011011", "--steps", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)["reports"][0]
    assert all(r["shape"] == [3, 1, 1] for r in data["records"])
    assert all(r["energy"]["E"] == {"1": 3, "2": 4, "3": 5, "4": 5, "5": 5} for r in data["records"])
    report = InvariantReport.from_json(data)
    assert report.to_json() == data


def test_invariants_single_ball(capsys):
    code, out = run(capsys, "invariants", "--state", "1", "--lmax", "3", "--format", "json")
    rec = json.loads(out)["reports"][0]["records"][0]
    assert rec["shape"] == [1]
    assert rec["energy"]["E"] == {"1": 1, "2": 1, "3": 1}


def test_verify_example(capsys):
    code, out = run(capsys, "verify", "--state", "0010011011")
    assert code == 0
    assert "ALL PASS" in out


def test_verify_seeded_json_is_deterministic(capsys):
    _, first = run(capsys, "verify", "--seed", "7", "--count", "20", "--format", "json")
    _, second = run(capsys, "verify", "--seed", "7", "--count", "20", "--format", "json")
    assert first == second
    data = json.loads(first)
    assert data["passed"]
    assert InvariantReport.from_json(data).to_json() == data


def test_verify_detects_corrupted_carrier(capsys):
    code, out = run(capsys, "verify", "--mutate", "--seed", "1", "--count", "30", "--format", "json")
    assert code == 1
    failed = [v for v in json.loads(out)["verdicts"] if not v["passed"]]
    assert failed
    cx = failed[0]["counterexample"]
    assert set(cx) >= {"state", "step", "l"}


def test_render_example(capsys):
    code, out = run(capsys, "render", "--state", "0010011011")
    lines = out.splitlines()
    assert lines[2] == "parens  ( ) 0 ( ( ) ( ( ) ) )"
    assert lines[3] == "depths  1 1   3 1 1 2 1 1 2 3"
    assert "stack permutation  1 3 5 4 2" in lines


def test_render_nested(capsys):
    code, out = run(capsys, "render", "--state", "111000", "--format", "json")
    data = json.loads(out)["renders"][0]
    assert data["walk"]["steps"] == "UUURRR"
    assert data["stack_permutation"] == [3, 2, 1]
    assert data["shape"] == [1, 1, 1]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--state", "102"],
        ["verify", "--state", "10", "--seed", "3"],
        ["simulate", "--steps", "-1"],
        ["render", "--lmax", "0"],
        ["explode"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
