import json

import pytest

from smtlab.cli import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_generator_poset(capsys):
    code, out, _ = run(capsys, "enumerate", "--poset", "H",
                       "--n", "2", "--m", "3", "--q", "3")
    assert code == 0
    assert len(out.strip().splitlines()) == 24


def test_enumerate_bounded_lattice(capsys):
    code, out, _ = run(capsys, "enumerate", "--poset", "D",
                       "--n", "2", "--m", "3", "--q", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 26
    assert lines[0] == "TOP" and lines[-1] == "BOT"


def test_enumerate_standard_bidegree(capsys):
    code, out, _ = run(capsys, "enumerate", "--standard", "--bidegree", "1,1")
    assert code == 0
    assert len(out.strip().splitlines()) == 9


def test_straighten_mixed_pair(capsys):
    code, out, _ = run(capsys, "straighten", "u[1,2]*xi[1,2]")
    assert code == 0
    assert out.strip() == "1 p[1,2|1,2]"


def test_straighten_golden_pair(capsys):
    code, out, _ = run(capsys, "straighten", "p[1|2]*p[2|1]")
    assert code == 0
    assert out.strip().splitlines() == ["1 p[2|2]*p[1|1]", "-1 p[1,2|1,2]"]


def test_straighten_standard_input(capsys):
    code, out, _ = run(capsys, "straighten", "p[1|1]")
    assert code == 0
    assert out.strip() == "1 p[1|1]"


def test_straighten_graded(capsys):
    code, out, _ = run(capsys, "straighten", "--graded", "u[1,2]*xi[1,2]")
    assert code == 0
    assert out.strip() == "1 p[1,2|1,2]*BOT"


def test_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "straighten", "p[1|")
    assert code == 2
    assert "error" in err


def test_bad_space_exits_2(capsys):
    code, _, _ = run(capsys, "enumerate", "--poset", "H", "--n", "3",
                     "--m", "3", "--q", "3")
    assert code == 2


def test_bad_usage_exits_2(capsys):
    assert run(capsys, "enumerate", "--poset", "X")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_resource_cap_exits_4(capsys):
    code, _, err = run(capsys, "verify", "--suite", "rank",
                       "--cap-lattice", "5")
    assert code == 4
    assert "cap" in err


def test_threads_env_validated(capsys, monkeypatch):
    monkeypatch.setenv("SMT_LAB_THREADS", "0")
    code, _, _ = run(capsys, "verify", "--suite", "rank")
    assert code == 2
    monkeypatch.setenv("SMT_LAB_THREADS", "2")
    code, _, _ = run(capsys, "verify", "--suite", "rank")
    assert code == 0


def test_verify_rank_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rank", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["passed"] is True
    assert {c["name"] for c in payload["checks"]} == {"chains-H", "chains-D"}


def test_verify_reports_are_byte_identical(capsys):
    _, out1, _ = run(capsys, "verify", "--suite", "relations",
                     "--format", "json", "--seed", "17", "--maxdeg", "3")
    _, out2, _ = run(capsys, "verify", "--suite", "relations",
                     "--format", "json", "--seed", "17", "--maxdeg", "3")
    assert out1 == out2


def test_verify_csv_format(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rank", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,passed,details"
    assert len(lines) == 3


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0
