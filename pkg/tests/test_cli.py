import json

import pytest

from ppgroup.main import build_parser, cli_main
from ppgroup.services.action import Generator
from ppgroup.services.parsing import parse_sequence, parse_word
from ppgroup.services.projective import ExtRational, phi_of_sequence
from ppgroup.services.sequences import EventuallyPeriodicSeq


def run(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


def test_all_commands_are_registered():
    parser = build_parser()
    subparsers = next(a for a in parser._actions if a.dest == "command")
    assert set(subparsers.choices) == {
        "normalize", "decide", "equal", "eval", "render", "expand-finite", "piecewise",
        "verify-relations", "crosscheck", "phi",
    }


def test_decide_identity(capsys):
    code, out, _ = run(capsys, "decide", "a a^-1")
    assert code == 0
    assert out == "identity"


def test_decide_non_identity(capsys):
    code, out, _ = run(capsys, "decide", "c")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "not identity"
    assert "witness: u=10 v=10 n=1" in lines


def test_decide_json(capsys):
    code, out, _ = run(capsys, "decide", "x", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["is_identity"] is False
    assert payload["tree_pair"] == [["00", "01", "1"], ["0", "10", "11"]]


@pytest.mark.parametrize("argv", [["decide", "x z"], ["decide"], ["frobnicate"], ["eval", "c", "101"]])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_errors_name_the_position(capsys):
    _, _, err = run(capsys, "decide", "x z")
    assert "position 2" in err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "y[00] x")
    assert code == 0
    assert out.splitlines()[-1] == "x | y[0]"


def test_normalize_with_trace(capsys):
    code, out, _ = run(capsys, "normalize", "y x", "--trace")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) > 1
    assert all(line.startswith("rule=") for line in lines[:-1])


def test_equal(capsys):
    assert run(capsys, "equal", "y", "x y[0] y[10]^-1 y[11]")[:2] == (0, "true")
    assert run(capsys, "equal", "a", "b")[:2] == (1, "false")
    code, out, _ = run(capsys, "equal", "y", "y", "--json")
    assert code == 0 and json.loads(out) == {"equal": True}


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "c", "10(001)")
    assert code == 0
    assert parse_sequence(out) == EventuallyPeriodicSeq("10", "011")


def test_render(capsys):
    code, out, _ = run(capsys, "render", "c")
    assert code == 0
    assert out.count("•") == 1
    code, out, _ = run(capsys, "render", "c", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph diagram {")


def test_expand_finite(capsys):
    code, out, _ = run(capsys, "expand-finite", "y[01]", "--alphabet", "three")
    assert code == 0
    assert set(parse_word(out).generators()) <= {Generator.x(""), Generator.x("1"), Generator.y("10")}
    code, _, err = run(capsys, "expand-finite", "y[11]", "--alphabet", "three")
    assert code == 2 and err


def test_piecewise(capsys):
    code, out, _ = run(capsys, "piecewise", "c")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("[-inf, 0]: ")
    assert lines[1].startswith("[0, 1]: ")
    assert lines[2].startswith("[1, inf]: ")
    code, out, _ = run(capsys, "piecewise", "c", "--json")
    assert len(json.loads(out)["pieces"]) == 3


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "1/2")
    assert code == 0
    assert phi_of_sequence(parse_sequence(out)) == ExtRational.of("1/2")
    code, out, _ = run(capsys, "phi", "1", "--json")
    assert code == 0
    assert json.loads(out)["from"] == [0, 1]
    code, _, _ = run(capsys, "phi", "(01)")
    assert code == 2


def test_checks(capsys):
    code, out, _ = run(capsys, "verify-relations", "--bound", "1", "--samples", "3", "--seed", "5")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 failed")
    code, out, _ = run(capsys, "crosscheck", "--count", "50", "--seed", "5")
    assert code == 0
    assert out == "50 sequences, 0 mismatches"
    code, _, _ = run(capsys, "verify-relations", "--bound", "12")
    assert code == 2
