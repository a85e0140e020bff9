"""Exit codes and output formats of the vkp command."""

import json

import pytest

from vkp.cli import main
from vkp.parser import parse_formula, parse_term
from vkp.reduction import TraceStep, replay_step
from vkp.typecheck import check

HARROP = "proofs/harrop.vkp"
VISSER = "proofs/visser.vkp"
IPC = "proofs/ipc.vkp"


def test_check_ok(capsys):
    assert main(["check", IPC]) == 0
    out = capsys.readouterr().out
    assert "identity : OK (p -> p)" in out
    assert "beta_demo : OK (q -> q)" in out


def test_check_many_files_ordered(capsys):
    assert main(["check", IPC, HARROP, VISSER]) == 0
    out = capsys.readouterr().out
    # report order follows argv order even though files run concurrently
    assert out.index("identity") < out.index("harrop_principle")
    assert out.index("harrop_principle") < out.index("visser_inj")


def test_check_calculus_override_rejects(capsys):
    assert main(["check", HARROP, "--calculus", "IPC"]) == 1
    out = capsys.readouterr().out
    assert "error at line" in out
    assert "not part of calculus IPC" in out


def test_check_empty_file(tmp_path, capsys):
    f = tmp_path / "empty.vkp"
    f.write_text("calculus IPC\n")
    assert main(["check", str(f)]) == 0
    assert "OK, 0 declarations" in capsys.readouterr().out


def test_check_type_error_position(tmp_path, capsys):
    f = tmp_path / "bad.vkp"
    f.write_text("calculus IPC\n\ndef oops : p -> q := fun (x : p) => x\n")
    assert main(["check", str(f)]) == 1
    out = capsys.readouterr().out
    assert "oops : error at line 3, column" in out


def test_check_missing_file(capsys):
    assert main(["check", "no/such/file.vkp"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_check_parse_error(tmp_path, capsys):
    f = tmp_path / "syntax.vkp"
    f.write_text("calculus IPC\n\ndef broken : p -> := fun\n")
    assert main(["check", str(f)]) == 1
    assert "line" in capsys.readouterr().err


def test_normalize_trace_text(capsys):
    assert main(["normalize", HARROP, "hop_applied", "--trace"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "Beta at root" in out
    assert "Harrop-inj at root" in out
    assert out[-1] == "inj1[~B -> A2] (fun (x : ~B) => x)"


def test_normalize_json_trace_replays(capsys):
    assert main(["normalize", HARROP, "hop_applied", "--trace", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["normalForm"] == "inj1[~B -> A2] (fun (x : ~B) => x)"
    assert payload["steps"], "expected a nonempty step list"
    for s in payload["steps"]:
        step = TraceStep(tuple(s["path"]), s["rule"],
                         parse_term(s["before"]), parse_term(s["after"]))
        assert replay_step(step, "KP", {})


def test_normalize_json_without_trace_has_no_steps(capsys):
    assert main(["normalize", IPC, "beta_demo", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "steps" not in payload
    assert payload["normalForm"] == "fun (x : q) => x"


def test_normalize_weakhead_rejects_v(capsys):
    assert main(["normalize", VISSER, "visser_inj", "--strategy", "weakhead"]) == 1
    assert "V declaration" in capsys.readouterr().err


def test_normalize_evalv_needs_v(capsys):
    assert main(["normalize", HARROP, "hop_applied", "--strategy", "evalV"]) == 1
    assert "evalV needs a V declaration" in capsys.readouterr().err


def test_normalize_evalv_no_step_trace(capsys):
    assert main(["normalize", VISSER, "visser_inj",
                 "--strategy", "evalV", "--trace"]) == 0
    out = capsys.readouterr().out
    assert "(structural evaluation: no step trace)" in out
    assert "fun (x1 : B -> B) => x1" in out


def test_normalize_missing_declaration():
    with pytest.raises(SystemExit, match="no declaration named"):
        main(["normalize", HARROP, "nonexistent"])


def test_budget_env(tmp_path, monkeypatch, capsys):
    f = tmp_path / "chain.vkp"
    f.write_text(
        "calculus IPC\n\n"
        "def chain : A -> A :=\n"
        "  fun (a : A) =>\n"
        "    (fun (x : A) => x) ((fun (y : A) => y) ((fun (z : A) => z) a))\n"
    )
    monkeypatch.setenv("VKP_BUDGET", "2")
    assert main(["normalize", str(f), "chain"]) == 1
    err = capsys.readouterr().err
    assert "budget of 2 steps exceeded" in err
    assert "last term:" in err
    monkeypatch.setenv("VKP_BUDGET", "10")
    assert main(["normalize", str(f), "chain"]) == 0
    assert capsys.readouterr().out.strip() == "fun (a : A) => a"


def test_budget_env_rejects_garbage(monkeypatch):
    monkeypatch.setenv("VKP_BUDGET", "zero")
    with pytest.raises(SystemExit, match="positive integer"):
        main(["normalize", IPC, "beta_demo"])


def test_extract(capsys):
    assert main(["extract", HARROP, "hop_applied"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "Left: fun (x : ~B) => x"


def test_extract_rejects_non_disjunction(capsys):
    assert main(["extract", IPC, "identity"]) == 1
    assert "vkp:" in capsys.readouterr().err


def test_prove_tautology(capsys):
    assert main(["prove", "(A -> B) -> ~B -> ~A"]) == 0
    witness = parse_term(capsys.readouterr().out.strip())
    check({}, witness, parse_formula("(A -> B) -> ~B -> ~A"), "IPC")


def test_prove_non_theorem(capsys):
    assert main(["prove", "A \\/ ~A"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("not provable; countermodel:")
    assert "worlds, root w0" in out
    assert "w0 <= " in out


def test_prove_parse_error(capsys):
    assert main(["prove", "A -> -> B"]) == 2
    assert "vkp:" in capsys.readouterr().err
