"""Decomposition, the single-step rules, positions, and the head strategy."""

import random

import pytest

from vkp.gen import generate_typed
from vkp.parser import parse_term
from vkp.reduction import (
    ArgFrame, CaseFrame, ExfalsoHead, InjectionHead, ProjFrame, VarAppHead,
    WeakHeadContext, decompose, is_normal, replay_step, step_anywhere,
    step_top, step_top_named, step_weak_head, step_weak_head_named,
    weak_head_redexes,
)
from vkp.normalize import TraceStep
from vkp.syntax import (
    Abs, App, Atom, Case, Conj, Exfalso, FALSUM, Harrop, Impl, Inj, Pair,
    Proj, Var, Visser, alpha_eq, neg, substitute,
)
from vkp.typecheck import CalculusViolation

A = Atom("A")
B = Atom("B")
C = Atom("C")


def test_decompose_injection_only_at_top():
    assert decompose(Inj(1, B, Var("t"))) == InjectionHead(1, Var("t"))
    # an injection under a frame is not an injection head
    d = decompose(Proj(1, Inj(1, B, Var("t"))))
    assert not isinstance(d, InjectionHead)


def test_decompose_exfalso_under_w():
    t = Proj(1, Exfalso(Conj(A, B), Var("s")))
    d = decompose(t)
    assert isinstance(d, ExfalsoHead)
    assert d.context.frames == (ProjFrame(1),)
    assert d.payload == Var("s")
    assert d.context.plug(Exfalso(Conj(A, B), Var("s"))) == t


def test_decompose_var_app_under_case():
    t = Case(App(Var("x1"), Var("t")), "y", Var("y"), Var("y"))
    d = decompose(t)
    assert isinstance(d, VarAppHead)
    assert d.var == "x1"
    assert d.first_arg == Var("t")
    assert d.context.frames == (CaseFrame("y", Var("y"), Var("y")),)


def test_decompose_first_argument_reading():
    # x t u: the redex reading is x applied to t; the u application stays out
    t = App(App(Var("x"), Var("t")), Var("u"))
    d = decompose(t)
    assert isinstance(d, VarAppHead)
    assert d.first_arg == Var("t")
    assert d.context.frames == (ArgFrame(Var("u")),)
    assert d.context.plug(App(Var("x"), Var("t"))) == t


def test_decompose_nothing():
    assert decompose(Var("x")) is None
    assert decompose(Abs("x", A, Var("x"))) is None
    assert decompose(Pair(Var("a"), Var("b"))) is None
    assert decompose(Proj(1, Var("x"))) is None  # bare var head, no argument


def test_plug_decompose_inverse():
    rng = random.Random(41)
    for seed in range(150):
        cal = ("IPC", "KP", "V")[seed % 3]
        ctx, t, a = generate_typed(cal, max_depth=6, atom_count=3, seed=seed)
        d = decompose(t)
        if isinstance(d, ExfalsoHead):
            core = d.context.plug(Exfalso(_efq_target(t, d), d.payload))
            assert core == t
        elif isinstance(d, VarAppHead):
            assert d.context.plug(App(Var(d.var), d.first_arg)) == t
        elif isinstance(d, InjectionHead):
            assert isinstance(t, Inj)


def _efq_target(t, d):
    # recover the annotation of the exfalso the context wraps
    cur = t
    from vkp.syntax import children
    for _ in d.context.frames:
        cur = children(cur)[0]
    return cur.target


def test_step_top_beta():
    t = App(Abs("x", A, Var("x")), Var("z"))
    assert step_top_named(t, "IPC") == (Var("z"), "Beta")


def test_step_top_projection_and_case():
    assert step_top(Proj(2, Pair(Var("a"), Var("b")))) == Var("b")
    t = Case(Inj(1, B, Var("p")), "y", App(Var("f"), Var("y")), Var("y"))
    assert step_top(t) == App(Var("f"), Var("p"))
    t2 = Case(Inj(2, A, Var("p")), "y", Var("y"), App(Var("g"), Var("y")))
    assert step_top(t2) == App(Var("g"), Var("p"))


def test_step_top_needs_value_shapes():
    assert step_top(App(Var("f"), Var("x"))) is None
    assert step_top(Proj(1, Var("p"))) is None
    assert step_top(Case(Var("d"), "y", Var("y"), Var("y"))) is None


def test_harrop_inj_rule():
    # hop (x:~B). inj1[A2] t of {y => s1 | y => s2}  ->  s1[y := fun (x:~B) => t]
    t = Harrop("x", neg(B), Inj(1, Atom("A2"), Var("t")),
               "y", App(Var("f"), Var("y")), Var("y"))
    r = step_top_named(t, "KP")
    assert r is not None
    reduct, rule = r
    assert rule == "Harrop-inj"
    assert reduct == App(Var("f"), Abs("x", neg(B), Var("t")))


def test_harrop_inj_second_branch():
    t = Harrop("x", neg(B), Inj(2, Atom("A1"), Var("t")),
               "y", Var("y"), Pair(Var("y"), Var("y")))
    reduct, rule = step_top_named(t, "KP")
    assert rule == "Harrop-inj"
    lam = Abs("x", neg(B), Var("t"))
    assert reduct == Pair(lam, lam)


def test_harrop_efq_discards_context_and_annotates():
    # main = proj1 (exfalso[(A1 \/ A2) /\ B] (x b)): W = proj1, payload x b
    # the reduct drops W and re-annotates exfalso with A1
    A1, A2 = Atom("A1"), Atom("A2")
    main = Proj(1, Exfalso(Conj(Disj_(A1, A2), B), App(Var("x"), Var("b"))))
    t = Harrop("x", neg(B), main, "y", Var("y"), Var("y"))
    reduct, rule = step_top_named(t, "KP", {"b": B})
    assert rule == "Harrop-efq"
    want = Abs("x", neg(B), Exfalso(A1, App(Var("x"), Var("b"))))
    assert reduct == want


def Disj_(l, r):
    from vkp.syntax import Disj
    return Disj(l, r)


def test_visser_inj_rule():
    bs = (("x1", Impl(B, C)),)
    t = Visser(bs, Inj(1, A, Var("x1")),
               "y", App(Var("f"), Var("y")), Var("y"),
               "z", (Var("z"),))
    reduct, rule = step_top_named(t, "V")
    assert rule == "Visser-inj"
    assert reduct == App(Var("f"), Abs("x1", Impl(B, C), Var("x1")))


def test_visser_inj_iterated_lambda_order():
    bs = (("x1", Impl(A, B)), ("x2", Impl(B, C)))
    t = Visser(bs, Inj(2, C, Var("x2")),
               "y", Var("y"), Var("y"),
               "z", (Var("z"), Var("z")))
    reduct, rule = step_top_named(t, "V")
    assert rule == "Visser-inj"
    assert reduct == Abs("x1", Impl(A, B), Abs("x2", Impl(B, C), Var("x2")))


def test_visser_efq_rule():
    # main premise: exfalso under a projection frame; the frame is dropped
    # and the rebuilt exfalso is annotated with the left disjunct A
    from vkp.syntax import Disj
    main = Proj(2, Exfalso(Conj(B, Disj(A, C)),
                           App(Var("x1"), Abs("q", A, Var("q")))))
    t = Visser((("x1", Impl(Impl(A, A), FALSUM)),), main,
               "y", Var("y"), Var("y"), "z", (Var("z"),))
    reduct, rule = step_top_named(t, "V")
    assert rule == "Visser-efq"
    inner = Exfalso(A, App(Var("x1"), Abs("q", A, Var("q"))))
    assert reduct == Abs("x1", Impl(Impl(A, A), FALSUM), inner)


def test_visser_app_rule():
    # main = case (x1 t) of {...}: head variable x1 with first argument t
    from vkp.syntax import Disj
    idq = Abs("q", B, Var("q"))
    main = Case(App(Var("x1"), idq), "w",
                Inj(1, C, Var("w")), Inj(1, C, Var("w")))
    t = Visser((("x1", Impl(Impl(B, B), Disj(A, C))),), main,
               "y", Var("y"), Var("y"),
               "z", (App(Var("g"), Var("z")),))
    reduct, rule = step_top_named(t, "V")
    assert rule == "Visser-app"
    lam = Abs("x1", Impl(Impl(B, B), Disj(A, C)), idq)
    assert reduct == App(Var("g"), lam)


def test_visser_stuck_main_var_not_a_binder():
    # head variable is the case binder, not one of the visser binders: no rule
    t = parse_term(
        "visser (x1 : B -> C). inj1[A] x1 of { y => y | y => y | z => z }"
    )
    # rebuild with a stuck main: bare x1 (no argument) decomposes to nothing
    stuck = Visser(t.binders, Var("x1"), t.case_binder, t.branch1, t.branch2,
                   t.app_binder, t.app_branches)
    assert step_top_named(stuck, "V") is None


def test_step_top_calculus_gate():
    hop = Harrop("x", neg(B), Inj(1, A, Var("x")), "y", Var("y"), Var("y"))
    with pytest.raises(CalculusViolation):
        step_top_named(hop, "IPC")
    with pytest.raises(CalculusViolation):
        step_top_named(hop, "V")
    vis = Visser((("x1", Impl(B, C)),), Inj(1, A, Var("x1")),
                 "y", Var("y"), Var("y"), "z", (Var("z"),))
    with pytest.raises(CalculusViolation):
        step_top_named(vis, "KP")


def test_step_anywhere_normal_form():
    assert step_anywhere(Abs("x", A, Var("x")), "IPC") == []
    assert is_normal(Var("x"), "IPC")


def test_step_anywhere_single():
    t = App(Abs("x", A, Var("x")), Var("a"))
    assert step_anywhere(t, "IPC") == [((), Var("a"))]


def test_step_anywhere_enumerates_positions():
    r1 = App(Abs("x", A, Var("x")), Var("a"))
    r2 = App(Abs("y", B, Var("y")), Var("b"))
    t = Pair(r1, r2)
    got = step_anywhere(t, "IPC")
    assert len(got) == 2
    assert ((0,), Pair(Var("a"), r2)) in got
    assert ((1,), Pair(r1, Var("b"))) in got


def test_step_anywhere_under_binders():
    t = Abs("u", A, App(Abs("x", A, Var("x")), Var("u")))
    got = step_anywhere(t, "IPC")
    assert got == [((0,), Abs("u", A, Var("u")))]


def test_step_weak_head_projection_chain():
    t = Proj(1, App(Abs("x", Conj(A, B), Var("x")), Var("p")))
    r = step_weak_head_named(t, {"p": Conj(A, B)})
    assert r is not None
    whole, path, rule = r
    assert whole == Proj(1, Var("p"))
    assert path == (0,)
    assert rule == "Beta"


def test_step_weak_head_stops_at_abstraction():
    t = Abs("x", A, App(Abs("y", A, Var("y")), Var("x")))
    assert step_weak_head(t) is None  # no K frame enters plain binders


def test_step_weak_head_descends_into_hop_main():
    inner = App(Abs("q", Disj_(Atom("A2"), B), Var("q")), Inj(1, B, Var("x")))
    t = Harrop("x", neg(B), inner, "y",
               Abs("w", A, Var("w")), Abs("w", A, Var("w")))
    r = step_weak_head_named(t, {})
    assert r is not None
    whole, path, rule = r
    assert rule == "Beta"
    assert path == (0,)
    assert whole == Harrop("x", neg(B), Inj(1, B, Var("x")), "y",
                           Abs("w", A, Var("w")), Abs("w", A, Var("w")))
    # and the next head step fires the hop itself at the root
    r2 = step_weak_head_named(whole, {})
    whole2, path2, rule2 = r2
    assert (path2, rule2) == ((), "Harrop-inj")
    assert whole2 == Abs("w", A, Var("w"))


def test_step_weak_head_result_among_step_anywhere():
    for seed in range(150):
        ctx, t, a = generate_typed("KP", max_depth=6, atom_count=3, seed=seed)
        r = step_weak_head_named(t, ctx)
        everything = step_anywhere(t, "KP", ctx)
        if r is None:
            continue
        whole, path, rule = r
        assert any(p == path and alpha_eq(w, whole) for p, w in everything), seed


def test_weak_head_oracle_agreement_small():
    for seed in range(150):
        ctx, t, a = generate_typed("KP", max_depth=5, atom_count=3, seed=seed)
        oracle = weak_head_redexes(t, ctx)
        assert len(oracle) in (0, 1)
        r = step_weak_head_named(t, ctx)
        if r is None:
            assert oracle == []
        else:
            whole, path, rule = r
            opath, owhole, orule = oracle[0]
            assert (opath, orule) == (path, rule)
            assert alpha_eq(owhole, whole)


def test_replay_step():
    t = App(Abs("x", A, Var("x")), Var("a"))
    good = TraceStep((), "Beta", t, Var("a"))
    assert replay_step(good, "IPC")
    bad_rule = TraceStep((), "Projection", t, Var("a"))
    assert not replay_step(bad_rule, "IPC")
    bad_after = TraceStep((), "Beta", t, Var("b"))
    assert not replay_step(bad_after, "IPC")
