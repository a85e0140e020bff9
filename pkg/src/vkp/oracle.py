"""Independent oracles: normal-form classification and IPC provability.

classify names the shape of a normal term, given a context of the right
discipline: all implications (for V) or all negations (for KP).  The shape
lemmas promise one of a fixed set of reports; anything else is a kernel bug
and raises ClassificationFailure.

ipc_provable decides intuitionistic provability with a terminating sequent
search in the contraction-free style, where a left implication is split
four ways by the shape of its antecedent:

    atom:        p, p -> B  gives  B        (only when p is present)
    conjunction: (C /\\ D) -> B   becomes   C -> (D -> B)
    disjunction: (C \\/ D) -> B   becomes   C -> B  and  D -> B
    implication: (C -> D) -> B   needs  D -> B |- C -> D, then B |- goal

Every premise is smaller in the multiset order of formula weights, so the
search needs no fuel.  Positive answers carry a proof term that is checked
in IPC before being returned; negative answers carry a finite rooted
countermodel, found smallest first and verified against the formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Abs, App, Atom, Case, Conj, Disj, Exfalso, Falsum, Formula, Impl, Inj,
    Pair, Proj, Term, TypingContext, Var, is_neg, substitute,
)
from .typecheck import TypeCheckError, check, infer
from .reduction import ExfalsoHead, InjectionHead, VarAppHead, decompose, is_normal
from .normalize import InternalError, PreconditionViolation
from .kripke import KripkeModel, find_countermodel, forces, is_valid_model


class ClassificationFailure(Exception):
    """A normal form fit none of the promised shapes; kernel bug."""


class SearchBudgetExceeded(Exception):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# ------------------------------------------------------------ classification


@dataclass(frozen=True)
class ClassReport:
    kind: str  # Abstraction | VariableInCtx | Injection | Pair
    #            | ArrowNeutral | NegNeutral | VarAppFalsum
    context: object = None  # head context for the neutral kinds
    head: Term | None = None


def _ctx_shape_ok(ctx: TypingContext, calculus: str) -> bool:
    if calculus == "V":
        return all(isinstance(a, Impl) for a in ctx.values())
    return all(is_neg(a) for a in ctx.values())


def classify(ctx: TypingContext, t: Term, calculus: str) -> ClassReport:
    """Shape of a normal term under an implication-only or negation-only context."""
    if calculus not in ("V", "KP"):
        raise PreconditionViolation(f"classification is for V or KP, not {calculus}")
    if not _ctx_shape_ok(ctx, calculus):
        want = "implications" if calculus == "V" else "negations"
        raise PreconditionViolation(f"context entries must all be {want}")
    try:
        ty = infer(ctx, t, calculus)
    except TypeCheckError as e:
        raise PreconditionViolation(f"term does not check: {e}") from e
    if not is_normal(t, calculus, ctx):
        raise PreconditionViolation("term is not normal")

    d = decompose(t)
    if isinstance(d, InjectionHead):
        return ClassReport("Injection")
    if calculus == "V":
        match d:
            case VarAppHead(w, v, a):
                if v not in ctx:
                    raise ClassificationFailure(f"head variable {v} is not in scope")
                return ClassReport("ArrowNeutral", w, App(Var(v), a))
            case ExfalsoHead(w, _):
                return ClassReport("ArrowNeutral", w)
    else:
        match d:
            case ExfalsoHead(w, _):
                return ClassReport("NegNeutral", w)
            case VarAppHead(w, v, a):
                if not w.frames and v in ctx and ty == Falsum():
                    return ClassReport("VarAppFalsum", head=App(Var(v), a))
                raise ClassificationFailure(
                    f"variable head {v} outside the falsity shape at type {ty}"
                )
    match ty:
        case Impl():
            if isinstance(t, Abs):
                return ClassReport("Abstraction")
            if isinstance(t, Var) and t.name in ctx:
                return ClassReport("VariableInCtx")
        case Disj():
            if isinstance(t, Inj):
                return ClassReport("Injection")
        case Conj():
            if isinstance(t, Pair):
                return ClassReport("Pair")
    raise ClassificationFailure(
        f"normal term of type {ty} fits no classified shape: {t!r}"
    )


# ------------------------------------------------------------ the prover


@dataclass(frozen=True)
class Provable:
    witness: Term


@dataclass(frozen=True)
class NotProvable:
    countermodel: KripkeModel


class _Fresh:
    def __init__(self):
        self.k = 0

    def __call__(self) -> str:
        self.k += 1
        return f"h{self.k}"


def _prove(hyps: list[tuple[str, Formula]], goal: Formula, fresh: _Fresh) -> Term | None:
    """Backtracking search; returns a proof term over the hypothesis names."""
    for name, a in hyps:
        if a == goal and isinstance(a, (Atom, Falsum)):
            return Var(name)
    for name, a in hyps:
        if isinstance(a, Falsum):
            return Exfalso(goal, Var(name))

    # invertible left rules: each fires at most once and commits
    for i, (name, a) in enumerate(hyps):
        rest = hyps[:i] + hyps[i + 1:]
        match a:
            case Conj(l, r):
                n1, n2 = fresh(), fresh()
                sub = _prove(rest + [(n1, l), (n2, r)], goal, fresh)
                if sub is None:
                    return None
                sub = substitute(sub, n1, Proj(1, Var(name)))
                return substitute(sub, n2, Proj(2, Var(name)))
            case Disj(l, r):
                n = fresh()
                sub1 = _prove(rest + [(n, l)], goal, fresh)
                if sub1 is None:
                    return None
                sub2 = _prove(rest + [(n, r)], goal, fresh)
                if sub2 is None:
                    return None
                return Case(Var(name), n, sub1, sub2)
            case Impl(Falsum(), _):
                return _prove(rest, goal, fresh)
            case Impl(Conj(c, d), b):
                n = fresh()
                sub = _prove(rest + [(n, Impl(c, Impl(d, b)))], goal, fresh)
                if sub is None:
                    return None
                xc, xd = fresh(), fresh()
                realized = Abs(xc, c, Abs(xd, d, App(Var(name), Pair(Var(xc), Var(xd)))))
                return substitute(sub, n, realized)
            case Impl(Disj(c, d), b):
                n1, n2 = fresh(), fresh()
                sub = _prove(rest + [(n1, Impl(c, b)), (n2, Impl(d, b))], goal, fresh)
                if sub is None:
                    return None
                xc, xd = fresh(), fresh()
                sub = substitute(sub, n1, Abs(xc, c, App(Var(name), Inj(1, d, Var(xc)))))
                return substitute(sub, n2, Abs(xd, d, App(Var(name), Inj(2, c, Var(xd)))))
            case Impl(Atom(p), b):
                for name2, a2 in rest:
                    if a2 == Atom(p):
                        n = fresh()
                        sub = _prove(rest + [(n, b)], goal, fresh)
                        if sub is None:
                            return None
                        return substitute(sub, n, App(Var(name), Var(name2)))

    # invertible right rules
    match goal:
        case Conj(l, r):
            t1 = _prove(hyps, l, fresh)
            if t1 is None:
                return None
            t2 = _prove(hyps, r, fresh)
            if t2 is None:
                return None
            return Pair(t1, t2)
        case Impl(l, r):
            n = fresh()
            sub = _prove(hyps + [(n, l)], r, fresh)
            if sub is None:
                return None
            return Abs(n, l, sub)

    # the genuine choice points: a goal disjunct, or a nested left implication
    if isinstance(goal, Disj):
        t1 = _prove(hyps, goal.left, fresh)
        if t1 is not None:
            return Inj(1, goal.right, t1)
        t2 = _prove(hyps, goal.right, fresh)
        if t2 is not None:
            return Inj(2, goal.left, t2)
    for i, (name, a) in enumerate(hyps):
        match a:
            case Impl(Impl(c, d), b):
                rest = hyps[:i] + hyps[i + 1:]
                n = fresh()
                arm = _prove(rest + [(n, Impl(d, b))], Impl(c, d), fresh)
                if arm is None:
                    continue
                xd, xc = fresh(), fresh()
                realized = Abs(xd, d, App(Var(name), Abs(xc, c, Var(xd))))
                arm = substitute(arm, n, realized)
                v = fresh()
                rest_t = _prove(rest + [(v, b)], goal, fresh)
                if rest_t is None:
                    continue
                return substitute(rest_t, v, App(Var(name), arm))
    return None


def ipc_provable(a: Formula, max_worlds: int = 6) -> Provable | NotProvable:
    """Decide plain intuitionistic provability; both answers are self-checked."""
    t = _prove([], a, _Fresh())
    if t is not None:
        try:
            check({}, t, a, "IPC")
        except TypeCheckError as e:
            raise InternalError(f"search produced an ill-typed witness: {e}") from e
        return Provable(t)
    model = find_countermodel(a, max_worlds)
    if model is None:
        raise SearchBudgetExceeded(
            f"unprovable, but no countermodel within {max_worlds} worlds", partial=a
        )
    if not is_valid_model(model) or forces(model, 0, a):
        raise InternalError("countermodel search returned a bad model")
    return NotProvable(model)
