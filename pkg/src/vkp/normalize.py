"""Normalization strategies and disjunct extraction.

Full normalization contracts the head spine first, then recurses into
subterms leftmost first, under binders included.  Every strategy counts
steps against a budget and refuses to return a truncated term.

eval_v is the structural evaluator taking a well-typed V term to a normal
term with no visser nodes: it evaluates subterms, reads the shape of each
evaluated main premise, and pushes the abstracted payload into the chosen
branch.  The result proves the same formula in plain IPC.
"""

from __future__ import annotations

from .syntax import (
    Abs, App, Case, Disj, Exfalso, Harrop, Inj, Pair, Proj, Term,
    TypingContext, Var, Visser, children, free_vars, replace_at, substitute,
)
from .typecheck import TypeCheckError, infer
from .reduction import (
    ExfalsoHead, InjectionHead, TraceStep, VarAppHead, child_context,
    contains_hop, decompose, step_top_named, step_weak_head_named, _lams,
)

DEFAULT_BUDGET = 10**6


class PreconditionViolation(Exception):
    pass


class BudgetExceeded(Exception):
    """The step budget ran out; carries the last term reached, untruncated."""

    def __init__(self, last: Term, steps: int):
        super().__init__(f"no normal form within {steps} steps")
        self.last = last
        self.steps = steps


class InternalError(Exception):
    """A kernel invariant failed; this is a bug, not a user error."""


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, last: Term):
        if self.used >= self.limit:
            raise BudgetExceeded(last, self.used)
        self.used += 1


def _next_redex(t: Term, ctx: TypingContext, calculus: str, thread: bool):
    """Leftmost-outermost position: head spine first, then children in order.

    Returns (path, rule, local reduct) or None.
    """
    cur = t
    cctx = ctx
    path: tuple[int, ...] = ()
    while True:
        r = step_top_named(cur, calculus, cctx)
        if r is not None:
            return path, r[1], r[0]
        if isinstance(cur, (App, Proj, Case)):
            path = path + (0,)
            cur = children(cur)[0]
        elif isinstance(cur, Harrop):
            cctx = child_context(cur, 0, cctx, calculus)
            path = path + (0,)
            cur = children(cur)[0]
        else:
            break
    return _congruence_redex(t, ctx, calculus, thread)


def _congruence_redex(t: Term, ctx: TypingContext, calculus: str, thread: bool):
    for i, c in enumerate(children(t)):
        sub_ctx = child_context(t, i, ctx, calculus) if thread or isinstance(t, Visser) and i == 0 else ctx
        r = _next_redex(c, sub_ctx, calculus, thread)
        if r is not None:
            path, rule, red = r
            return (i,) + path, rule, red
    return None


def normalize_full(
    t: Term,
    calculus: str = "IPC",
    ctx: TypingContext | None = None,
    budget: int | None = None,
    trace: list[TraceStep] | None = None,
) -> Term:
    """Reduce to a term with no remaining contractions anywhere."""
    root_ctx = dict(ctx) if ctx else {}
    meter = _Budget(DEFAULT_BUDGET if budget is None else budget)
    while True:
        r = _next_redex(t, root_ctx, calculus, contains_hop(t))
        if r is None:
            return t
        path, rule, red = r
        meter.spend(t)
        t2 = replace_at(t, path, red)
        if trace is not None:
            trace.append(TraceStep(path, rule, t, t2))
        t = t2


def weak_head_normalize(
    t: Term,
    ctx: TypingContext | None = None,
    budget: int | None = None,
    trace: list[TraceStep] | None = None,
) -> Term:
    """Iterate the deterministic KP head step until it sticks."""
    meter = _Budget(DEFAULT_BUDGET if budget is None else budget)
    while True:
        r = step_weak_head_named(t, ctx)
        if r is None:
            return t
        whole, path, rule = r
        meter.spend(t)
        if trace is not None:
            trace.append(TraceStep(path, rule, t, whole))
        t = whole


def _require_typed(t: Term, ctx: TypingContext, calculus: str):
    try:
        return infer(ctx, t, calculus)
    except TypeCheckError as e:
        raise PreconditionViolation(f"term does not check in {calculus}: {e}") from e


def eval_ipc(
    t: Term,
    ctx: TypingContext | None = None,
    budget: int | None = None,
    trace: list[TraceStep] | None = None,
) -> Term:
    """Leftmost-outermost normalization for plain IPC terms."""
    root_ctx = dict(ctx) if ctx else {}
    if ctx is not None or not free_vars(t):
        _require_typed(t, root_ctx, "IPC")
    elif any(isinstance(s, (Visser, Harrop)) for s in _subterms(t)):
        raise PreconditionViolation("term is not in the IPC fragment")
    return normalize_full(t, "IPC", root_ctx, budget, trace)


def _subterms(t: Term):
    yield t
    for c in children(t):
        yield from _subterms(c)


def normalize_kp(
    t: Term,
    ctx: TypingContext | None = None,
    budget: int | None = None,
    trace: list[TraceStep] | None = None,
) -> Term:
    """Full normalization for KP terms: head steps first, then congruence."""
    root_ctx = dict(ctx) if ctx else {}
    _require_typed(t, root_ctx, "KP")
    return normalize_full(t, "KP", root_ctx, budget, trace)


def eval_v(t: Term, ctx: TypingContext | None = None, budget: int | None = None) -> Term:
    """Evaluate a V term to an IPC normal form of the same type."""
    root_ctx = dict(ctx) if ctx else {}
    _require_typed(t, root_ctx, "V")
    meter = _Budget(DEFAULT_BUDGET if budget is None else budget)
    return _ev(t, meter)


def _nf_ipc(t: Term, meter: _Budget) -> Term:
    while True:
        r = _next_redex(t, {}, "IPC", False)
        if r is None:
            return t
        path, _, red = r
        meter.spend(t)
        t = replace_at(t, path, red)


def _ev(t: Term, meter: _Budget) -> Term:
    match t:
        case Var():
            return t
        case Abs(x, a, b):
            return Abs(x, a, _ev(b, meter))
        case Exfalso(f, a):
            return Exfalso(f, _ev(a, meter))
        case Pair(a, b):
            return Pair(_ev(a, meter), _ev(b, meter))
        case App(f, a):
            return _nf_ipc(App(_ev(f, meter), _ev(a, meter)), meter)
        case Proj(i, a):
            return _nf_ipc(Proj(i, _ev(a, meter)), meter)
        case Inj(i, o, a):
            return _nf_ipc(Inj(i, o, _ev(a, meter)), meter)
        case Case(sc, y, b1, b2):
            return _nf_ipc(
                Case(_ev(sc, meter), y, _ev(b1, meter), _ev(b2, meter)), meter
            )
        case Visser(bs, m, y, b1, b2, z, us):
            em = _ev(m, meter)
            d = decompose(em)
            match d:
                case InjectionHead(i, p):
                    branch = _ev(b1 if i == 1 else b2, meter)
                    return _nf_ipc(substitute(branch, y, _lams(bs, p)), meter)
                case ExfalsoHead(_, p):
                    ty = infer(dict(bs), em, "IPC")
                    arg = _lams(bs, Exfalso(ty.left, p))
                    return _nf_ipc(substitute(_ev(b1, meter), y, arg), meter)
                case VarAppHead(_, v, a):
                    names = [n for n, _ in bs]
                    if v not in names:
                        raise InternalError(f"evaluated main premise headed by {v}")
                    u = _ev(us[names.index(v)], meter)
                    return _nf_ipc(substitute(u, z, _lams(bs, a)), meter)
            raise InternalError(
                "evaluated visser main premise fits no head shape; "
                "this contradicts the classification of normal forms"
            )
        case Harrop():
            raise PreconditionViolation("hop does not belong to V")
    raise TypeError(f"not a term: {t!r}")


def extract_disjunct(t: Term, calculus: str = "KP", budget: int | None = None):
    """Side and witness from a closed disjunction proof.

    Returns ("Left", w) or ("Right", w) with w proving the matching disjunct.
    """
    fv = free_vars(t)
    if fv:
        raise PreconditionViolation(f"term is not closed: {', '.join(sorted(fv))}")
    ty = _require_typed(t, {}, calculus)
    if not isinstance(ty, Disj):
        raise PreconditionViolation("term does not prove a disjunction")
    if calculus == "V":
        nf = eval_v(t, {}, budget)
    else:
        nf = normalize_full(t, calculus, {}, budget)
    if not isinstance(nf, Inj):
        raise InternalError(
            "closed normal disjunction proof is not an injection; "
            "this contradicts the classification of normal forms"
        )
    return ("Left" if nf.index == 1 else "Right"), nf.arg
