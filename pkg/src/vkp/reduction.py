"""Single-step reduction: head decomposition, top rules, position enumeration.

The weak head spine of a term runs through application functions, projection
and case scrutinees; decompose reads the shape a visser or hop main premise
presents at the end of that spine.  An injection counts only when it is the
whole premise.  When a spine variable is applied to several arguments, the
first application is the redex reading and the rest stay in the context.

Rebuilt exfalso nodes in the efq contractions are annotated with the first
disjunct of the main premise's type, so contracting needs the types of any
variables the premise mentions; step functions take the ambient context for
that and thread it under binders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Abs, App, Case, Exfalso, Formula, Harrop, Impl, Inj, Pair, Proj, Term,
    TypingContext, Var, Visser, children, replace_at, subterm_at, substitute,
    with_children,
)
from .typecheck import CalculusViolation, _curried, infer

RULE_NAMES = (
    "Beta", "Projection", "Case",
    "Visser-inj", "Visser-efq", "Visser-app",
    "Harrop-inj", "Harrop-efq",
)


# ------------------------------------------------------------ head contexts


@dataclass(frozen=True)
class ArgFrame:
    arg: Term


@dataclass(frozen=True)
class ProjFrame:
    index: int


@dataclass(frozen=True)
class CaseFrame:
    binder: str
    branch1: Term
    branch2: Term


@dataclass(frozen=True)
class HopMainFrame:
    binder: str
    annot: Formula
    case_binder: str
    branch1: Term
    branch2: Term


def _wrap(frame, t: Term) -> Term:
    match frame:
        case ArgFrame(a):
            return App(t, a)
        case ProjFrame(i):
            return Proj(i, t)
        case CaseFrame(y, b1, b2):
            return Case(t, y, b1, b2)
        case HopMainFrame(x, a, y, b1, b2):
            return Harrop(x, a, t, y, b1, b2)
    raise TypeError(f"not a frame: {frame!r}")


@dataclass(frozen=True)
class WeakHeadContext:
    """Elimination frames around a head position, outermost first."""

    frames: tuple

    def __post_init__(self):
        for f in self.frames:
            if not isinstance(f, (ArgFrame, ProjFrame, CaseFrame)):
                raise ValueError(f"frame not allowed here: {f!r}")

    def plug(self, t: Term) -> Term:
        for f in reversed(self.frames):
            t = _wrap(f, t)
        return t


@dataclass(frozen=True)
class HopWeakHeadContext:
    """Weak head frames extended with descent into hop main premises."""

    frames: tuple

    def __post_init__(self):
        for f in self.frames:
            if not isinstance(f, (ArgFrame, ProjFrame, CaseFrame, HopMainFrame)):
                raise ValueError(f"frame not allowed here: {f!r}")

    def plug(self, t: Term) -> Term:
        for f in reversed(self.frames):
            t = _wrap(f, t)
        return t


# ------------------------------------------------------------- decomposition


@dataclass(frozen=True)
class InjectionHead:
    index: int
    payload: Term


@dataclass(frozen=True)
class ExfalsoHead:
    context: WeakHeadContext
    payload: Term


@dataclass(frozen=True)
class VarAppHead:
    context: WeakHeadContext
    var: str
    first_arg: Term


Decomposition = InjectionHead | ExfalsoHead | VarAppHead


def decompose(t: Term) -> Decomposition | None:
    """Read the head shape of a main premise; None when nothing applies."""
    if isinstance(t, Inj):
        return InjectionHead(t.index, t.arg)
    frames = []
    cur = t
    while True:
        match cur:
            case App(f, a):
                frames.append(ArgFrame(a))
                cur = f
            case Proj(i, a):
                frames.append(ProjFrame(i))
                cur = a
            case Case(sc, y, b1, b2):
                frames.append(CaseFrame(y, b1, b2))
                cur = sc
            case _:
                break
    if isinstance(cur, Exfalso):
        return ExfalsoHead(WeakHeadContext(tuple(frames)), cur.arg)
    if isinstance(cur, Var) and frames and isinstance(frames[-1], ArgFrame):
        first = frames.pop()
        return VarAppHead(WeakHeadContext(tuple(frames)), cur.name, first.arg)
    return None


# ----------------------------------------------------------------- top rules


def _lams(binders, body: Term) -> Term:
    """Iterated abstraction over the visser binders, in order."""
    for name, annot in reversed(binders):
        body = Abs(name, annot, body)
    return body


def step_top_named(t: Term, calculus: str = "IPC", ctx: TypingContext | None = None):
    """Apply one top-level contraction; (reduct, rule name) or None."""
    ctx = ctx if ctx is not None else {}
    match t:
        case App(Abs(x, _, b), a):
            return substitute(b, x, a), "Beta"
        case Proj(i, Pair(a, b)):
            return (a if i == 1 else b), "Projection"
        case Case(Inj(i, _, p), y, b1, b2):
            return substitute(b1 if i == 1 else b2, y, p), "Case"
        case Visser(bs, m, y, b1, b2, z, us):
            if calculus != "V":
                raise CalculusViolation("visser", calculus)
            d = decompose(m)
            match d:
                case InjectionHead(i, p):
                    arg = _lams(bs, p)
                    return substitute(b1 if i == 1 else b2, y, arg), "Visser-inj"
                case ExfalsoHead(_, p):
                    ty = infer(dict(bs), m, calculus)
                    arg = _lams(bs, Exfalso(ty.left, p))
                    return substitute(b1, y, arg), "Visser-efq"
                case VarAppHead(_, v, a):
                    names = [n for n, _ in bs]
                    if v not in names:
                        return None
                    return substitute(us[names.index(v)], z, _lams(bs, a)), "Visser-app"
            return None
        case Harrop(x, ann, m, y, b1, b2):
            if calculus != "KP":
                raise CalculusViolation("hop", calculus)
            d = decompose(m)
            match d:
                case InjectionHead(i, p):
                    arg = Abs(x, ann, p)
                    return substitute(b1 if i == 1 else b2, y, arg), "Harrop-inj"
                case ExfalsoHead(_, p):
                    ty = infer({**ctx, x: ann}, m, calculus)
                    arg = Abs(x, ann, Exfalso(ty.left, p))
                    return substitute(b1, y, arg), "Harrop-efq"
            return None
    return None


def step_top(t: Term, calculus: str = "IPC", ctx: TypingContext | None = None) -> Term | None:
    r = step_top_named(t, calculus, ctx)
    return r[0] if r else None


# ------------------------------------------------- contexts under subterms


def contains_hop(t: Term) -> bool:
    return isinstance(t, Harrop) or any(contains_hop(c) for c in children(t))


def child_context(t: Term, i: int, ctx: TypingContext, calculus: str) -> TypingContext:
    """Typing context for child i of t.

    Branch binder types come from the premise, so this infers where needed;
    callers working on untyped terms should not descend into branches.
    """
    match t:
        case Abs(x, a, _):
            return {**ctx, x: a}
        case Case(sc, y, _, _):
            if i == 0:
                return ctx
            ts = infer(ctx, sc, calculus)
            return {**ctx, y: ts.left if i == 1 else ts.right}
        case Visser(bs, m, y, _, _, z, _):
            if i == 0:
                return dict(bs)  # the main premise sees the binders only
            if i in (1, 2):
                tm = infer(dict(bs), m, calculus)
                side = tm.left if i == 1 else tm.right
                return {**ctx, y: _curried(bs, side)}
            return {**ctx, z: _curried(bs, bs[i - 3][1].left)}
        case Harrop(x, a, m, y, _, _):
            if i == 0:
                return {**ctx, x: a}
            tm = infer({**ctx, x: a}, m, calculus)
            return {**ctx, y: Impl(a, tm.left if i == 1 else tm.right)}
    return ctx


def context_along(t: Term, path: tuple[int, ...], ctx: TypingContext, calculus: str) -> TypingContext:
    """Typing context at the subterm addressed by path."""
    for i in path:
        ctx = child_context(t, i, ctx, calculus)
        t = children(t)[i]
    return ctx


# ----------------------------------------------------- position enumeration


def step_anywhere(t: Term, calculus: str = "IPC", ctx: TypingContext | None = None):
    """All one-step reducts: (path, whole reduct) per firing position, preorder."""
    root_ctx = dict(ctx) if ctx else {}
    thread = contains_hop(t)  # only hop contractions consult the outer context
    out: list[tuple[tuple[int, ...], Term]] = []

    def walk(sub: Term, path: tuple[int, ...], local: TypingContext):
        r = step_top_named(sub, calculus, local)
        if r is not None:
            out.append((path, replace_at(t, path, r[0])))
        for i, c in enumerate(children(sub)):
            nxt = child_context(sub, i, local, calculus) if thread else local
            walk(c, path + (i,), nxt)

    walk(t, (), root_ctx)
    return out


def is_normal(t: Term, calculus: str = "IPC", ctx: TypingContext | None = None) -> bool:
    return not step_anywhere(t, calculus, ctx)


# ------------------------------------------------------- deterministic step


def step_weak_head_named(t: Term, ctx: TypingContext | None = None):
    """One deterministic head step in KP; (whole reduct, path, rule) or None.

    The search walks the unique head spine (application functions, scrutinees,
    hop main premises) and contracts the outermost firing position.
    """
    cctx = dict(ctx) if ctx else {}
    spine: list[tuple[Term, TypingContext]] = []
    cur = t
    while True:
        r = step_top_named(cur, "KP", cctx)
        if r is not None:
            whole = r[0]
            for parent, _ in reversed(spine):
                cs = list(children(parent))
                cs[0] = whole
                whole = with_children(parent, tuple(cs))
            return whole, (0,) * len(spine), r[1]
        match cur:
            case App(f, _):
                spine.append((cur, cctx))
                cur = f
            case Proj(_, a):
                spine.append((cur, cctx))
                cur = a
            case Case(sc, _, _, _):
                spine.append((cur, cctx))
                cur = sc
            case Harrop(x, a, m, _, _, _):
                spine.append((cur, cctx))
                cctx = {**cctx, x: a}
                cur = m
            case _:
                return None


def step_weak_head(t: Term, ctx: TypingContext | None = None) -> Term | None:
    r = step_weak_head_named(t, ctx)
    return r[0] if r else None


def head_spine_paths(t: Term) -> list[tuple[int, ...]]:
    """Every head-spine position of t, outermost first."""
    paths = [()]
    cur = t
    path: tuple[int, ...] = ()
    while isinstance(cur, (App, Proj, Case, Harrop)):
        path = path + (0,)
        paths.append(path)
        cur = children(cur)[0]
    return paths


def weak_head_redexes(t: Term, ctx: TypingContext | None = None):
    """Exhaustive search over head-spine positions for firing contractions.

    Returns (path, whole reduct, rule) triples; determinism of the head step
    says there is at most one, and tests hold this against step_weak_head.
    """
    root_ctx = dict(ctx) if ctx else {}
    out = []
    for path in head_spine_paths(t):
        focus = subterm_at(t, path)
        local = context_along(t, path, root_ctx, "KP")
        r = step_top_named(focus, "KP", local)
        if r is not None:
            out.append((path, replace_at(t, path, r[0]), r[1]))
    return out


# ------------------------------------------------------------------- traces


@dataclass(frozen=True)
class TraceStep:
    path: tuple[int, ...]
    rule: str
    before: Term
    after: Term


def replay_step(step: TraceStep, calculus: str, ctx: TypingContext | None = None) -> bool:
    """Apply the recorded rule at the recorded path; must land on `after`."""
    from .syntax import alpha_eq

    root_ctx = dict(ctx) if ctx else {}
    try:
        focus = subterm_at(step.before, step.path)
        local = context_along(step.before, step.path, root_ctx, calculus)
        r = step_top_named(focus, calculus, local)
    except Exception:
        return False
    if r is None or r[1] != step.rule:
        return False
    return alpha_eq(replace_at(step.before, step.path, r[0]), step.after)
