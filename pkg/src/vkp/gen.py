"""Seeded random generation of well-typed terms, plus a typed shrinker.

Generation is goal-directed: pick a formula and a context, then inhabit the
formula, mixing introduction steps with deliberately reducible shapes (beta
redexes, projections of pairs, case on an injection) so reduction tests get
something to chew on.  Under KP and V the admissible constructs are attempted
with a fixed bias so roughly a third of the output exercises them.

Everything is driven by one random.Random(seed); equal seeds give equal
output.  Choices over context entries go through sorted lists, never raw
dict or set iteration.
"""

from __future__ import annotations

import random

from .syntax import (
    Abs, App, Atom, Case, Conj, Disj, Exfalso, FALSUM, Falsum, Formula,
    Harrop, Impl, Inj, Pair, Proj, Term, TypingContext, Var, Visser,
    free_vars, neg, replace_at, subterm_at, children, term_size, nameless,
)
from .typecheck import _curried, checks
from .normalize import InternalError

ATOM_NAMES = ("p", "q", "r", "s", "a", "b", "c", "d")
CTX_SHAPES = ("any", "implicative", "negated")


class GenerationFailed(Exception):
    """No inhabitant found within the retry budget."""


class _GenState:
    def __init__(self, rng: random.Random, gas: int, atoms: tuple[str, ...]):
        self.rng = rng
        self.gas = gas
        self.atoms = atoms
        self.counter = 0

    def spend(self) -> bool:
        self.gas -= 1
        return self.gas <= 0

    def fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"


def _formula(rng: random.Random, depth: int, atoms) -> Formula:
    if depth <= 0:
        return FALSUM if rng.random() < 0.08 else Atom(rng.choice(atoms))
    roll = rng.random()
    if roll < 0.20:
        return FALSUM if rng.random() < 0.08 else Atom(rng.choice(atoms))
    l = _formula(rng, depth - 1, atoms)
    r = _formula(rng, depth - 1, atoms)
    if roll < 0.52:
        return Impl(l, r)
    if roll < 0.73:
        return Conj(l, r)
    return Disj(l, r)


def _ctx_entry(rng: random.Random, shape: str, atoms) -> Formula:
    if shape == "implicative":
        return Impl(_formula(rng, 1, atoms), _formula(rng, 1, atoms))
    if shape == "negated":
        return neg(_formula(rng, 1, atoms))
    return _formula(rng, 2, atoms)


def _weighted_order(rng: random.Random, moves):
    """All thunks, drawn without replacement by weight."""
    pool = list(moves)
    out = []
    while pool:
        total = sum(w for w, _ in pool)
        pick = rng.random() * total
        acc = 0.0
        for i, (w, f) in enumerate(pool):
            acc += w
            if pick <= acc:
                out.append(f)
                del pool[i]
                break
        else:
            out.append(pool.pop()[1])
    return out


def _inhabit(st: _GenState, ctx: TypingContext, goal: Formula, depth: int,
             calculus: str) -> Term | None:
    if st.spend():
        return None
    rng = st.rng

    if depth >= 2 and rng.random() < 0.30:
        if calculus == "KP":
            t = _try_harrop(st, ctx, goal, depth, calculus)
            if t is not None:
                return t
        elif calculus == "V":
            t = _try_visser(st, ctx, goal, depth, calculus)
            if t is not None:
                return t

    moves: list[tuple[float, object]] = []
    items = sorted(ctx.items())

    direct = [n for n, a in items if a == goal]
    if direct:
        moves.append((2.5, lambda: Var(rng.choice(direct))))

    if isinstance(goal, (Impl, Conj, Disj)):
        moves.append((2.0, lambda: _intro(st, ctx, goal, depth, calculus)))

    heads = [(n, a) for n, a in items if isinstance(a, Impl) and a.right == goal]
    if heads and depth >= 1:
        moves.append((2.0, lambda: _app_ctx(st, ctx, heads, depth, calculus)))
    heads2 = [(n, a) for n, a in items
              if isinstance(a, Impl) and isinstance(a.right, Impl)
              and a.right.right == goal]
    if heads2 and depth >= 2:
        moves.append((0.8, lambda: _app_ctx2(st, ctx, heads2, depth, calculus)))

    disjs = [(n, a) for n, a in items if isinstance(a, Disj)]
    if disjs and depth >= 1:
        moves.append((1.2, lambda: _case_ctx(st, ctx, disjs, goal, depth, calculus)))
    conjs = [(n, a) for n, a in items if isinstance(a, Conj)]
    if conjs:
        side_matches = [(n, a, i) for n, a in conjs
                        for i in (1, 2) if (a.left, a.right)[i - 1] == goal]
        if side_matches:
            moves.append((1.5, lambda: _proj_ctx(rng, side_matches)))

    bots = [n for n, a in items if isinstance(a, Falsum)]
    if bots:
        moves.append((1.5, lambda: Exfalso(goal, Var(rng.choice(bots)))))
    negs = [(n, a) for n, a in items if isinstance(a, Impl) and a.right == FALSUM]
    if negs and depth >= 2:
        moves.append((0.7, lambda: _exfalso_neg(st, ctx, negs, goal, depth, calculus)))

    if depth >= 2:
        moves.append((0.9, lambda: _beta_redex(st, ctx, goal, depth, calculus)))
        moves.append((0.6, lambda: _proj_redex(st, ctx, goal, depth, calculus)))
    if depth >= 3:
        moves.append((0.6, lambda: _case_redex(st, ctx, goal, depth, calculus)))

    for thunk in _weighted_order(rng, moves):
        t = thunk()
        if t is not None:
            return t
    return None


def _intro(st, ctx, goal, depth, calculus):
    rng = st.rng
    match goal:
        case Impl(l, r):
            x = st.fresh()
            body = _inhabit(st, {**ctx, x: l}, r, depth - 1, calculus)
            return None if body is None else Abs(x, l, body)
        case Conj(l, r):
            t1 = _inhabit(st, ctx, l, depth - 1, calculus)
            if t1 is None:
                return None
            t2 = _inhabit(st, ctx, r, depth - 1, calculus)
            return None if t2 is None else Pair(t1, t2)
        case Disj(l, r):
            first = rng.choice((1, 2))
            for i in (first, 3 - first):
                mine, other = (l, r) if i == 1 else (r, l)
                p = _inhabit(st, ctx, mine, depth - 1, calculus)
                if p is not None:
                    return Inj(i, other, p)
    return None


def _app_ctx(st, ctx, heads, depth, calculus):
    n, a = st.rng.choice(heads)
    arg = _inhabit(st, ctx, a.left, depth - 1, calculus)
    return None if arg is None else App(Var(n), arg)


def _app_ctx2(st, ctx, heads, depth, calculus):
    n, a = st.rng.choice(heads)
    arg1 = _inhabit(st, ctx, a.left, depth - 2, calculus)
    if arg1 is None:
        return None
    arg2 = _inhabit(st, ctx, a.right.left, depth - 2, calculus)
    return None if arg2 is None else App(App(Var(n), arg1), arg2)


def _case_ctx(st, ctx, disjs, goal, depth, calculus):
    n, a = st.rng.choice(disjs)
    y = st.fresh()
    b1 = _inhabit(st, {**ctx, y: a.left}, goal, depth - 1, calculus)
    if b1 is None:
        return None
    b2 = _inhabit(st, {**ctx, y: a.right}, goal, depth - 1, calculus)
    return None if b2 is None else Case(Var(n), y, b1, b2)


def _proj_ctx(rng, side_matches):
    n, a, i = rng.choice(side_matches)
    return Proj(i, Var(n))


def _exfalso_neg(st, ctx, negs, goal, depth, calculus):
    n, a = st.rng.choice(negs)
    arg = _inhabit(st, ctx, a.left, depth - 1, calculus)
    return None if arg is None else Exfalso(goal, App(Var(n), arg))


def _beta_redex(st, ctx, goal, depth, calculus):
    rng = st.rng
    arg_ty = goal if rng.random() < 0.4 else _formula(rng, 1, st.atoms)
    arg = _inhabit(st, ctx, arg_ty, depth - 2, calculus)
    if arg is None:
        return None
    x = st.fresh()
    if arg_ty == goal and rng.random() < 0.6:
        body = Var(x)
    else:
        body = _inhabit(st, {**ctx, x: arg_ty}, goal, depth - 2, calculus)
        if body is None:
            return None
    return App(Abs(x, arg_ty, body), arg)


def _proj_redex(st, ctx, goal, depth, calculus):
    rng = st.rng
    other = _formula(rng, 1, st.atoms)
    t1 = _inhabit(st, ctx, goal, depth - 2, calculus)
    if t1 is None:
        return None
    t2 = _inhabit(st, ctx, other, depth - 2, calculus)
    if t2 is None:
        return None
    i = rng.choice((1, 2))
    pair = Pair(t1, t2) if i == 1 else Pair(t2, t1)
    return Proj(i, pair)


def _case_redex(st, ctx, goal, depth, calculus):
    rng = st.rng
    l = _formula(rng, 1, st.atoms)
    r = _formula(rng, 1, st.atoms)
    i = rng.choice((1, 2))
    payload = _inhabit(st, ctx, l if i == 1 else r, depth - 2, calculus)
    if payload is None:
        return None
    y = st.fresh()
    b1 = _inhabit(st, {**ctx, y: l}, goal, depth - 2, calculus)
    if b1 is None:
        return None
    b2 = _inhabit(st, {**ctx, y: r}, goal, depth - 2, calculus)
    if b2 is None:
        return None
    scrut = Inj(i, r if i == 1 else l, payload)
    return Case(scrut, y, b1, b2)


def _try_harrop(st, ctx, goal, depth, calculus):
    rng = st.rng
    annot = neg(_formula(rng, 1, st.atoms))
    x = st.fresh()
    disj = Disj(_formula(rng, 1, st.atoms), _formula(rng, 1, st.atoms))
    main = _inhabit(st, {**ctx, x: annot}, disj, depth - 1, calculus)
    if main is None:
        return None
    y = st.fresh()
    b1 = _inhabit(st, {**ctx, y: Impl(annot, disj.left)}, goal, depth - 1, calculus)
    if b1 is None:
        return None
    b2 = _inhabit(st, {**ctx, y: Impl(annot, disj.right)}, goal, depth - 1, calculus)
    if b2 is None:
        return None
    return Harrop(x, annot, main, y, b1, b2)


def _try_visser(st, ctx, goal, depth, calculus):
    rng = st.rng
    template = rng.choice(("inj", "efq", "app"))
    p0 = Atom(st.atoms[0])
    ident_ty = Impl(p0, p0)
    xa = st.fresh()
    ident = Abs(xa, p0, Var(xa))
    x1 = st.fresh()

    if template == "inj":
        ann = Impl(_formula(rng, 1, st.atoms), _formula(rng, 1, st.atoms))
        other = _formula(rng, 1, st.atoms)
        side = rng.choice((1, 2))
        binders = [(x1, ann)]
        main = Inj(side, other, Var(x1))
        disj = Disj(ann, other) if side == 1 else Disj(other, ann)
    elif template == "efq":
        ann = Impl(ident_ty, FALSUM)
        binders = [(x1, ann)]
        disj = Disj(_formula(rng, 1, st.atoms), _formula(rng, 1, st.atoms))
        main = Exfalso(disj, App(Var(x1), ident))
    else:
        disj = Disj(_formula(rng, 1, st.atoms), _formula(rng, 1, st.atoms))
        ann = Impl(ident_ty, disj)
        binders = [(x1, ann)]
        main = App(Var(x1), ident)

    if rng.random() < 0.3:
        extra = st.fresh()
        binders.append((extra, Impl(_formula(rng, 1, st.atoms),
                                    _formula(rng, 1, st.atoms))))
    bs = tuple(binders)

    y = st.fresh()
    b1 = _inhabit(st, {**ctx, y: _curried(bs, disj.left)}, goal, depth - 1, calculus)
    if b1 is None:
        return None
    b2 = _inhabit(st, {**ctx, y: _curried(bs, disj.right)}, goal, depth - 1, calculus)
    if b2 is None:
        return None
    z = st.fresh()
    us = []
    for _, ann_j in bs:
        u = _inhabit(st, {**ctx, z: _curried(bs, ann_j.left)}, goal, depth - 1, calculus)
        if u is None:
            return None
        us.append(u)
    return Visser(bs, main, y, b1, b2, z, tuple(us))


def generate_typed(calculus: str = "IPC", max_depth: int = 5, atom_count: int = 3,
                   seed: int = 0, *, ctx_shape: str = "any",
                   goal: Formula | None = None, closed: bool = False,
                   ) -> tuple[TypingContext, Term, Formula]:
    """A well-typed (context, term, formula) triple, deterministic in seed."""
    if not 1 <= atom_count <= len(ATOM_NAMES):
        raise ValueError(f"atom_count must be 1..{len(ATOM_NAMES)}")
    if ctx_shape not in CTX_SHAPES:
        raise ValueError(f"ctx_shape must be one of {CTX_SHAPES}")
    rng = random.Random(seed)
    atoms = ATOM_NAMES[:atom_count]

    for _ in range(60):
        g = goal if goal is not None else _formula(rng, rng.randint(1, 3), atoms)
        if closed:
            ctx: TypingContext = {}
        else:
            ctx = {f"g{i + 1}": _ctx_entry(rng, ctx_shape, atoms)
                   for i in range(rng.randint(0, 3))}
        st = _GenState(rng, 600, atoms)
        t = _inhabit(st, ctx, g, max_depth, calculus)
        if t is None:
            continue
        if not checks(ctx, t, g, calculus):
            raise InternalError("generator produced an ill-typed term")
        return ctx, t, g
    raise GenerationFailed(
        f"no inhabitant within budget (calculus={calculus}, seed={seed})"
    )


def _paths(t: Term, prefix=()):  # all positions, preorder
    yield prefix
    for i, c in enumerate(children(t)):
        yield from _paths(c, prefix + (i,))


def shrink_typed(ctx: TypingContext, t: Term, a: Formula,
                 calculus: str = "IPC") -> list[Term]:
    """Smaller terms of the same type under the same context, size order."""
    out = []
    seen = {nameless(t)}
    for path in _paths(t):
        if not path:
            continue
        s = subterm_at(t, path)
        if free_vars(s) <= set(ctx) and checks(ctx, s, a, calculus):
            key = nameless(s)
            if key not in seen:
                seen.add(key)
                out.append(s)
    names = sorted(ctx)
    for path in _paths(t):
        for n in names:
            cand = replace_at(t, path, Var(n))
            key = nameless(cand)
            if key in seen or term_size(cand) >= term_size(t):
                continue
            if checks(ctx, cand, a, calculus):
                seen.add(key)
                out.append(cand)
    out.sort(key=lambda s: (term_size(s), repr(s)))
    return out
