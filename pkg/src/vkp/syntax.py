"""Abstract syntax: formulas, proof terms, contexts.

Terms carry named binders and a formula annotation at every binding site,
so checking is syntax-directed.  Alpha-equivalence goes through a nameless
index form; substitution is capture-avoiding and renames colliding binders
deterministically (smallest unused numeric suffix).
"""

from __future__ import annotations

from dataclasses import dataclass


# ---------------------------------------------------------------- formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Falsum(Formula):
    pass


@dataclass(frozen=True)
class Impl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Conj(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Disj(Formula):
    left: Formula
    right: Formula


FALSUM = Falsum()


def neg(a: Formula) -> Formula:
    """Negation is sugar: ~A is A -> False, never a separate node."""
    return Impl(a, FALSUM)


def is_neg(a: Formula) -> bool:
    return isinstance(a, Impl) and a.right == FALSUM


# Calculi are plain strings; they match the script pragma spellings.
CALCULI = ("IPC", "V", "KP")


# ------------------------------------------------------------------- terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Abs(Term):
    binder: str
    annot: Formula
    body: Term


@dataclass(frozen=True)
class Exfalso(Term):
    """Ex falso quodlibet; target records the type being produced."""

    target: Formula
    arg: Term


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Proj(Term):
    index: int  # 1 or 2
    arg: Term

    def __post_init__(self):
        if self.index not in (1, 2):
            raise ValueError(f"projection index must be 1 or 2, got {self.index}")


@dataclass(frozen=True)
class Inj(Term):
    """Injection into a disjunction; `other` is the absent disjunct."""

    index: int  # 1 or 2
    other: Formula
    arg: Term

    def __post_init__(self):
        if self.index not in (1, 2):
            raise ValueError(f"injection index must be 1 or 2, got {self.index}")


@dataclass(frozen=True)
class Case(Term):
    """Disjunction elimination; binder is shared by both branches."""

    scrutinee: Term
    binder: str
    branch1: Term
    branch2: Term


@dataclass(frozen=True)
class Visser(Term):
    """Case split on a disjunction proved from implication hypotheses alone.

    binders lists the hypotheses (all implications) available to the main
    premise; main may use nothing else.  branch1/branch2 consume the
    abstracted disjunct through case_binder, app_branches[j] consumes an
    abstracted argument for binder j through app_binder.
    """

    binders: tuple[tuple[str, Formula], ...]
    main: Term
    case_binder: str
    branch1: Term
    branch2: Term
    app_binder: str
    app_branches: tuple[Term, ...]

    def __post_init__(self):
        if len(self.binders) < 1:
            raise ValueError("visser needs at least one binder")
        if len(self.app_branches) != len(self.binders):
            raise ValueError(
                f"visser has {len(self.binders)} binders "
                f"but {len(self.app_branches)} app branches"
            )
        names = [n for n, _ in self.binders]
        if len(set(names)) != len(names):
            raise ValueError(f"visser binder names must be distinct: {names}")
        for n, a in self.binders:
            if not isinstance(a, Impl):
                raise ValueError(f"visser binder {n} must be annotated with an implication")

    @property
    def n(self) -> int:
        return len(self.binders)


@dataclass(frozen=True)
class Harrop(Term):
    """Case split on a disjunction proved under one negated hypothesis."""

    binder: str
    annot: Formula  # must be a negation
    main: Term
    case_binder: str
    branch1: Term
    branch2: Term

    def __post_init__(self):
        if not is_neg(self.annot):
            raise ValueError("hop binder must be annotated with a negation")


# A typing context is an insertion-ordered map with distinct names.
TypingContext = dict[str, Formula]


# ------------------------------------------------------- scopes and traversal

# Child index convention, used for reduction paths:
#   App: 0 fun, 1 arg          Abs: 0 body         Exfalso: 0 arg
#   Pair: 0 fst, 1 snd         Proj: 0 arg         Inj: 0 arg
#   Case: 0 scrutinee, 1 branch1, 2 branch2
#   Visser: 0 main, 1 branch1, 2 branch2, 3.. app_branches
#   Harrop: 0 main, 1 branch1, 2 branch2


def children(t: Term) -> tuple[Term, ...]:
    match t:
        case Var():
            return ()
        case App(f, a):
            return (f, a)
        case Abs(_, _, b):
            return (b,)
        case Exfalso(_, a):
            return (a,)
        case Pair(a, b):
            return (a, b)
        case Proj(_, a):
            return (a,)
        case Inj(_, _, a):
            return (a,)
        case Case(s, _, b1, b2):
            return (s, b1, b2)
        case Visser(_, m, _, b1, b2, _, us):
            return (m, b1, b2) + us
        case Harrop(_, _, m, _, b1, b2):
            return (m, b1, b2)
    raise TypeError(f"not a term: {t!r}")


def with_children(t: Term, new: tuple[Term, ...]) -> Term:
    """Rebuild t with its children replaced, binders and annotations kept."""
    match t:
        case Var():
            return t
        case App():
            return App(new[0], new[1])
        case Abs(x, a, _):
            return Abs(x, a, new[0])
        case Exfalso(f, _):
            return Exfalso(f, new[0])
        case Pair():
            return Pair(new[0], new[1])
        case Proj(i, _):
            return Proj(i, new[0])
        case Inj(i, o, _):
            return Inj(i, o, new[0])
        case Case(_, y, _, _):
            return Case(new[0], y, new[1], new[2])
        case Visser(bs, _, y, _, _, z, _):
            return Visser(bs, new[0], y, new[1], new[2], z, tuple(new[3:]))
        case Harrop(x, a, _, y, _, _):
            return Harrop(x, a, new[0], y, new[1], new[2])
    raise TypeError(f"not a term: {t!r}")


def binders_of_child(t: Term, i: int) -> tuple[str, ...]:
    """Names bound in child i of t, in binding order."""
    match t:
        case Abs(x, _, _):
            return (x,)
        case Case(_, y, _, _):
            return () if i == 0 else (y,)
        case Visser(bs, _, y, _, _, z, _):
            if i == 0:
                return tuple(n for n, _ in bs)
            if i in (1, 2):
                return (y,)
            return (z,)
        case Harrop(x, _, _, y, _, _):
            return (x,) if i == 0 else (y,)
    return ()


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        t = children(t)[i]
    return t


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    cs = list(children(t))
    cs[path[0]] = replace_at(cs[path[0]], path[1:], new)
    return with_children(t, tuple(cs))


# ------------------------------------------------------------ free variables


def free_vars(t: Term) -> set[str]:
    out: set[str] = set()
    for i, c in enumerate(children(t)):
        out |= free_vars(c) - set(binders_of_child(t, i))
    if isinstance(t, Var):
        out.add(t.name)
    return out


def fresh_name(base: str, avoid: set[str]) -> str:
    """Smallest numeric suffix making base unused; deterministic."""
    k = 1
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


# -------------------------------------------------------------- substitution


def _scoped(bound: tuple[str, ...], bodies: list[Term], x: str, s: Term):
    """Substitute s for x in bodies sharing one binder group, renaming on capture.

    A binder name shared across bodies (case branches, visser app branches)
    is renamed in all of them at once, keeping the single stored name valid.
    """
    if x in bound or all(x not in free_vars(b) for b in bodies):
        return bound, bodies
    fvs = free_vars(s)
    if any(b in fvs for b in bound):
        avoid = fvs | {x} | set(bound)
        for b in bodies:
            avoid |= free_vars(b)
        new_bound = []
        for b in bound:
            if b in fvs:
                b2 = fresh_name(b, avoid)
                avoid.add(b2)
                bodies = [substitute(bd, b, Var(b2)) for bd in bodies]
                new_bound.append(b2)
            else:
                new_bound.append(b)
        bound = tuple(new_bound)
    bodies = [substitute(b, x, s) for b in bodies]
    return bound, bodies


def substitute(t: Term, x: str, s: Term) -> Term:
    """t with s put in for free occurrences of x, renaming binders on capture."""
    if x not in free_vars(t):
        return t
    match t:
        case Var():
            return s  # x is free in t, so this is x itself
        case App(f, a):
            return App(substitute(f, x, s), substitute(a, x, s))
        case Exfalso(f, a):
            return Exfalso(f, substitute(a, x, s))
        case Pair(a, b):
            return Pair(substitute(a, x, s), substitute(b, x, s))
        case Proj(i, a):
            return Proj(i, substitute(a, x, s))
        case Inj(i, o, a):
            return Inj(i, o, substitute(a, x, s))
        case Abs(b, ann, body):
            bound, [body2] = _scoped((b,), [body], x, s)
            return Abs(bound[0], ann, body2)
        case Case(sc, y, b1, b2):
            bound, [c1, c2] = _scoped((y,), [b1, b2], x, s)
            return Case(substitute(sc, x, s), bound[0], c1, c2)
        case Visser(bs, m, y, b1, b2, z, us):
            names = tuple(n for n, _ in bs)
            names2, [m2] = _scoped(names, [m], x, s)
            bs2 = tuple((n2, a) for n2, (_, a) in zip(names2, bs))
            yb, [c1, c2] = _scoped((y,), [b1, b2], x, s)
            zb, us2 = _scoped((z,), list(us), x, s)
            return Visser(bs2, m2, yb[0], c1, c2, zb[0], tuple(us2))
        case Harrop(xb, ann, m, y, b1, b2):
            hb, [m2] = _scoped((xb,), [m], x, s)
            yb, [c1, c2] = _scoped((y,), [b1, b2], x, s)
            return Harrop(hb[0], ann, m2, yb[0], c1, c2)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------- alpha-equivalence


def nameless(t: Term) -> tuple:
    """Canonical index form: bound names become de Bruijn style distances."""
    return _nameless(t, {}, 0)


def _nameless(t: Term, env: dict[str, int], depth: int) -> tuple:
    def under(bound: tuple[str, ...], sub: Term) -> tuple:
        e = dict(env)
        d = depth
        for b in bound:
            e[b] = d
            d += 1
        return _nameless(sub, e, d)

    match t:
        case Var(n):
            if n in env:
                return ("b", depth - env[n] - 1)
            return ("f", n)
        case App(f, a):
            return ("app", _nameless(f, env, depth), _nameless(a, env, depth))
        case Abs(x, a, b):
            return ("abs", a, under((x,), b))
        case Exfalso(f, a):
            return ("efq", f, _nameless(a, env, depth))
        case Pair(a, b):
            return ("pair", _nameless(a, env, depth), _nameless(b, env, depth))
        case Proj(i, a):
            return ("proj", i, _nameless(a, env, depth))
        case Inj(i, o, a):
            return ("inj", i, o, _nameless(a, env, depth))
        case Case(sc, y, b1, b2):
            return ("case", _nameless(sc, env, depth), under((y,), b1), under((y,), b2))
        case Visser(bs, m, y, b1, b2, z, us):
            names = tuple(n for n, _ in bs)
            annots = tuple(a for _, a in bs)
            return (
                "visser",
                annots,
                under(names, m),
                under((y,), b1),
                under((y,), b2),
                tuple(under((z,), u) for u in us),
            )
        case Harrop(x, a, m, y, b1, b2):
            return ("hop", a, under((x,), m), under((y,), b1), under((y,), b2))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq(t: Term, s: Term) -> bool:
    """Term equality up to bound-variable names; annotations must agree."""
    return nameless(t) == nameless(s)


def term_size(t: Term) -> int:
    return 1 + sum(term_size(c) for c in children(t))


def term_depth(t: Term) -> int:
    cs = children(t)
    return 1 + (max(map(term_depth, cs)) if cs else 0)
