"""Syntax-directed type checking for the three calculi.

IPC is the base; V adds the visser construct, KP adds hop.  A visser main
premise must be closed apart from the visser binders themselves, and that
side condition is checked against the main premise's actual free variables,
so weakening the outer context can never relax it.
"""

from __future__ import annotations

from .syntax import (
    Abs, App, Case, Conj, Disj, Exfalso, Falsum, Formula, Harrop, Impl, Inj,
    Pair, Proj, Term, TypingContext, Var, Visser, CALCULI, free_vars,
)


class TypeCheckError(Exception):
    pass


class UnknownVariable(TypeCheckError):
    def __init__(self, name: str):
        super().__init__(f"unknown variable {name}")
        self.name = name


class NotAnImplication(TypeCheckError):
    def __init__(self, got: Formula):
        super().__init__(f"expected an implication, got {_show(got)}")
        self.got = got


class NotAConjunction(TypeCheckError):
    def __init__(self, got: Formula):
        super().__init__(f"expected a conjunction, got {_show(got)}")
        self.got = got


class NotADisjunction(TypeCheckError):
    def __init__(self, got: Formula):
        super().__init__(f"expected a disjunction, got {_show(got)}")
        self.got = got


class BranchTypeMismatch(TypeCheckError):
    def __init__(self, first: Formula, second: Formula):
        super().__init__(f"branches disagree: {_show(first)} vs {_show(second)}")
        self.first = first
        self.second = second


class VisserOpenAssumption(TypeCheckError):
    """The visser main premise used hypotheses beyond its own binders."""

    def __init__(self, names):
        names = sorted(names)
        super().__init__(f"visser main premise has open assumptions: {', '.join(names)}")
        self.names = names


class CalculusViolation(TypeCheckError):
    def __init__(self, construct: str, calculus: str):
        super().__init__(f"{construct} is not part of calculus {calculus}")
        self.construct = construct
        self.calculus = calculus


class TypeMismatch(TypeCheckError):
    def __init__(self, expected: Formula, got: Formula):
        super().__init__(f"expected {_show(expected)}, got {_show(got)}")
        self.expected = expected
        self.got = got


def _show(a: Formula) -> str:
    from .parser import print_formula

    return print_formula(a)


def _curried(binders, target: Formula) -> Formula:
    """B1->C1 -> (... -> (Bn->Cn -> target))."""
    out = target
    for _, annot in reversed(binders):
        out = Impl(annot, out)
    return out


def infer(ctx: TypingContext, t: Term, calculus: str = "IPC") -> Formula:
    """Unique type of t under ctx, or a TypeCheckError."""
    if calculus not in CALCULI:
        raise ValueError(f"unknown calculus {calculus!r}")
    match t:
        case Var(n):
            if n not in ctx:
                raise UnknownVariable(n)
            return ctx[n]
        case Abs(x, a, b):
            return Impl(a, infer({**ctx, x: a}, b, calculus))
        case App(f, a):
            tf = infer(ctx, f, calculus)
            if not isinstance(tf, Impl):
                raise NotAnImplication(tf)
            ta = infer(ctx, a, calculus)
            if ta != tf.left:
                raise TypeMismatch(tf.left, ta)
            return tf.right
        case Exfalso(target, a):
            ta = infer(ctx, a, calculus)
            if not isinstance(ta, Falsum):
                raise TypeMismatch(Falsum(), ta)
            return target
        case Pair(a, b):
            return Conj(infer(ctx, a, calculus), infer(ctx, b, calculus))
        case Proj(i, a):
            ta = infer(ctx, a, calculus)
            if not isinstance(ta, Conj):
                raise NotAConjunction(ta)
            return ta.left if i == 1 else ta.right
        case Inj(i, other, a):
            ta = infer(ctx, a, calculus)
            return Disj(ta, other) if i == 1 else Disj(other, ta)
        case Case(sc, y, b1, b2):
            ts = infer(ctx, sc, calculus)
            if not isinstance(ts, Disj):
                raise NotADisjunction(ts)
            d1 = infer({**ctx, y: ts.left}, b1, calculus)
            d2 = infer({**ctx, y: ts.right}, b2, calculus)
            if d1 != d2:
                raise BranchTypeMismatch(d1, d2)
            return d1
        case Visser(bs, m, y, b1, b2, z, us):
            if calculus != "V":
                raise CalculusViolation("visser", calculus)
            names = {n for n, _ in bs}
            extra = free_vars(m) - names
            if extra:
                raise VisserOpenAssumption(extra)
            # the main premise sees exactly the visser binders, nothing else
            tm = infer(dict(bs), m, calculus)
            if not isinstance(tm, Disj):
                raise NotADisjunction(tm)
            d1 = infer({**ctx, y: _curried(bs, tm.left)}, b1, calculus)
            d2 = infer({**ctx, y: _curried(bs, tm.right)}, b2, calculus)
            if d1 != d2:
                raise BranchTypeMismatch(d1, d2)
            for (_, annot), u in zip(bs, us):
                du = infer({**ctx, z: _curried(bs, annot.left)}, u, calculus)
                if du != d1:
                    raise BranchTypeMismatch(d1, du)
            return d1
        case Harrop(x, annot, m, y, b1, b2):
            if calculus != "KP":
                raise CalculusViolation("hop", calculus)
            tm = infer({**ctx, x: annot}, m, calculus)
            if not isinstance(tm, Disj):
                raise NotADisjunction(tm)
            d1 = infer({**ctx, y: Impl(annot, tm.left)}, b1, calculus)
            d2 = infer({**ctx, y: Impl(annot, tm.right)}, b2, calculus)
            if d1 != d2:
                raise BranchTypeMismatch(d1, d2)
            return d1
    raise TypeError(f"not a term: {t!r}")


def check(ctx: TypingContext, t: Term, expected: Formula, calculus: str = "IPC") -> None:
    """Raise unless t has exactly the expected type under ctx."""
    got = infer(ctx, t, calculus)
    if got != expected:
        raise TypeMismatch(expected, got)


def checks(ctx: TypingContext, t: Term, expected: Formula | None = None,
           calculus: str = "IPC") -> bool:
    """True iff t types under ctx, and at `expected` when one is given."""
    try:
        got = infer(ctx, t, calculus)
    except TypeCheckError:
        return False
    return expected is None or got == expected
