"""Concrete syntax: parsing and printing for formulas, terms, proof scripts.

Formulas:   atoms, False, ~A (sugar for A -> False), /\\, \\/, ->
            precedence ~ > /\\ > \\/ > ->, implication right associative.
Terms:      fun (x : A) => t        abstraction
            t s                     application, left associative
            (t, s)  proj1 t         pairs and projections
            inj1[B] t  inj2[B] t    injections, annotation names the other side
            exfalso[A] t            falsity elimination
            case t of { x => s1 | x => s2 }
            hop (x : ~B). t of { y => s1 | y => s2 }
            visser (x1 : B1 -> C1, ...). t of { y => s1 | y => s2 | z => u1 | ... }
Scripts:    `calculus IPC|V|KP` pragmas, `def name : A := t` declarations,
            `--` line comments.  A def may use earlier defs; they are
            substituted in at parse time, keeping checked terms self-contained.

The printer emits minimal parentheses and prints X -> False back as ~X;
parsing a printed term returns the same tree up to bound names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Abs, App, Atom, Case, Conj, Disj, Exfalso, Falsum, Formula, Harrop, Impl,
    Inj, Pair, Proj, Term, Var, Visser, CALCULI, substitute,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        detail = f"line {line}, column {col}: {message}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)
        self.line = line
        self.col = col
        self.expected = expected


KEYWORDS = {
    "fun", "case", "of", "hop", "visser",
    "proj1", "proj2", "inj1", "inj2", "exfalso",
    "False", "def", "calculus",
}

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>--[^\n]*)"
    r"|(?P<sym>:=|->|=>|/\\|\\/|[()\[\]{}|,:.~])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'kw', 'ident', 'sym', 'eof'
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"stray character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup == "sym":
            out.append(Token("sym", lexeme, line, col))
        elif m.lastgroup == "ident":
            kind = "kw" if lexeme in KEYWORDS else "ident"
            out.append(Token(kind, lexeme, line, col))
        nl = lexeme.count("\n")
        if nl:
            line += nl
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def at(self, kind: str, value: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def eat(self, kind: str, value: str | None = None) -> bool:
        if self.at(kind, value):
            self.pos += 1
            return True
        return False

    def expect(self, kind: str, value: str) -> Token:
        if not self.at(kind, value):
            self.fail((value,))
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.at("ident"):
            self.fail(("identifier",))
        return self.advance()

    def fail(self, expected: tuple[str, ...]):
        t = self.tok
        shown = t.value if t.kind != "eof" else "end of input"
        raise ParseError(f"unexpected {shown!r}", t.line, t.col, expected)

    # formulas

    def formula(self) -> Formula:
        left = self.disj()
        if self.eat("sym", "->"):
            return Impl(left, self.formula())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.eat("sym", "\\/"):
            out = Disj(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.negf()
        while self.eat("sym", "/\\"):
            out = Conj(out, self.negf())
        return out

    def negf(self) -> Formula:
        if self.eat("sym", "~"):
            return Impl(self.negf(), Falsum())
        return self.fatom()

    def fatom(self) -> Formula:
        if self.at("ident"):
            return Atom(self.advance().value)
        if self.eat("kw", "False"):
            return Falsum()
        if self.eat("sym", "("):
            a = self.formula()
            self.expect("sym", ")")
            return a
        self.fail(("identifier", "False", "~", "("))

    # terms

    def term(self) -> Term:
        if self.eat("kw", "fun"):
            self.expect("sym", "(")
            x = self.expect_ident().value
            self.expect("sym", ":")
            a = self.formula()
            self.expect("sym", ")")
            self.expect("sym", "=>")
            return Abs(x, a, self.term())
        if self.eat("kw", "case"):
            sc = self.term()
            self.expect("kw", "of")
            self.expect("sym", "{")
            y, b1 = self.branch()
            self.expect("sym", "|")
            y2, b2 = self.branch()
            self.require_same_binder(y, y2)
            self.expect("sym", "}")
            return Case(sc, y, b1, b2)
        if self.eat("kw", "hop"):
            self.expect("sym", "(")
            x = self.expect_ident().value
            self.expect("sym", ":")
            a = self.formula()
            self.expect("sym", ")")
            self.expect("sym", ".")
            main = self.term()
            self.expect("kw", "of")
            self.expect("sym", "{")
            y, b1 = self.branch()
            self.expect("sym", "|")
            y2, b2 = self.branch()
            self.require_same_binder(y, y2)
            self.expect("sym", "}")
            try:
                return Harrop(x, a, main, y, b1, b2)
            except ValueError as e:
                raise ParseError(str(e), self.tok.line, self.tok.col) from None
        if self.eat("kw", "visser"):
            self.expect("sym", "(")
            binders = [self.vbinder()]
            while self.eat("sym", ","):
                binders.append(self.vbinder())
            self.expect("sym", ")")
            self.expect("sym", ".")
            main = self.term()
            self.expect("kw", "of")
            self.expect("sym", "{")
            y, b1 = self.branch()
            self.expect("sym", "|")
            y2, b2 = self.branch()
            self.require_same_binder(y, y2)
            us = []
            z = None
            while self.eat("sym", "|"):
                z2, u = self.branch()
                if z is None:
                    z = z2
                else:
                    self.require_same_binder(z, z2)
                us.append(u)
            close = self.tok
            self.expect("sym", "}")
            if len(us) != len(binders):
                raise ParseError(
                    f"visser has {len(binders)} binders but {len(us)} final branches",
                    close.line, close.col,
                )
            try:
                return Visser(tuple(binders), main, y, b1, b2, z, tuple(us))
            except ValueError as e:
                raise ParseError(str(e), close.line, close.col) from None
        return self.appterm()

    def vbinder(self) -> tuple[str, Formula]:
        x = self.expect_ident().value
        self.expect("sym", ":")
        tok = self.tok
        a = self.formula()
        if not isinstance(a, Impl):
            raise ParseError(
                f"visser binder {x} must be annotated with an implication",
                tok.line, tok.col,
            )
        return (x, a)

    def branch(self) -> tuple[str, Term]:
        x = self.expect_ident()
        self.expect("sym", "=>")
        return x.value, self.term()

    def require_same_binder(self, first: str, second: str):
        if first != second:
            t = self.tok
            raise ParseError(
                f"branches must bind the same name, got {first} and {second}",
                t.line, t.col,
            )

    def appterm(self) -> Term:
        out = self.prefixterm()
        while self.at("ident") or self.at("sym", "(") or self.at("kw") and self.tok.value in (
            "proj1", "proj2", "inj1", "inj2", "exfalso",
        ):
            out = App(out, self.prefixterm())
        return out

    def prefixterm(self) -> Term:
        if self.at("kw") and self.tok.value in ("proj1", "proj2"):
            i = 1 if self.advance().value == "proj1" else 2
            return Proj(i, self.prefixterm())
        if self.at("kw") and self.tok.value in ("inj1", "inj2"):
            i = 1 if self.advance().value == "inj1" else 2
            self.expect("sym", "[")
            other = self.formula()
            self.expect("sym", "]")
            return Inj(i, other, self.prefixterm())
        if self.eat("kw", "exfalso"):
            self.expect("sym", "[")
            target = self.formula()
            self.expect("sym", "]")
            return Exfalso(target, self.prefixterm())
        return self.atomterm()

    def atomterm(self) -> Term:
        if self.at("ident"):
            return Var(self.advance().value)
        if self.eat("sym", "("):
            t = self.term()
            if self.eat("sym", ","):
                s = self.term()
                self.expect("sym", ")")
                return Pair(t, s)
            self.expect("sym", ")")
            return t
        self.fail(("identifier", "(", "proj1", "proj2", "inj1", "inj2", "exfalso",
                   "fun", "case", "hop", "visser"))

    # scripts

    def script(self) -> list[Declaration]:
        decls: list[Declaration] = []
        calculus = "IPC"
        while not self.at("eof"):
            if self.eat("kw", "calculus"):
                tok = self.tok
                name = self.expect_ident().value
                if name not in CALCULI:
                    raise ParseError(
                        f"unknown calculus {name}", tok.line, tok.col, CALCULI
                    )
                calculus = name
                continue
            if self.at("kw", "def"):
                kw = self.advance()
                name = self.expect_ident().value
                if any(d.name == name for d in decls):
                    raise ParseError(f"duplicate definition {name}", kw.line, kw.col)
                self.expect("sym", ":")
                a = self.formula()
                self.expect("sym", ":=")
                body = self.term()
                for prior in decls:
                    body = substitute(body, prior.name, prior.body)
                decls.append(Declaration(name, a, body, calculus, kw.line, kw.col))
                continue
            self.fail(("def", "calculus"))
        return decls


@dataclass(frozen=True)
class Declaration:
    """One checked script entry; body has earlier definitions substituted in."""

    name: str
    formula: Formula
    body: Term
    calculus: str
    line: int
    col: int


def _finish(p: _Parser, result):
    if not p.at("eof"):
        p.fail(("end of input",))
    return result


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    return _finish(p, p.formula())


def parse_term(text: str) -> Term:
    p = _Parser(text)
    return _finish(p, p.term())


def parse_script(text: str) -> list[Declaration]:
    return _Parser(text).script()


# ---------------------------------------------------------------- printing

# Formula precedence contexts: 0 implication body, 1 disjunct, 2 conjunct,
# 3 negation argument.


def print_formula(a: Formula, prec: int = 0) -> str:
    match a:
        case Atom(n):
            return n
        case Falsum():
            return "False"
        case Impl(l, Falsum()):
            return "~" + print_formula(l, 3)
        case Impl(l, r):
            out = f"{print_formula(l, 1)} -> {print_formula(r, 0)}"
            return f"({out})" if prec > 0 else out
        case Disj(l, r):
            out = f"{print_formula(l, 1)} \\/ {print_formula(r, 2)}"
            return f"({out})" if prec > 1 else out
        case Conj(l, r):
            out = f"{print_formula(l, 2)} /\\ {print_formula(r, 3)}"
            return f"({out})" if prec > 2 else out
    raise TypeError(f"not a formula: {a!r}")


# Term precedence contexts: 0 top, 1 application head, 2 argument.


def print_term(t: Term, prec: int = 0) -> str:
    match t:
        case Var(n):
            return n
        case Pair(a, b):
            return f"({print_term(a)}, {print_term(b)})"
        case App(f, a):
            out = f"{print_term(f, 1)} {print_term(a, 2)}"
            return f"({out})" if prec > 1 else out
        case Proj(i, a):
            return f"proj{i} {print_term(a, 2)}"
        case Inj(i, other, a):
            return f"inj{i}[{print_formula(other)}] {print_term(a, 2)}"
        case Exfalso(target, a):
            return f"exfalso[{print_formula(target)}] {print_term(a, 2)}"
        case Abs(x, a, b):
            out = f"fun ({x} : {print_formula(a)}) => {print_term(b)}"
            return f"({out})" if prec > 0 else out
        case Case(sc, y, b1, b2):
            out = (
                f"case {print_term(sc)} of "
                f"{{ {y} => {print_term(b1)} | {y} => {print_term(b2)} }}"
            )
            return f"({out})" if prec > 0 else out
        case Harrop(x, a, m, y, b1, b2):
            out = (
                f"hop ({x} : {print_formula(a)}). {print_term(m)} of "
                f"{{ {y} => {print_term(b1)} | {y} => {print_term(b2)} }}"
            )
            return f"({out})" if prec > 0 else out
        case Visser(bs, m, y, b1, b2, z, us):
            bstr = ", ".join(f"{n} : {print_formula(a)}" for n, a in bs)
            branches = [f"{y} => {print_term(b1)}", f"{y} => {print_term(b2)}"]
            branches += [f"{z} => {print_term(u)}" for u in us]
            out = f"visser ({bstr}). {print_term(m)} of {{ {' | '.join(branches)} }}"
            return f"({out})" if prec > 0 else out
    raise TypeError(f"not a term: {t!r}")
