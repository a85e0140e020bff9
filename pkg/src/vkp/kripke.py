"""Finite rooted Kripke models: forcing, monotonicity, countermodel search.

Models live on worlds 0..n-1 with world 0 the root and the order stored as
a set of pairs.  The search enumerates rooted partial orders by size, so a
numbered world only ever sits above lower-numbered ones; every rooted poset
shows up that way after relabeling along a linear extension.  Valuations
range over up-closed sets per atom, which keeps forcing monotone by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .syntax import Atom, Conj, Disj, Falsum, Formula, Impl


@dataclass(frozen=True)
class KripkeModel:
    size: int
    order: frozenset[tuple[int, int]]  # reflexive-transitive, (u, v) means u <= v
    valuation: dict[str, frozenset[int]]

    def above(self, w: int) -> list[int]:
        return [v for v in range(self.size) if (w, v) in self.order]

    def describe(self) -> str:
        lines = [f"{self.size} worlds, root w0"]
        for w in range(self.size):
            ups = [f"w{v}" for v in self.above(w) if v != w]
            lines.append(f"  w{w} <= {' '.join(ups) if ups else '(none)'}")
        for atom in sorted(self.valuation):
            ws = ", ".join(f"w{w}" for w in sorted(self.valuation[atom]))
            lines.append(f"  {atom}: {{{ws}}}" if ws else f"  {atom}: {{}}")
        return "\n".join(lines)


def forces(model: KripkeModel, w: int, a: Formula) -> bool:
    match a:
        case Atom(n):
            return w in model.valuation.get(n, frozenset())
        case Falsum():
            return False
        case Conj(l, r):
            return forces(model, w, l) and forces(model, w, r)
        case Disj(l, r):
            return forces(model, w, l) or forces(model, w, r)
        case Impl(l, r):
            return all(
                not forces(model, v, l) or forces(model, v, r)
                for v in model.above(w)
            )
    raise TypeError(f"not a formula: {a!r}")


def forcing_monotone(model: KripkeModel, a: Formula) -> bool:
    """Forced at w stays forced at every world above w."""
    for u, v in model.order:
        if forces(model, u, a) and not forces(model, v, a):
            return False
    return True


def is_valid_model(model: KripkeModel) -> bool:
    """Rooted partial order with up-closed valuations."""
    o = model.order
    n = model.size
    if any(not (0 <= u < n and 0 <= v < n) for u, v in o):
        return False
    if any((w, w) not in o for w in range(n)):
        return False
    if any((u, v) in o and (v, u) in o and u != v for u in range(n) for v in range(n)):
        return False
    for u, v in o:
        for (v2, w) in o:
            if v2 == v and (u, w) not in o:
                return False
    if any((0, w) not in o for w in range(n)):
        return False
    for ws in model.valuation.values():
        for w in ws:
            if any(v not in ws for v in model.above(w)):
                return False
    return True


def atoms_of(a: Formula) -> set[str]:
    match a:
        case Atom(n):
            return {n}
        case Falsum():
            return set()
        case Impl(l, r) | Conj(l, r) | Disj(l, r):
            return atoms_of(l) | atoms_of(r)
    raise TypeError(f"not a formula: {a!r}")


def _rooted_orders(n: int):
    """All rooted partial orders on 0..n-1, distinct as relations.

    Built by giving each new world a nonempty set of strict predecessors
    among the earlier ones and closing transitively.
    """
    if n == 1:
        yield frozenset({(0, 0)})
        return
    seen = set()
    pred_choices = []
    for k in range(1, n):
        opts = []
        for r in range(1, k + 1):
            opts.extend(combinations(range(k), r))
        pred_choices.append(opts)
    for combo in product(*pred_choices):
        le = {(w, w) for w in range(n)}
        for k, preds in enumerate(combo, start=1):
            for p in preds:
                le.add((p, k))
        # transitive closure; edges only point upward in numbering
        for k in range(1, n):
            below = {u for (u, v) in le if v == k}
            for u in list(below):
                below |= {u2 for (u2, v2) in le if v2 == u}
            le |= {(u, k) for u in below}
        fs = frozenset(le)
        if fs not in seen:
            seen.add(fs)
            yield fs


def _upsets(n: int, order: frozenset[tuple[int, int]]):
    out = []
    for bits in range(1 << n):
        s = frozenset(w for w in range(n) if bits >> w & 1)
        if all(v in s for w in s for v in range(n) if (w, v) in order):
            out.append(s)
    return out


def find_countermodel(a: Formula, max_worlds: int = 6) -> KripkeModel | None:
    """Smallest-first search for a rooted model whose root refuses a."""
    names = sorted(atoms_of(a))
    for n in range(1, max_worlds + 1):
        for order in _rooted_orders(n):
            model_upsets = _upsets(n, order)
            for val in product(model_upsets, repeat=len(names)):
                model = KripkeModel(n, order, dict(zip(names, val)))
                if not forces(model, 0, a):
                    return model
    return None
