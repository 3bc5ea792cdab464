"""Deterministic enumeration of formulas by size.

The enumerated grammar is the canonical fragment

    phi := true | false | psi
    psi := atom | psi && psi | psi || psi

with And/Or chains left-associated and their operands strictly increasing by
canonical string.  Negation is not needed: every quantifier-free formula is
equivalent to one of these (push negations onto atoms, where they vanish).

Formulas of each exact size are generated once and sorted by their canonical
string; the list up to size k is the concatenation of those layers, so the
list for k is a prefix of the list for k + 1 and every formula of the
fragment shows up at the layer of its own size.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, Iterator, List, Tuple

from .formula import FALSE, TRUE, And, Const, Formula, Le, Mod, Or, canonical


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Nonnegative integer tuples of length ``parts`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _signed(mags: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    choices = [(0,) if m == 0 else (m, -m) for m in mags]
    return product(*choices)


def _last(op, f: Formula) -> Formula:
    while isinstance(f, op):
        f = f.right
    return f


def _chain_ok(op, left: Formula, right: Formula) -> bool:
    """Keep one representative per set of conjuncts (disjuncts): chains are
    left-associated and their operands strictly increasing by canonical string."""
    if isinstance(right, op):
        return False
    return canonical(_last(op, left)) < canonical(right)


class FormulaEnumerator:
    """Size layers for a fixed dimension, computed lazily and cached."""

    def __init__(self, n: int):
        self.n = n
        self.layers: Dict[int, List[Formula]] = {}

    def atoms(self, s: int) -> List[Formula]:
        out: List[Formula] = []
        if s < 2:
            return out
        budget = s - 1
        # c.x <= d with sum|c| + |d| = budget and c != 0
        for mags in _compositions(budget, self.n + 1):
            if not any(mags[:-1]):
                continue
            for signed in _signed(mags):
                out.append(Le(signed[:-1], signed[-1]))
        # c.x = r mod m: sum c + m = budget, 0 <= c_i < m, c != 0, 0 <= r < m
        for m in range(2, budget):
            for cs in _compositions(budget - m, self.n):
                if not any(cs) or any(c >= m for c in cs):
                    continue
                for r in range(m):
                    out.append(Mod(cs, r, m))
        return out

    def layer(self, s: int) -> List[Formula]:
        if s in self.layers:
            return self.layers[s]
        if s == 0:
            items = [FALSE, TRUE]
        else:
            items = self.atoms(s)
            for a in range(2, s - 1):
                b = s - 1 - a
                for left in self.layer(a):
                    if isinstance(left, Const):
                        continue
                    for right in self.layer(b):
                        if isinstance(right, Const):
                            continue
                        for op in (And, Or):
                            if _chain_ok(op, left, right):
                                items.append(op(left, right))
        keyed = {canonical(f): f for f in items}
        self.layers[s] = [keyed[k] for k in sorted(keyed)]
        return self.layers[s]

    def upto(self, k: int) -> List[Formula]:
        out: List[Formula] = []
        for s in range(k + 1):
            out.extend(self.layer(s))
        return out


def enumerate_formulas(n: int, k: int) -> List[Formula]:
    """All formulas over x1..xn of size <= k, ordered by (size, canonical string)."""
    return FormulaEnumerator(n).upto(k)
