"""Complete satisfiability for quantifier-free formulas.

The formula is put in negation normal form and its DNF cubes are explored
depth-first (never materialised all at once).  A cube is a conjunction of
``<=`` and divisibility atoms; each divisibility atom ``c.x = r (mod m)``
becomes the equality ``c.x - m*q = r`` over a fresh integer ``q``, and the
resulting integer system is decided by the Omega test in ``omega``.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from . import omega
from .formula import And, Const, Formula, Le, Mod, Not, Or, dim, evaluate

NONNEG = "nonneg"
ALL_INT = "all_int"


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form; negated atoms are rewritten into positive ones."""
    if isinstance(f, Const):
        return Const(f.value == positive)
    if isinstance(f, Le):
        if positive:
            return f
        # not (c.x <= d)  <=>  -c.x <= -d - 1
        return Le(tuple(-c for c in f.coeffs), -f.bound - 1)
    if isinstance(f, Mod):
        if positive:
            return f
        out: Formula = None
        for r in range(f.modulus):
            if r != f.residue:
                atom = Mod(f.coeffs, r, f.modulus)
                out = atom if out is None else Or(out, atom)
        return out
    if isinstance(f, Not):
        return nnf(f.arg, not positive)
    left, right = nnf(f.left, positive), nnf(f.right, positive)
    if isinstance(f, And) == positive:
        return And(left, right)
    return Or(left, right)


def _cubes(f: Formula):
    """Yield the DNF cubes of an NNF formula as lists of atoms."""
    stack: List[Tuple[Tuple[Formula, ...], Tuple[Formula, ...]]] = [((f,), ())]
    while stack:
        todo, lits = stack.pop()
        while todo:
            g, todo = todo[0], todo[1:]
            if isinstance(g, Const):
                if not g.value:
                    break
                continue
            if isinstance(g, And):
                todo = (g.left, g.right) + todo
                continue
            if isinstance(g, Or):
                stack.append(((g.right,) + todo, lits))
                todo = (g.left,) + todo
                continue
            lits = lits + (g,)
        else:
            yield lits


def _pad(coeffs: Sequence[int], n: int) -> Tuple[int, ...]:
    return tuple(coeffs) + (0,) * (n - len(coeffs))


def solve_cube(lits: Sequence[Formula], n: int, domain: str = NONNEG) -> Optional[Tuple[int, ...]]:
    mods = [a for a in lits if isinstance(a, Mod)]
    total = n + len(mods)
    ineqs = []
    eqs = []
    for a in lits:
        if isinstance(a, Le):
            ineqs.append((_pad(a.coeffs, total), a.bound))
    for k, a in enumerate(mods):
        row = list(_pad(a.coeffs, total))
        row[n + k] = -a.modulus
        eqs.append((tuple(row), a.residue))
    if domain == NONNEG:
        for i in range(n):
            ineqs.append((tuple(-int(j == i) for j in range(total)), 0))
    model = omega.solve(total, eqs, ineqs)
    return None if model is None else tuple(model[:n])


def satisfiable(f: Formula, domain: str = NONNEG, n: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """A model of ``f`` over N^n (NONNEG) or Z^n (ALL_INT), or None if unsat."""
    if domain not in (NONNEG, ALL_INT):
        raise ValueError(f"unknown domain {domain!r}")
    n = max(dim(f), n or 0)
    for lits in _cubes(nnf(f)):
        model = solve_cube(lits, n, domain)
        if model is not None:
            if not evaluate(f, model):
                raise AssertionError("solver returned a non-model")
            return model
    return None


def valid(f: Formula, domain: str = NONNEG, n: Optional[int] = None) -> bool:
    return satisfiable(Not(f), domain, n) is None
