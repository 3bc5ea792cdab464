"""Integer feasibility of conjunctions of linear constraints (Omega test).

Constraints are over integer variables ``x_0..x_{n-1}``:

* equalities   ``sum c_i x_i == r``
* inequalities ``sum c_i x_i <= r``

Equalities are eliminated wholesale through the Hermite-based
parametrisation of their integer solution lattice.  Inequalities are
eliminated one variable at a time by Fourier-Motzkin with Pugh's
refinements: exact elimination when a unit coefficient makes the real
shadow integral, otherwise the dark shadow, and when that fails while the
real shadow is still feasible, the finite family of splinters.  Every branch
yields a concrete model, which is re-checked before being returned.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from ..diophantine import integer_solution_space

Row = Tuple[Tuple[int, ...], int]


class OmegaBlowup(RuntimeError):
    """Raised when the constraint set grows past ``MAX_CONSTRAINTS``."""


MAX_CONSTRAINTS = 20000


def _floordiv(a: int, b: int) -> int:
    return a // b


def _ceildiv(a: int, b: int) -> int:
    return -((-a) // b)


def _normalize(ineqs: Sequence[Row]) -> Optional[Tuple[List[Row], List[Row]]]:
    """Tighten by gcd, keep the strongest bound per direction, detect
    contradictions and turn opposite tight pairs into equalities.

    Returns ``(ineqs, eqs)`` or None if trivially infeasible.
    """
    best: Dict[Tuple[int, ...], int] = {}
    for coeffs, rhs in ineqs:
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        if g == 0:
            if rhs < 0:
                return None
            continue
        if g != 1:
            coeffs = tuple(c // g for c in coeffs)
            rhs = _floordiv(rhs, g)
        old = best.get(coeffs)
        if old is None or rhs < old:
            best[coeffs] = rhs
    out: List[Row] = []
    eqs: List[Row] = []
    for coeffs, rhs in best.items():
        neg = tuple(-c for c in coeffs)
        other = best.get(neg)
        if other is not None:
            # coeffs.x <= rhs and coeffs.x >= -other
            if -other > rhs:
                return None
            if -other == rhs:
                if coeffs > neg:
                    eqs.append((coeffs, rhs))
                continue
        out.append((coeffs, rhs))
    return out, eqs


def _check(model: Sequence[int], eqs: Sequence[Row], ineqs: Sequence[Row]) -> bool:
    for coeffs, rhs in eqs:
        if sum(c * v for c, v in zip(coeffs, model)) != rhs:
            return False
    for coeffs, rhs in ineqs:
        if sum(c * v for c, v in zip(coeffs, model)) > rhs:
            return False
    return True


def solve(n: int, eqs: Sequence[Row], ineqs: Sequence[Row]) -> Optional[List[int]]:
    """An integer model of the system, or None if it has none."""
    eqs = [(tuple(c), r) for c, r in eqs]
    ineqs = [(tuple(c), r) for c, r in ineqs]
    model = _solve(n, eqs, ineqs)
    if model is not None and not _check(model, eqs, ineqs):
        raise AssertionError("omega: produced model violates the constraints")
    return model


def _solve(n: int, eqs: List[Row], ineqs: List[Row]) -> Optional[List[int]]:
    if not eqs:
        return _solve_ineqs(n, ineqs)
    space = integer_solution_space([list(c) for c, _ in eqs], [r for _, r in eqs], n)
    if space is None:
        return None
    x0, kernel = space
    k = len(kernel)
    sub: List[Row] = []
    for coeffs, rhs in ineqs:
        new = tuple(sum(c * col[i] for i, c in enumerate(coeffs)) for col in kernel)
        sub.append((new, rhs - sum(c * v for c, v in zip(coeffs, x0))))
    t = _solve_ineqs(k, sub)
    if t is None:
        return None
    return [x0[i] + sum(col[i] * t[j] for j, col in enumerate(kernel)) for i in range(n)]


def _solve_ineqs(n: int, ineqs: List[Row]) -> Optional[List[int]]:
    norm = _normalize(ineqs)
    if norm is None:
        return None
    ineqs, eqs = norm
    if eqs:
        return _solve(n, eqs, ineqs)
    if not ineqs:
        return [0] * n
    if len(ineqs) > MAX_CONSTRAINTS:
        raise OmegaBlowup(f"{len(ineqs)} constraints")

    lowers: Dict[int, List[Row]] = {}
    uppers: Dict[int, List[Row]] = {}
    for row in ineqs:
        for v, c in enumerate(row[0]):
            if c > 0:
                uppers.setdefault(v, []).append(row)
            elif c < 0:
                lowers.setdefault(v, []).append(row)
    used = set(lowers) | set(uppers)

    # a variable bounded on one side only: drop its constraints, pick it last
    for v in sorted(used):
        if v not in lowers or v not in uppers:
            rest = [row for row in ineqs if row[0][v] == 0]
            model = _solve_ineqs(n, rest)
            if model is None:
                return None
            model[v] = 0
            model[v] = _pick(v, model, lowers.get(v, []), uppers.get(v, []))
            return model

    def cost(v: int) -> Tuple[int, int]:
        exact = all(-r[0][v] == 1 for r in lowers[v]) or all(r[0][v] == 1 for r in uppers[v])
        return (0 if exact else 1, len(lowers[v]) * len(uppers[v]))

    v = min(sorted(used), key=cost)
    lo, up = lowers[v], uppers[v]
    exact = cost(v)[0] == 0
    rest = [row for row in ineqs if row[0][v] == 0]

    def shadow(dark: bool) -> List[Row]:
        out = list(rest)
        for lc, lr in lo:
            l = -lc[v]
            for uc, ur in up:
                h = uc[v]
                coeffs = tuple(h * a + l * b for a, b in zip(lc, uc))
                slack = (l - 1) * (h - 1) if dark else 0
                out.append((coeffs, h * lr + l * ur - slack))
        return out

    model = _solve_ineqs(n, shadow(dark=not exact))
    if model is not None:
        model[v] = 0
        model[v] = _pick(v, model, lo, up)
        return model
    if exact:
        return None
    if _solve_ineqs(n, shadow(dark=False)) is None:
        return None
    h_max = max(r[0][v] for r in up)
    for lc, lr in lo:
        l = -lc[v]
        # l*x_v >= alpha where alpha = (sum_{u != v} lc_u x_u) - lr
        # splinter: l*x_v == alpha + i, i.e. -lc.x == i - lr
        top = (h_max * l - h_max - l) // h_max
        for i in range(top + 1):
            eq = (tuple(-c for c in lc), i - lr)
            model = _solve(n, [eq], ineqs)
            if model is not None:
                return model
    return None


def _pick(v: int, model: List[int], lowers: Sequence[Row], uppers: Sequence[Row]) -> int:
    """Choose x_v given the other coordinates (x_v currently 0 in model)."""
    lo = None
    for coeffs, rhs in lowers:
        l = -coeffs[v]
        alpha = sum(c * x for c, x in zip(coeffs, model)) - rhs   # l*x_v >= alpha
        b = _ceildiv(alpha, l)
        lo = b if lo is None else max(lo, b)
    hi = None
    for coeffs, rhs in uppers:
        h = coeffs[v]
        beta = rhs - sum(c * x for c, x in zip(coeffs, model))   # h*x_v <= beta
        b = _floordiv(beta, h)
        hi = b if hi is None else min(hi, b)
    if lo is not None:
        if hi is not None and lo > hi:
            raise AssertionError("omega: empty range after shadow")
        return lo
    if hi is not None:
        return min(hi, 0)
    return 0
