"""Exact rational simplex (two-phase, Bland's rule).

Solves ``maximize c.x  s.t.  A x = b, x >= 0`` over ``fractions.Fraction``.
Small dense tableau; meant for the modest systems produced elsewhere in the
package, not for performance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _pivot(T: List[List[Fraction]], basis: List[int], row: int, col: int) -> None:
    piv = T[row][col]
    if piv != 1:
        T[row] = [v / piv for v in T[row]]
    prow = T[row]
    for r in range(len(T)):
        if r != row:
            f = T[r][col]
            if f:
                T[r] = [a - f * b for a, b in zip(T[r], prow)]
    basis[row] = col


def _run(T: List[List[Fraction]], basis: List[int], allowed: int) -> str:
    """Maximise the objective stored in the last row as ``z - c.x = v``.

    Columns ``>= allowed`` (but the rhs) never enter the basis.
    """
    m = len(T) - 1
    while True:
        obj = T[m]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        best = None
        for r in range(m):
            a = T[r][col]
            if a > 0:
                ratio = T[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], col)


def linprog_eq(c: Sequence, A: Sequence[Sequence], b: Sequence) -> Tuple[str, Optional[List[Fraction]], Optional[Fraction]]:
    """Maximise ``c.x`` subject to ``A x = b``, ``x >= 0``.

    Returns ``(status, x, value)``; ``x``/``value`` are None unless optimal.
    """
    n = len(c)
    m = len(A)
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)
    # phase 1: artificial variables n..n+m-1
    T = [rows[i] + [Fraction(int(j == i)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= T[i][j]
        obj[-1] -= T[i][-1]
    T.append(obj)
    _run(T, basis, n)
    if T[m][-1] != 0:
        return INFEASIBLE, None, None
    # drive remaining artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is not None:
                _pivot(T, basis, r, col)
    keep = [r for r in range(m) if basis[r] < n]
    T = [T[r][:n] + [T[r][-1]] for r in keep]
    basis = [basis[r] for r in keep]
    # phase 2
    obj = [-Fraction(v) for v in c] + [Fraction(0)]
    for r, bv in enumerate(basis):
        f = obj[bv]
        if f:
            obj = [a - f * bb for a, bb in zip(obj, T[r])]
    T.append(obj)
    status = _run(T, basis, n)
    if status != OPTIMAL:
        return status, None, None
    x = [Fraction(0)] * n
    for r, bv in enumerate(basis):
        x[bv] = T[r][-1]
    return OPTIMAL, x, T[-1][-1]
