"""Exact integer and rational linear algebra.

Matrices are lists of rows of Python ints (arbitrary precision); rational
results use ``fractions.Fraction``.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .simplex import OPTIMAL, linprog_eq

IntMatrix = List[List[int]]
IntVector = Tuple[int, ...]


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, p, q) with p*a + q*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * v for a, v in zip(row, x)) for row in A]


def hermite_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H == A U``.  ``H`` is lower
    triangular in echelon profile: pivots are positive and the entries to the
    left of a pivot in its row lie in ``[0, pivot)``.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    H = [[int(v) for v in row] for row in A]
    U = identity(n)

    def combine(i: int, j: int, p: int, q: int, r: int, s: int) -> None:
        # col_i, col_j <- p*col_i + q*col_j, r*col_i + s*col_j
        for M in (H, U):
            for row in M:
                a, b = row[i], row[j]
                row[i], row[j] = p * a + q * b, r * a + s * b

    col = 0
    for row in range(m):
        if col == n:
            break
        for j in range(col + 1, n):
            b = H[row][j]
            if b == 0:
                continue
            a = H[row][col]
            g, p, q = _egcd(a, b)
            combine(col, j, p, q, -b // g, a // g)
        piv = H[row][col]
        if piv == 0:
            continue
        if piv < 0:
            for M in (H, U):
                for r in M:
                    r[col] = -r[col]
            piv = -piv
        for k in range(col):
            f = H[row][k] // piv
            if f:
                for M in (H, U):
                    for r in M:
                        r[k] -= f * r[col]
        col += 1
    return H, U


def _pivots(H: IntMatrix) -> List[Tuple[int, int]]:
    """(row, col) of each pivot of a column echelon form."""
    out = []
    col = 0
    ncols = len(H[0]) if H else 0
    for r, row in enumerate(H):
        if col < ncols and row[col] != 0:
            out.append((r, col))
            col += 1
    return out


def integer_solution_space(A: Sequence[Sequence[int]], b: Sequence[int], n: int
                           ) -> Optional[Tuple[List[int], List[List[int]]]]:
    """All integer solutions of ``A x = b`` as ``x0 + K t`` (``t`` in Z^k).

    Returns ``(x0, K_columns)`` or None when there is no integer solution.
    """
    A = [list(r) for r in A]
    if not A:
        return [0] * n, [[int(i == j) for i in range(n)] for j in range(n)]
    if n == 0:
        return ([], []) if all(v == 0 for v in b) else None
    H, U = hermite_normal_form(A, n)
    piv = _pivots(H)
    y = [0] * n
    for k, (r, c) in enumerate(piv):
        rest = b[r] - sum(H[r][l] * y[l] for l in range(k))
        if rest % H[r][c]:
            return None
        y[c] = rest // H[r][c]
    if matvec(H, y) != list(b):
        return None
    x0 = matvec(U, y)
    r = len(piv)
    kernel = [[U[i][j] for i in range(n)] for j in range(r, n)]
    return x0, kernel


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], n: Optional[int] = None) -> Optional[IntVector]:
    """Some integer x with ``A x = b``, or None if none exists."""
    if n is None:
        n = len(A[0]) if A else 0
    sol = integer_solution_space(A, b, n)
    return None if sol is None else tuple(sol[0])


def rank(vectors: Iterable[Sequence]) -> int:
    """Rank over Q of the given vectors (Gaussian elimination on Fractions)."""
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((r for r in range(rk, len(rows)) if rows[r][c] != 0), None)
        if p is None:
            continue
        rows[rk], rows[p] = rows[p], rows[rk]
        for r in range(len(rows)):
            if r != rk and rows[r][c] != 0:
                f = rows[r][c] / rows[rk][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def rational_feasible_strict(A: Sequence[Sequence[int]], strict_indices: Iterable[int],
                             nonneg_indices: Iterable[int], n: Optional[int] = None
                             ) -> Optional[Tuple[Fraction, ...]]:
    """A rational x with ``A x = 0``, ``x[i] > 0`` (strict), ``x[i] >= 0`` (nonneg).

    Maximises a slack ``t <= 1`` with ``x[i] >= t`` on the strict indices; a
    strict solution exists iff the optimum is positive.
    """
    if n is None:
        n = len(A[0]) if A else 0
    strict = sorted(set(strict_indices))
    nonneg = set(nonneg_indices) | set(strict)
    if not strict:
        return tuple(Fraction(0) for _ in range(n))
    # column layout: for each i, x_i (>=0) or x_i+ and x_i- ; then t, then slacks
    cols: List[List[Tuple[int, int]]] = []   # per original var: list of (lp_col, sign)
    nl = 0
    for i in range(n):
        if i in nonneg:
            cols.append([(nl, 1)])
            nl += 1
        else:
            cols.append([(nl, 1), (nl + 1, -1)])
            nl += 2
    t = nl
    nslack = len(strict) + 1
    total = nl + 1 + nslack
    rows, rhs = [], []
    for arow in A:
        row = [0] * total
        for i, a in enumerate(arow):
            for c, s in cols[i]:
                row[c] += s * a
        rows.append(row)
        rhs.append(0)
    for k, i in enumerate(strict):
        # x_i - t - slack = 0
        row = [0] * total
        for c, s in cols[i]:
            row[c] += s
        row[t] = -1
        row[nl + 1 + k] = -1
        rows.append(row)
        rhs.append(0)
    row = [0] * total
    row[t] = 1
    row[total - 1] = 1
    rows.append(row)
    rhs.append(1)
    obj = [0] * total
    obj[t] = 1
    status, x, value = linprog_eq(obj, rows, rhs)
    if status != OPTIMAL or value is None or value <= 0:
        return None
    return tuple(sum((s * x[c] for c, s in cols[i]), Fraction(0)) for i in range(n))


def min_elements(X: Iterable[Sequence[int]]) -> Set[IntVector]:
    """The <=-minimal elements of a finite set of vectors."""
    items = sorted({tuple(v) for v in X}, key=lambda v: (sum(v), v))
    out: List[IntVector] = []
    for v in items:
        if not any(all(a <= b for a, b in zip(u, v)) for u in out):
            out.append(v)
    return set(out)


def hilbert_basis(A: Sequence[Sequence[int]], n: Optional[int] = None,
                  caps: Optional[Sequence[Optional[int]]] = None) -> Set[IntVector]:
    """Minimal nonzero solutions in N^n of ``A x = 0`` (Contejean-Devie).

    Breadth-first completion: a non-solution ``x`` is extended along ``e_j``
    only when ``<A x, A e_j> < 0``; candidates dominating a found solution
    are discarded.  ``caps[j]`` (if given) drops candidates with ``x[j] >
    caps[j]``; completion paths only grow coordinates, so this returns
    exactly the minimal solutions that respect the caps.
    """
    if n is None:
        n = len(A[0]) if A else 0
    cols = [tuple(row[j] for row in A) for j in range(n)]
    found: List[IntVector] = []

    def dominated(v) -> bool:
        return any(all(a <= b for a, b in zip(s, v)) for s in found)

    frontier = {}
    for j in range(n):
        if caps is not None and caps[j] is not None and caps[j] < 1:
            continue
        e = tuple(int(i == j) for i in range(n))
        frontier[e] = cols[j]
    while frontier:
        nxt = {}
        done = [v for v, img in frontier.items() if not any(img)]
        found.extend(done)
        for v, img in frontier.items():
            if not any(img):
                continue
            for j in range(n):
                if sum(a * b for a, b in zip(img, cols[j])) >= 0:
                    continue
                if caps is not None and caps[j] is not None and v[j] >= caps[j]:
                    continue
                w = v[:j] + (v[j] + 1,) + v[j + 1:]
                if w in nxt or dominated(w):
                    continue
                nxt[w] = tuple(a + b for a, b in zip(img, cols[j]))
        frontier = nxt
    return set(found)


def is_unimodular(U: Sequence[Sequence[int]]) -> bool:
    return abs(det(U)) == 1


def det(M: Sequence[Sequence[int]]) -> Fraction:
    rows = [[Fraction(v) for v in r] for r in M]
    n = len(rows)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / rows[c][c]
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return d


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(v) if g in (0, 1) else tuple(a // g for a in v)
