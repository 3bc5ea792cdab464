"""Linear and semilinear sets: membership, interior, intersection, dimension.

A linear set is ``b + P*`` where ``P*`` is the monoid of N-combinations of the
finite period set ``P``; a semilinear set is a finite union of those.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .diophantine import hilbert_basis, rank, rational_feasible_strict
from .presburger import omega

Vec = Tuple[int, ...]


def _vec(v: Iterable[int]) -> Vec:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class LinearSet:
    base: Vec
    periods: Tuple[Vec, ...] = ()

    def __post_init__(self):
        base = _vec(self.base)
        periods = tuple(sorted({_vec(p) for p in self.periods}))
        for p in periods:
            if len(p) != len(base):
                raise ValueError(f"period {p} does not match dimension {len(base)}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "periods", periods)

    @property
    def dim_ambient(self) -> int:
        return len(self.base)

    def __contains__(self, v) -> bool:
        return member_linear(self, v)


@dataclass(frozen=True)
class SemilinearSet:
    components: Tuple[LinearSet, ...] = ()
    ambient: Optional[int] = None

    def __post_init__(self):
        comps = tuple(self.components)
        dims = {c.dim_ambient for c in comps}
        if self.ambient is not None:
            dims.add(self.ambient)
        if len(dims) > 1:
            raise ValueError("components have different dimensions")
        object.__setattr__(self, "components", comps)
        if self.ambient is None and dims:
            object.__setattr__(self, "ambient", dims.pop())

    def __contains__(self, v) -> bool:
        return any(member_linear(c, v) for c in self.components)

    @property
    def bases(self) -> Tuple[Vec, ...]:
        return tuple(c.base for c in self.components)


class _NegInfinity:
    """dim of the empty set; below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


NEG_INF = _NegInfinity()


def combination(periods: Sequence[Vec], v: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """N-coefficients ``lam`` with ``sum lam_i p_i == v``, or None."""
    n = len(v)
    k = len(periods)
    eqs = [(tuple(p[i] for p in periods), int(v[i])) for i in range(n)]
    ineqs = [(tuple(-int(j == i) for j in range(k)), 0) for i in range(k)]
    model = omega.solve(k, eqs, ineqs)
    return None if model is None else tuple(model)


def member_linear(L: LinearSet, v: Sequence[int]) -> bool:
    if len(v) != L.dim_ambient:
        raise ValueError("dimension mismatch")
    return combination(L.periods, [a - b for a, b in zip(v, L.base)]) is not None


def member_semilinear(S: SemilinearSet, v: Sequence[int]) -> bool:
    return v in S


def interior_contains(P: Iterable[Sequence[int]], v: Sequence[int]) -> bool:
    """Is ``v`` in the interior of ``P*``: in ``P*`` and a combination of all
    periods with strictly positive rational coefficients."""
    P = sorted({_vec(p) for p in P})
    v = _vec(v)
    if not P:
        return not any(v)
    if combination(P, v) is None:
        return False
    # sum lam_i p_i - z v = 0 with lam > 0, z > 0
    n, k = len(v), len(P)
    A = [[p[i] for p in P] + [-v[i]] for i in range(n)]
    return rational_feasible_strict(A, range(k + 1), (), k + 1) is not None


def strict_combination(P: Sequence[Vec], v: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
    """Positive rational coefficients expressing v over P, if any."""
    P = list(P)
    n, k = len(v), len(P)
    A = [[p[i] for p in P] + [-v[i]] for i in range(n)]
    sol = rational_feasible_strict(A, range(k + 1), (), k + 1)
    if sol is None:
        return None
    z = sol[-1]
    return tuple(x / z for x in sol[:-1])


def intersect_monoids(P1: Iterable[Sequence[int]], P2: Iterable[Sequence[int]]) -> Tuple[Vec, ...]:
    """Periods of ``P1* & P2*``: projections of the Hilbert basis of
    ``sum l1 p1 = sum l2 p2``."""
    P1 = sorted({_vec(p) for p in P1})
    P2 = sorted({_vec(p) for p in P2})
    if not P1 or not P2:
        return ()
    n = len(P1[0])
    A = [[p[i] for p in P1] + [-q[i] for q in P2] for i in range(n)]
    out = set()
    for h in hilbert_basis(A, len(P1) + len(P2)):
        img = tuple(sum(h[j] * P1[j][i] for j in range(len(P1))) for i in range(n))
        if any(img):
            out.add(img)
    return tuple(sorted(out))


def intersect_linear(L1: LinearSet, L2: LinearSet) -> SemilinearSet:
    """``L1 & L2`` as ``B + (P1* & P2*)``.

    The inhomogeneous system ``b1 + sum l1 p1 = b2 + sum l2 p2`` is
    homogenised with a variable ``z`` multiplying ``b1 - b2``: Hilbert basis
    elements with ``z = 1`` give the bases, those with ``z = 0`` the periods.
    """
    if L1.dim_ambient != L2.dim_ambient:
        raise ValueError("dimension mismatch")
    n = L1.dim_ambient
    P1, P2 = L1.periods, L2.periods
    k1, k2 = len(P1), len(P2)
    A = [[p[i] for p in P1] + [-q[i] for q in P2] + [L1.base[i] - L2.base[i]] for i in range(n)]
    caps: List[Optional[int]] = [None] * (k1 + k2) + [1]
    bases, periods = set(), set()
    for h in hilbert_basis(A, k1 + k2 + 1, caps):
        img = tuple(sum(h[j] * P1[j][i] for j in range(k1)) for i in range(n))
        if h[-1] == 1:
            bases.add(tuple(b + x for b, x in zip(L1.base, img)))
        elif h[-1] == 0 and any(img):
            periods.add(img)
    per = tuple(sorted(periods))
    return SemilinearSet(tuple(LinearSet(b, per) for b in sorted(bases)), n)


def intersect_semilinear(S1: SemilinearSet, S2: SemilinearSet) -> SemilinearSet:
    comps = []
    for a in S1.components:
        for b in S2.components:
            comps.extend(intersect_linear(a, b).components)
    return SemilinearSet(tuple(comps), S1.ambient if S1.ambient is not None else S2.ambient)


def dim_linear(L: LinearSet) -> int:
    return rank(L.periods) if L.periods else 0


def dim_semilinear(S: SemilinearSet):
    if not S.components:
        return NEG_INF
    return max(dim_linear(c) for c in S.components)
