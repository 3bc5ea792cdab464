"""Marked reachability graph sequences (MRGS).

An MRGS alternates marked reachability graphs ``M_j = (m_j, x_j, G_j, x'_j,
m'_j)`` and letters ``a_j``.  This module builds their characteristic
systems, decides the large solution condition and the input/output loop
conditions (together: perfectness), and for a perfect MRGS constructs
accepted sequences whose constrained quantities are all at least a given
level ``c``, validating them by replay.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .diophantine import integer_solution_space, rational_feasible_strict
from .vas import (TOP, ExtConfig, Transition, UsageError, VasSystem, VassSystem, add_displacement,
                  config_unlhd, cover_witness, format_config, karp_miller_covers)

Edge = Transition


# -- graphs -----------------------------------------------------------------

@dataclass(frozen=True)
class ReachGraph:
    """Nodes are named extended configurations; edges follow the VAS."""

    vas: VasSystem
    nodes: Mapping[str, ExtConfig]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        nodes = {str(k): tuple(v) for k, v in dict(self.nodes).items()}
        if not nodes:
            raise UsageError("a reachability graph needs at least one node")
        edges = tuple(sorted({e if isinstance(e, Transition) else Transition(*e) for e in self.edges},
                             key=lambda e: (e.src, e.action, e.dst)))
        for name, q in nodes.items():
            if len(q) != self.vas.dim:
                raise UsageError(f"node {name} has the wrong dimension")
            if any(v is not TOP and v < 0 for v in q):
                raise UsageError(f"node {name} has a negative entry")
        for e in edges:
            if e.src not in nodes or e.dst not in nodes:
                raise UsageError(f"edge {e} uses an unknown node")
            if add_displacement(nodes[e.src], self.vas.delta(e.action)) != nodes[e.dst]:
                raise UsageError(f"edge {e.src} -{e.action}-> {e.dst} is not a step of the VAS")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        if not _strongly_connected(nodes, edges):
            raise UsageError("reachability graph is not strongly connected")

    def as_vass(self) -> VassSystem:
        return VassSystem(tuple(sorted(self.nodes)), self.edges, self.vas)

    def __hash__(self):
        return hash((tuple(sorted(self.nodes.items(), key=lambda kv: kv[0])), self.edges))


def _strongly_connected(nodes: Mapping[str, ExtConfig], edges: Sequence[Edge]) -> bool:
    names = sorted(nodes)
    fwd: Dict[str, List[str]] = {q: [] for q in names}
    bwd: Dict[str, List[str]] = {q: [] for q in names}
    for e in edges:
        fwd[e.src].append(e.dst)
        bwd[e.dst].append(e.src)

    def reach(adj) -> set:
        seen = {names[0]}
        todo = [names[0]]
        while todo:
            for nxt in adj[todo.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    return len(reach(fwd)) == len(names) == len(reach(bwd))


@dataclass(frozen=True)
class MarkedGraph:
    m: ExtConfig
    x: str
    graph: ReachGraph
    x_out: str
    m_out: ExtConfig

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        object.__setattr__(self, "m_out", tuple(self.m_out))
        nodes = self.graph.nodes
        if self.x not in nodes or self.x_out not in nodes:
            raise UsageError("input/output state is not a node of the graph")
        if not config_unlhd(self.m, nodes[self.x]):
            raise UsageError(f"input constraint {format_config(self.m)} is not below {format_config(nodes[self.x])}")
        if not config_unlhd(self.m_out, nodes[self.x_out]):
            raise UsageError(f"output constraint {format_config(self.m_out)} is not below "
                             f"{format_config(nodes[self.x_out])}")

    @property
    def x_config(self) -> ExtConfig:
        return self.graph.nodes[self.x]

    @property
    def x_out_config(self) -> ExtConfig:
        return self.graph.nodes[self.x_out]


@dataclass(frozen=True)
class Mrgs:
    vas: VasSystem
    blocks: Tuple[MarkedGraph, ...]
    joins: Tuple[str, ...] = ()
    m: Optional[ExtConfig] = None
    m_out: Optional[ExtConfig] = None

    def __post_init__(self):
        blocks = tuple(self.blocks)
        joins = tuple(self.joins)
        if not blocks:
            raise UsageError("an MRGS has at least one marked graph")
        if len(joins) != len(blocks) - 1:
            raise UsageError("need exactly one joining action between consecutive graphs")
        for a in joins:
            self.vas.delta(a)
        for b in blocks:
            if b.graph.vas != self.vas:
                raise UsageError("all graphs must share the VAS")
        m = blocks[0].m if self.m is None else tuple(self.m)
        m_out = blocks[-1].m_out if self.m_out is None else tuple(self.m_out)
        if not config_unlhd(blocks[0].m, m) or not config_unlhd(blocks[-1].m_out, m_out):
            raise UsageError("outer constraints are not compatible with the first/last marked graph")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "joins", joins)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "m_out", m_out)


def trivial_mrgs(vas: VasSystem, s: Sequence[int], s_out: Sequence[int]) -> Mrgs:
    """One all-TOP node with a self-loop per action; recognises L(s, V, s')."""
    top = tuple(TOP for _ in range(vas.dim))
    g = ReachGraph(vas, {"top": top}, tuple(Transition("top", a, "top") for a in vas.alphabet))
    return Mrgs(vas, (MarkedGraph(tuple(s), "top", g, "top", tuple(s_out)),))


# -- Kirchhoff / Euler --------------------------------------------------------

def kirchhoff_check(G: ReachGraph, q: str, q_out: str, mu: Mapping[Edge, int]) -> bool:
    """in(p) + e(q, p) == out(p) + e(p, q') at every node p."""
    bal = {p: 0 for p in G.nodes}
    for e in G.edges:
        k = mu.get(e, 0)
        bal[e.dst] += k
        bal[e.src] -= k
    bal[q] += 1
    bal[q_out] -= 1
    return all(v == 0 for v in bal.values())


def euler_path(G: ReachGraph, q: str, q_out: str, mu: Mapping[Edge, int]) -> Optional[Tuple[Edge, ...]]:
    """A path from q to q' whose edge counts are exactly ``mu`` (all >= 1)."""
    for e in G.edges:
        if mu.get(e, 0) < 1:
            raise UsageError(f"edge {e} has count {mu.get(e, 0)}; every edge needs count >= 1")
    for e in mu:
        if e not in G.edges:
            raise UsageError(f"{e} is not an edge of the graph")
    if not kirchhoff_check(G, q, q_out, mu):
        return None
    remaining = {e: int(mu[e]) for e in G.edges}
    out: Dict[str, List[Edge]] = {p: [] for p in G.nodes}
    for e in G.edges:
        out[e.src].append(e)
    ptr = {p: 0 for p in G.nodes}

    def next_edge(p: str) -> Optional[Edge]:
        lst = out[p]
        while ptr[p] < len(lst):
            e = lst[ptr[p]]
            if remaining[e] > 0:
                remaining[e] -= 1
                return e
            ptr[p] += 1
        return None

    # Hierholzer on edges: stack of (node, edge used to get there)
    stack: List[Tuple[str, Optional[Edge]]] = [(q, None)]
    rev: List[Edge] = []
    while stack:
        node, via = stack[-1]
        e = next_edge(node)
        if e is None:
            stack.pop()
            if via is not None:
                rev.append(via)
        else:
            stack.append((e.dst, e))
    path = tuple(reversed(rev))
    if len(path) != sum(remaining_total for remaining_total in mu.values()):
        return None
    return path


def path_counts(path: Sequence[Edge]) -> Dict[Edge, int]:
    c: Dict[Edge, int] = {}
    for e in path:
        c[e] = c.get(e, 0) + 1
    return c


# -- characteristic system ----------------------------------------------------

@dataclass
class CharSystem:
    """Rows of the characteristic system ``A xi = b`` and its variable layout.

    The homogeneous twin shares ``A`` and has right-hand side zero.
    """

    A: List[List[int]]
    b: List[int]
    names: List[str]
    s_idx: List[List[int]] = field(default_factory=list)
    mu_idx: List[Dict[Edge, int]] = field(default_factory=list)
    s_out_idx: List[List[int]] = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def homogeneous(self) -> "CharSystem":
        return CharSystem(self.A, [0] * len(self.b), self.names, self.s_idx, self.mu_idx, self.s_out_idx)

    def satisfied_by(self, xi: Sequence[int]) -> bool:
        return all(sum(a * v for a, v in zip(row, xi)) == r for row, r in zip(self.A, self.b))

    def vector(self, blocks: Sequence[Tuple[Sequence[int], Mapping[Edge, int], Sequence[int]]]) -> List[int]:
        """Pack per-block (s, mu, s') into a variable vector."""
        xi = [0] * self.nvars
        for j, (s, mu, s_out) in enumerate(blocks):
            for i, v in zip(self.s_idx[j], s):
                xi[i] = v
            for e, i in self.mu_idx[j].items():
                xi[i] = mu.get(e, 0)
            for i, v in zip(self.s_out_idx[j], s_out):
                xi[i] = v
        return xi

    def unpack(self, xi: Sequence) -> List[Tuple[list, Dict[Edge, object], list]]:
        return [([xi[i] for i in self.s_idx[j]], {e: xi[i] for e, i in self.mu_idx[j].items()},
                 [xi[i] for i in self.s_out_idx[j]]) for j in range(len(self.s_idx))]


def build_characteristic(U: Mrgs) -> CharSystem:
    n = U.vas.dim
    names: List[str] = []
    sys = CharSystem([], [], names)

    def new(label: str) -> int:
        names.append(label)
        return len(names) - 1

    for j, M in enumerate(U.blocks):
        sys.s_idx.append([new(f"s{j}[{i + 1}]") for i in range(n)])
        sys.mu_idx.append({e: new(f"mu{j}({e.src},{e.action},{e.dst})") for e in M.graph.edges})
        sys.s_out_idx.append([new(f"s'{j}[{i + 1}]") for i in range(n)])
    N = len(names)

    def row(entries: Mapping[int, int], rhs: int) -> None:
        r = [0] * N
        for k, v in entries.items():
            r[k] += v
        sys.A.append(r)
        sys.b.append(rhs)

    for j in range(1, len(U.blocks)):
        d = U.vas.delta(U.joins[j - 1])
        for i in range(n):
            # s'_{j-1} - s_j = -delta(a_j)
            row({sys.s_out_idx[j - 1][i]: 1, sys.s_idx[j][i]: -1}, -d[i])
    for j, M in enumerate(U.blocks):
        for i in range(n):
            entries: Dict[int, int] = {sys.s_idx[j][i]: 1, sys.s_out_idx[j][i]: -1}
            for e, k in sys.mu_idx[j].items():
                entries[k] = entries.get(k, 0) + U.vas.delta(e.action)[i]
            row(entries, 0)
        for i in range(n):
            if M.m[i] is not TOP:
                row({sys.s_idx[j][i]: 1}, M.m[i])
            if M.m_out[i] is not TOP:
                row({sys.s_out_idx[j][i]: 1}, M.m_out[i])
        for p in sorted(M.graph.nodes):
            entries = {}
            for e, k in sys.mu_idx[j].items():
                if e.dst == p:
                    entries[k] = entries.get(k, 0) + 1
                if e.src == p:
                    entries[k] = entries.get(k, 0) - 1
            row(entries, int(p == M.x_out) - int(p == M.x))
    return sys


def strict_indices(U: Mrgs, sys: CharSystem) -> List[int]:
    out = []
    for j, M in enumerate(U.blocks):
        out += [sys.s_idx[j][i] for i in range(U.vas.dim) if M.m[i] is TOP]
        out += list(sys.mu_idx[j].values())
        out += [sys.s_out_idx[j][i] for i in range(U.vas.dim) if M.m_out[i] is TOP]
    return out


def integer_solution(U: Mrgs) -> Optional[List[int]]:
    sys = build_characteristic(U)
    sp = integer_solution_space(sys.A, sys.b, sys.nvars)
    return None if sp is None else sp[0]


def homogeneous_strict_solution(U: Mrgs) -> Optional[Tuple[Fraction, ...]]:
    sys = build_characteristic(U)
    return rational_feasible_strict(sys.A, strict_indices(U, sys), range(sys.nvars), sys.nvars)


def large_solution_condition(U: Mrgs) -> bool:
    return integer_solution(U) is not None and homogeneous_strict_solution(U) is not None


# -- loop conditions --------------------------------------------------------------

def _loop_query(G: ReachGraph, node: str, m: ExtConfig, reverse: bool):
    x = G.nodes[node]
    strict = [i for i in range(len(m)) if m[i] is not TOP and x[i] is TOP]
    vass = G.as_vass()
    if reverse:
        vass = vass.reversed()
    target = tuple(TOP if v is TOP else v + (1 if i in strict else 0) for i, v in enumerate(m))
    return vass, (node, m), (node, target)


def input_loop_condition(M: MarkedGraph) -> bool:
    """A cycle on x fireable from m that strictly grows every i with m[i] < x[i]."""
    return karp_miller_covers(*_loop_query(M.graph, M.x, M.m, reverse=False))


def output_loop_condition(M: MarkedGraph) -> bool:
    """Symmetric condition on x' and m', decided on the reversed system."""
    return karp_miller_covers(*_loop_query(M.graph, M.x_out, M.m_out, reverse=True))


def input_loop_witness(M: MarkedGraph) -> Optional[Tuple[Edge, ...]]:
    if not input_loop_condition(M):
        return None
    return cover_witness(*_loop_query(M.graph, M.x, M.m, reverse=False))


def output_loop_witness(M: MarkedGraph) -> Optional[Tuple[Edge, ...]]:
    """Cycle on x' (forward orientation) ending in m' from a larger start."""
    if not output_loop_condition(M):
        return None
    back = cover_witness(*_loop_query(M.graph, M.x_out, M.m_out, reverse=True))
    return tuple(Transition(t.dst, t.action, t.src) for t in reversed(back))


def is_perfect(U: Mrgs) -> bool:
    if not large_solution_condition(U):
        return False
    return all(input_loop_condition(M) and output_loop_condition(M) for M in U.blocks)


# -- accepted sequences --------------------------------------------------------

@dataclass(frozen=True)
class AcceptedTuple:
    s: Tuple[int, ...]
    path: Tuple[Edge, ...]
    s_out: Tuple[int, ...]

    @property
    def word(self) -> Tuple[str, ...]:
        return tuple(e.action for e in self.path)


@dataclass(frozen=True)
class AcceptedSequence:
    blocks: Tuple[AcceptedTuple, ...]
    joins: Tuple[str, ...]

    @property
    def word(self) -> Tuple[str, ...]:
        out: List[str] = list(self.blocks[0].word)
        for a, blk in zip(self.joins, self.blocks[1:]):
            out.append(a)
            out.extend(blk.word)
        return tuple(out)


def _replay(vas: VasSystem, G: ReachGraph, start_node: str, s: Sequence[int], path: Sequence[Edge]):
    """Configurations and nodes visited along ``path`` (None if it breaks)."""
    cfgs = [tuple(s)]
    nodes = [start_node]
    for e in path:
        if e.src != nodes[-1] or e not in G.edges:
            return None
        nxt = add_displacement(cfgs[-1], vas.delta(e.action))
        if nxt is None:
            return None
        cfgs.append(nxt)
        nodes.append(e.dst)
    return cfgs, nodes


def check_accepted(U: Mrgs, seq: AcceptedSequence) -> Optional[str]:
    """None if ``seq`` is an accepted sequence for ``U``, else a reason."""
    if len(seq.blocks) != len(U.blocks) or tuple(seq.joins) != U.joins:
        return "shape does not match the MRGS"
    for j, (M, blk) in enumerate(zip(U.blocks, seq.blocks)):
        if any(v < 0 for v in blk.s) or any(v < 0 for v in blk.s_out):
            return f"block {j}: negative configuration"
        if not config_unlhd(blk.s, M.m):
            return f"block {j}: s is not below m"
        if not config_unlhd(blk.s_out, M.m_out):
            return f"block {j}: s' is not below m'"
        rep = _replay(U.vas, M.graph, M.x, blk.s, blk.path)
        if rep is None:
            return f"block {j}: path does not replay"
        cfgs, nodes = rep
        if nodes[-1] != M.x_out:
            return f"block {j}: path does not end in the output state"
        if cfgs[-1] != tuple(blk.s_out):
            return f"block {j}: run ends in {format_config(cfgs[-1])}, not s'"
        if j > 0:
            prev = seq.blocks[j - 1].s_out
            if add_displacement(prev, U.vas.delta(U.joins[j - 1])) != tuple(blk.s):
                return f"join {j}: s'_{j - 1} -{U.joins[j - 1]}-> s_{j} fails"
    return None


def check_level(U: Mrgs, seq: AcceptedSequence, c: int) -> Optional[str]:
    """None if ``seq`` meets the five level-``c`` requirements on every block.

    The prefix cycle is the shortest qualifying one; the suffix cycle is the
    shortest qualifying one that starts no earlier than the prefix ends.
    """
    bad = check_accepted(U, seq)
    if bad:
        return bad
    for j, (M, blk) in enumerate(zip(U.blocks, seq.blocks)):
        n = U.vas.dim
        if any(blk.s[i] < c for i in range(n) if M.m[i] is TOP):
            return f"block {j}: s below level on a TOP coordinate of m"
        if any(blk.s_out[i] < c for i in range(n) if M.m_out[i] is TOP):
            return f"block {j}: s' below level on a TOP coordinate of m'"
        counts = path_counts(blk.path)
        if any(counts.get(e, 0) < c for e in M.graph.edges):
            return f"block {j}: some edge used fewer than {c} times"
        cfgs, nodes = _replay(U.vas, M.graph, M.x, blk.s, blk.path)
        tx = [i for i in range(n) if M.x_config[i] is TOP]
        tx_out = [i for i in range(n) if M.x_out_config[i] is TOP]
        pre = next((p for p in range(len(cfgs))
                    if nodes[p] == M.x and all(cfgs[p][i] >= c for i in tx)), None)
        if pre is None:
            return f"block {j}: no prefix cycle reaching level {c}"
        suf = next((q for q in range(len(cfgs) - 1, pre - 1, -1)
                    if nodes[q] == M.x_out and all(cfgs[q][i] >= c for i in tx_out)), None)
        if suf is None:
            return f"block {j}: no suffix cycle from level {c}"
    return None


def _scale_to_int(v: Sequence[Fraction]) -> List[int]:
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in v]


def _disp(vas: VasSystem, path: Sequence[Edge]) -> List[int]:
    return list(vas.delta_word(e.action for e in path))


MAX_DOUBLINGS = 40


def realize_accepted(U: Mrgs, c: int) -> Optional[AcceptedSequence]:
    """An accepted sequence meeting every level-``c`` requirement, or None if
    ``U`` is not perfect.

    Starting from an integer solution xi of the characteristic system and an
    integer homogeneous solution xi0 that is positive on every constrained
    TOP quantity, each block runs ``w^C . sigma0^C . sigma . w'^C`` where w, w'
    are the loop-condition cycles, sigma0 is a cycle with Parikh image
    ``mu0 - psi(w) - psi(w')`` and sigma a path with Parikh image ``mu``.
    C doubles until the replay and all level checks pass.
    """
    if c < 0:
        raise UsageError("level must be >= 0")
    if not is_perfect(U):
        return None
    vas = U.vas
    n = vas.dim
    sys = build_characteristic(U)
    space = integer_solution_space(sys.A, sys.b, sys.nvars)
    xi0_q = rational_feasible_strict(sys.A, strict_indices(U, sys), range(sys.nvars), sys.nvars)
    xi = list(space[0])
    xi0 = _scale_to_int(xi0_q)
    if not sys.homogeneous().satisfied_by(xi0):
        raise AssertionError("homogeneous solution does not solve the system")

    loops = []
    for M in U.blocks:
        w = input_loop_witness(M)
        w_out = output_loop_witness(M)
        loops.append((w, w_out, _disp(vas, w), _disp(vas, w_out), path_counts(w), path_counts(w_out)))

    def xi0_ok(v: Sequence[int]) -> bool:
        for j, M in enumerate(U.blocks):
            w, w_out, dw, dw_out, cw, cw_out = loops[j]
            s0 = [v[i] for i in sys.s_idx[j]]
            s0_out = [v[i] for i in sys.s_out_idx[j]]
            for e, k in sys.mu_idx[j].items():
                if v[k] - cw.get(e, 0) - cw_out.get(e, 0) < 1:
                    return False
            for i in range(n):
                if M.x_config[i] is TOP and s0[i] + dw[i] <= 0:
                    return False
                if M.x_out_config[i] is TOP and s0_out[i] - dw_out[i] <= 0:
                    return False
        return True

    f = 1
    while not xi0_ok([f * v for v in xi0]):
        f *= 2
        if f > 1 << MAX_DOUBLINGS:
            raise AssertionError("could not scale the homogeneous solution")
    xi0 = [f * v for v in xi0]

    def xi_ok(v: Sequence[int]) -> bool:
        for j in range(len(U.blocks)):
            if any(v[i] < 0 for i in sys.s_idx[j] + sys.s_out_idx[j]):
                return False
            if any(v[k] < 1 for k in sys.mu_idx[j].values()):
                return False
        return True

    N = 0
    while not xi_ok([a + N * b for a, b in zip(xi, xi0)]):
        N = 1 if N == 0 else 2 * N
        if N > 1 << MAX_DOUBLINGS:
            raise AssertionError("could not make the integer solution nonnegative")
    xi = [a + N * b for a, b in zip(xi, xi0)]

    parts = []
    for j, M in enumerate(U.blocks):
        w, w_out, dw, dw_out, cw, cw_out = loops[j]
        mu = {e: xi[k] for e, k in sys.mu_idx[j].items()}
        mu0 = {e: xi0[k] - cw.get(e, 0) - cw_out.get(e, 0) for e, k in sys.mu_idx[j].items()}
        sigma = euler_path(M.graph, M.x, M.x_out, mu)
        sigma0 = euler_path(M.graph, M.x, M.x, mu0)
        if sigma is None or sigma0 is None:
            raise AssertionError(f"block {j}: Kirchhoff laws fail on a system solution")
        parts.append((w, sigma0, sigma, w_out))

    C = max(c, 1)
    for _ in range(MAX_DOUBLINGS):
        blocks = []
        for j, M in enumerate(U.blocks):
            w, sigma0, sigma, w_out = parts[j]
            s = tuple(xi[i] + C * xi0[i] for i in sys.s_idx[j])
            s_out = tuple(xi[i] + C * xi0[i] for i in sys.s_out_idx[j])
            path = tuple(w) * C + tuple(sigma0) * C + tuple(sigma) + tuple(w_out) * C
            blocks.append(AcceptedTuple(s, path, s_out))
        seq = AcceptedSequence(tuple(blocks), U.joins)
        if check_level(U, seq, c) is None:
            return seq
        C *= 2
    raise AssertionError("realization did not validate; this is a bug")


def characteristic_vector(U: Mrgs, seq: AcceptedSequence) -> List[int]:
    sys = build_characteristic(U)
    return sys.vector([(b.s, path_counts(b.path), b.s_out) for b in seq.blocks])
