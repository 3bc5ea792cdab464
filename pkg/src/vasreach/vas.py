"""Vector addition systems (with states) over configurations extended with TOP.

An extended configuration is a tuple whose entries are non-negative ints or
the ``TOP`` sentinel ("don't care").  ``TOP`` absorbs every displacement, so
a TOP coordinate never blocks a step and stays TOP forever.

A plain VAS is handled as a VASS with a single control state (see
``VassSystem.from_vas``); all searches are written once against VASS.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union


class UsageError(ValueError):
    """Caller passed something the operation is not defined on."""


class _Top:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "T"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()

ExtNat = Union[int, _Top]
ExtConfig = Tuple[ExtNat, ...]
Config = Tuple[int, ...]


def is_top(v) -> bool:
    return v is TOP


def le_ext(x: ExtNat, y: ExtNat) -> bool:
    """``x <= y`` in N extended with TOP as greatest element."""
    if y is TOP:
        return True
    if x is TOP:
        return False
    return x <= y


def unlhd(x: ExtNat, y: ExtNat) -> bool:
    """The "don't care" order: x ⊴ y iff x == y or y is TOP."""
    return y is TOP or x == y


def config_le(x: Sequence[ExtNat], y: Sequence[ExtNat]) -> bool:
    return len(x) == len(y) and all(le_ext(a, b) for a, b in zip(x, y))


def config_unlhd(x: Sequence[ExtNat], y: Sequence[ExtNat]) -> bool:
    return len(x) == len(y) and all(unlhd(a, b) for a, b in zip(x, y))


def top_positions(x: Sequence[ExtNat]) -> Tuple[int, ...]:
    return tuple(i for i, v in enumerate(x) if v is TOP)


def is_concrete(x: Sequence[ExtNat]) -> bool:
    return all(v is not TOP for v in x)


def add_displacement(x: Sequence[ExtNat], delta: Sequence[int]) -> Optional[ExtConfig]:
    """x + delta with TOP absorption, or None if a finite entry goes negative."""
    out = []
    for v, d in zip(x, delta):
        if v is TOP:
            out.append(TOP)
            continue
        w = v + d
        if w < 0:
            return None
        out.append(w)
    return tuple(out)


def format_config(x: Sequence[ExtNat]) -> str:
    return "(" + ",".join("T" if v is TOP else str(v) for v in x) + ")"


@dataclass(frozen=True)
class VasSystem:
    """Alphabet, dimension and displacement function."""

    dim: int
    displacement: Mapping[str, Tuple[int, ...]]

    def __post_init__(self):
        disp = {str(a): tuple(int(v) for v in d) for a, d in dict(self.displacement).items()}
        if not disp:
            raise UsageError("alphabet must be nonempty")
        if self.dim < 0:
            raise UsageError("dimension must be >= 0")
        for a, d in disp.items():
            if len(d) != self.dim:
                raise UsageError(f"action {a!r} has displacement of length {len(d)}, expected {self.dim}")
        object.__setattr__(self, "displacement", disp)

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return tuple(self.displacement)

    def delta(self, action: str) -> Tuple[int, ...]:
        try:
            return self.displacement[action]
        except KeyError:
            raise UsageError(f"unknown action {action!r}") from None

    def delta_word(self, word: Iterable[str]) -> Tuple[int, ...]:
        total = [0] * self.dim
        for a in word:
            for i, d in enumerate(self.delta(a)):
                total[i] += d
        return tuple(total)

    def negated(self) -> "VasSystem":
        return VasSystem(self.dim, {a: tuple(-v for v in d) for a, d in self.displacement.items()})

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.displacement.items()))))


@dataclass(frozen=True)
class Transition:
    src: str
    action: str
    dst: str


@dataclass(frozen=True)
class VassSystem:
    """A VAS driven by a finite control graph."""

    states: Tuple[str, ...]
    transitions: Tuple[Transition, ...]
    vas: VasSystem
    _out: Dict[str, Tuple[Transition, ...]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        states = tuple(dict.fromkeys(str(s) for s in self.states))
        if not states:
            raise UsageError("a VASS needs at least one state")
        trans = tuple(t if isinstance(t, Transition) else Transition(*t) for t in self.transitions)
        known = set(states)
        for t in trans:
            if t.src not in known or t.dst not in known:
                raise UsageError(f"transition {t} uses an undeclared state")
            self.vas.delta(t.action)
        out: Dict[str, List[Transition]] = {s: [] for s in states}
        for t in trans:
            out[t.src].append(t)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "_out", {s: tuple(v) for s, v in out.items()})

    @classmethod
    def from_vas(cls, vas: VasSystem, state: str = "q") -> "VassSystem":
        return cls((state,), tuple(Transition(state, a, state) for a in vas.alphabet), vas)

    @property
    def dim(self) -> int:
        return self.vas.dim

    @property
    def is_single_state(self) -> bool:
        return len(self.states) == 1

    def outgoing(self, state: str) -> Tuple[Transition, ...]:
        return self._out[state]

    def reversed(self) -> "VassSystem":
        """Edges reversed and displacements negated (backward semantics)."""
        return VassSystem(
            self.states,
            tuple(Transition(t.dst, t.action, t.src) for t in self.transitions),
            self.vas.negated(),
        )

    def state_index(self, state: str) -> int:
        return self.states.index(state)

    def __hash__(self):
        return hash((self.states, self.transitions, self.vas))


System = Union[VasSystem, VassSystem]


def as_vass(sys: System) -> VassSystem:
    return sys if isinstance(sys, VassSystem) else VassSystem.from_vas(sys)


def _check_len(cfg: Sequence, sys_dim: int) -> None:
    if len(cfg) != sys_dim:
        raise UsageError(f"configuration {format_config(cfg)} has length {len(cfg)}, expected {sys_dim}")


def step(cfg: Sequence[ExtNat], action: str, sys: VasSystem) -> Optional[ExtConfig]:
    """One step ``cfg --action-->``; None when the action is not enabled."""
    _check_len(cfg, sys.dim)
    return add_displacement(cfg, sys.delta(action))


def run(cfg: Sequence[ExtNat], word: Iterable[str], sys: VasSystem) -> Optional[ExtConfig]:
    cur: Optional[ExtConfig] = tuple(cfg)
    _check_len(cur, sys.dim)
    word = list(word)
    for a in word:
        sys.delta(a)
    for a in word:
        cur = add_displacement(cur, sys.displacement[a])
        if cur is None:
            return None
    return cur


def run_path(sys: VassSystem, source: Tuple[str, Sequence[ExtNat]], path: Sequence[Transition]
             ) -> Optional[Tuple[str, ExtConfig]]:
    """Replay a sequence of VASS transitions; None if it is not a valid run."""
    state, cur = source[0], tuple(source[1])
    for t in path:
        if t.src != state or t not in sys.transitions:
            return None
        cur = add_displacement(cur, sys.vas.delta(t.action))
        if cur is None:
            return None
        state = t.dst
    return state, cur


def parikh(word: Iterable[str], alphabet: Iterable[str]) -> Dict[str, int]:
    counts = {a: 0 for a in alphabet}
    for a in word:
        if a not in counts:
            raise UsageError(f"symbol {a!r} is not in the alphabet")
        counts[a] += 1
    return counts


def split_word(text: str, alphabet: Iterable[str]) -> List[str]:
    """Tokenise a word: whitespace/comma separated, or a run of 1-char names."""
    text = text.strip()
    if not text:
        return []
    if any(c in text for c in " ,"):
        return [t for t in text.replace(",", " ").split() if t]
    alpha = set(alphabet)
    if all(c in alpha for c in text):
        return list(text)
    return [text]


# -- searches ---------------------------------------------------------------

@dataclass(frozen=True)
class Found:
    word: Tuple[str, ...]
    path: Tuple[Transition, ...]
    expanded: int = 0


@dataclass(frozen=True)
class Exhausted:
    expanded: int


class ReachSearch:
    """Resumable breadth-first search over (state, configuration) pairs.

    The visited set is keyed on exact pairs and parent links give the
    witness, so the first hit is a shortest one.
    """

    def __init__(self, sys: System, source: Tuple[str, Sequence[int]], target: Tuple[str, Sequence[int]]):
        self.sys = as_vass(sys)
        src = (source[0], tuple(source[1]))
        tgt = (target[0], tuple(target[1]))
        for st, cfg in (src, tgt):
            if not is_concrete(cfg):
                raise UsageError("reachability endpoints must be concrete configurations")
            _check_len(cfg, self.sys.dim)
            if st not in self.sys.states:
                raise UsageError(f"unknown state {st!r}")
            if any(v < 0 for v in cfg):
                raise UsageError("configurations are non-negative")
        self.source, self.target = src, tgt
        self.parent: Dict[Tuple[str, Config], Optional[Tuple[Tuple[str, Config], Transition]]] = {src: None}
        self.queue = deque([src])
        self.expanded = 0
        self.result: Optional[Found] = self._witness(src) if src == tgt else None

    def _witness(self, node) -> Found:
        path: List[Transition] = []
        while self.parent[node] is not None:
            node, t = self.parent[node]
            path.append(t)
        path.reverse()
        return Found(tuple(t.action for t in path), tuple(path), self.expanded)

    @property
    def exhausted_space(self) -> bool:
        return not self.queue

    def advance(self, budget: int) -> Optional[Found]:
        """Expand at most ``budget`` more nodes; return Found once the target is hit."""
        if self.result is not None:
            return self.result
        vas = self.sys.vas
        stop = self.expanded + budget
        while self.queue and self.expanded < stop:
            node = self.queue.popleft()
            self.expanded += 1
            state, cfg = node
            for t in self.sys.outgoing(state):
                nxt = add_displacement(cfg, vas.displacement[t.action])
                if nxt is None:
                    continue
                key = (t.dst, nxt)
                if key in self.parent:
                    continue
                self.parent[key] = (node, t)
                if key == self.target:
                    self.result = self._witness(key)
                    return self.result
                self.queue.append(key)
        return None


def bfs_reach(sys: System, source, target, step_budget: int) -> Union[Found, Exhausted]:
    """Shortest-witness search from ``source`` to ``target``.

    ``source``/``target`` are ``(state, config)`` pairs; for a plain VAS a bare
    configuration is accepted as well.  ``step_budget`` bounds the number of
    expanded nodes.
    """
    if step_budget <= 0:
        raise UsageError("step budget must be positive")
    search = ReachSearch(sys, _endpoint(sys, source), _endpoint(sys, target))
    found = search.advance(step_budget)
    return found if found is not None else Exhausted(search.expanded)


def _endpoint(sys: System, ep):
    vass = as_vass(sys)
    if len(ep) == 2 and isinstance(ep[0], str) and not isinstance(ep[1], (int, _Top)):
        return (ep[0], tuple(ep[1]))
    if not vass.is_single_state:
        raise UsageError("VASS endpoints must be (state, configuration) pairs")
    return (vass.states[0], tuple(ep))


def explore(sys: System, sources: Iterable, *, max_depth: Optional[int] = None,
            within=None) -> set:
    """All (state, config) pairs reachable from ``sources`` by runs that stay
    inside ``within`` (a predicate on configurations) and use at most
    ``max_depth`` steps.  Terminates only if that region is finite."""
    vass = as_vass(sys)
    starts = [_endpoint(sys, s) for s in sources]
    seen = set(starts)
    queue = deque((s, 0) for s in starts)
    while queue:
        (state, cfg), depth = queue.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        for t in vass.outgoing(state):
            nxt = add_displacement(cfg, vass.vas.displacement[t.action])
            if nxt is None or (within is not None and not within(nxt)):
                continue
            key = (t.dst, nxt)
            if key not in seen:
                seen.add(key)
                queue.append((key, depth + 1))
    return seen


# -- Karp-Miller ------------------------------------------------------------

def _km_le(x: Sequence[ExtNat], y: Sequence[ExtNat]) -> bool:
    return all(le_ext(a, b) for a, b in zip(x, y))


def _covers(cfg: Sequence[ExtNat], target: Sequence[ExtNat]) -> bool:
    return all(t is TOP or le_ext(t, c) for c, t in zip(cfg, target))


def karp_miller_covers(sys: System, init, target) -> bool:
    """Is some configuration reachable from ``init`` at least ``target``?

    TOP entries of ``init`` are projected away (they stay TOP); TOP entries of
    ``target`` are unconstrained.  Classical Karp-Miller tree with
    acceleration against same-state ancestors and pruning of nodes dominated
    by an already expanded node of the same state.
    """
    vass = as_vass(sys)
    init_state, init_cfg = _endpoint(sys, init)
    tgt_state, tgt_cfg = _endpoint(sys, target)
    _check_len(init_cfg, vass.dim)
    _check_len(tgt_cfg, vass.dim)
    keep = [i for i, v in enumerate(init_cfg) if v is not TOP]
    start = tuple(init_cfg[i] for i in keep)
    goal = tuple(tgt_cfg[i] for i in keep)
    deltas = {a: tuple(d[i] for i in keep) for a, d in vass.vas.displacement.items()}

    # node = (state, cfg, parent_index)
    nodes: List[Tuple[str, ExtConfig, int]] = [(init_state, start, -1)]
    expanded: Dict[str, List[ExtConfig]] = {s: [] for s in vass.states}
    stack = [0]
    while stack:
        idx = stack.pop()
        state, cfg, _ = nodes[idx]
        if state == tgt_state and _covers(cfg, goal):
            return True
        if any(_km_le(cfg, other) for other in expanded[state]):
            continue
        expanded[state].append(cfg)
        for t in vass.outgoing(state):
            nxt = add_displacement(cfg, deltas[t.action])
            if nxt is None:
                continue
            nxt = list(nxt)
            anc = idx
            while anc >= 0:
                a_state, a_cfg, a_parent = nodes[anc]
                if a_state == t.dst and _km_le(a_cfg, nxt) and tuple(a_cfg) != tuple(nxt):
                    for i, (u, v) in enumerate(zip(a_cfg, nxt)):
                        if v is not TOP and u is not TOP and v > u:
                            nxt[i] = TOP
                anc = a_parent
            nodes.append((t.dst, tuple(nxt), idx))
            stack.append(len(nodes) - 1)
    return False


def cover_witness(sys: System, init, target, max_expanded: Optional[int] = None
                  ) -> Optional[Tuple[Transition, ...]]:
    """Concrete run from ``init`` to a configuration covering ``target``.

    Breadth-first over concrete configurations (TOP entries of ``init`` are
    projected away, so the run only constrains the finite coordinates).
    Terminates whenever ``karp_miller_covers`` holds.
    """
    vass = as_vass(sys)
    init_state, init_cfg = _endpoint(sys, init)
    tgt_state, tgt_cfg = _endpoint(sys, target)
    keep = [i for i, v in enumerate(init_cfg) if v is not TOP]
    start = (init_state, tuple(init_cfg[i] for i in keep))
    goal = tuple(tgt_cfg[i] for i in keep)
    deltas = {a: tuple(d[i] for i in keep) for a, d in vass.vas.displacement.items()}
    parent = {start: None}
    queue = deque([start])
    count = 0
    while queue:
        node = queue.popleft()
        state, cfg = node
        if state == tgt_state and _covers(cfg, goal):
            path = []
            while parent[node] is not None:
                node, t = parent[node]
                path.append(t)
            return tuple(reversed(path))
        count += 1
        if max_expanded is not None and count > max_expanded:
            return None
        for t in vass.outgoing(state):
            nxt = add_displacement(cfg, deltas[t.action])
            if nxt is None:
                continue
            key = (t.dst, nxt)
            if key not in parent:
                parent[key] = (node, t)
                queue.append(key)
    return None


def iter_words(alphabet: Sequence[str], length: int) -> Iterator[Tuple[str, ...]]:
    if length == 0:
        yield ()
        return
    for w in iter_words(alphabet, length - 1):
        for a in alphabet:
            yield w + (a,)
