"""Text formats for systems, MRGSs, configurations and linear sets.

``.vas``::

    vas
    dim 2
    action a 1 1
    action b -1 -2

``.vass`` (a transition name is its action; reusing a name requires the same
displacement)::

    vass
    dim 3
    states p q
    trans t1 p p -1 1 0

``.mrgs``::

    mrgs
    dim 2
    action a 1 1
    graph 0
    node top T T
    edge top a top
    input m=0,2 x=top
    output x'=top m'=1,0
    join a            # between consecutive graphs
    graph 1
    ...

``#`` starts a comment everywhere.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .mrgs import MarkedGraph, Mrgs, ReachGraph
from .semilinear import LinearSet, SemilinearSet
from .vas import TOP, System, Transition, UsageError, VasSystem, VassSystem


class FormatError(UsageError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", no) from None


def _ext(tok: str, no: Optional[int] = None):
    if tok in ("T", "⊤", "top"):
        return TOP
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(f"expected an integer or T, got {tok!r}", no) from None
    if v < 0:
        raise FormatError(f"configuration entries are nonnegative, got {v}", no)
    return v


def parse_config(text: str, allow_top: bool = False, no: Optional[int] = None) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    toks = [t for t in re.split(r"[,\s]+", body) if t]
    cfg = tuple(_ext(t, no) for t in toks)
    if not allow_top and any(v is TOP for v in cfg):
        raise FormatError("TOP is not allowed here", no)
    return cfg


def parse_endpoint(text: str, sys: System):
    """``1,0`` for a VAS; ``p:1,0,0`` for a VASS."""
    if ":" in text:
        state, cfg = text.split(":", 1)
        return (state.strip(), parse_config(cfg))
    if isinstance(sys, VassSystem) and not sys.is_single_state:
        raise FormatError(f"VASS endpoint needs a state, as in p:{text}")
    return parse_config(text)


def format_endpoint(ep) -> str:
    if len(ep) == 2 and isinstance(ep[0], str):
        return f"{ep[0]}:" + ",".join(str(v) for v in ep[1])
    return ",".join(str(v) for v in ep)


def _vector(toks: Sequence[str], n: int, no: int) -> Tuple[int, ...]:
    if len(toks) != n:
        raise FormatError(f"expected {n} entries, got {len(toks)}", no)
    return tuple(_int(t, no) for t in toks)


def _header(text: str, kinds: Sequence[str]):
    lines = list(_lines(text))
    if not lines or lines[0][1][0] not in kinds:
        raise FormatError(f"file must start with one of: {', '.join(kinds)}", lines[0][0] if lines else None)
    if len(lines) < 2 or lines[1][1][0] != "dim" or len(lines[1][1]) != 2:
        raise FormatError("second line must be 'dim <n>'", lines[1][0] if len(lines) > 1 else None)
    n = _int(lines[1][1][1], lines[1][0])
    if n < 0:
        raise FormatError("dimension must be >= 0", lines[1][0])
    return lines[0][1][0], n, lines[2:]


def parse_system(text: str) -> System:
    kind, n, rest = _header(text, ("vas", "vass"))
    if kind == "vas":
        disp: Dict[str, Tuple[int, ...]] = {}
        for no, toks in rest:
            if toks[0] != "action" or len(toks) < 2:
                raise FormatError(f"unexpected {toks[0]!r} in a vas file", no)
            if toks[1] in disp:
                raise FormatError(f"action {toks[1]!r} declared twice", no)
            disp[toks[1]] = _vector(toks[2:], n, no)
        if not disp:
            raise FormatError("no actions declared")
        return VasSystem(n, disp)
    states: List[str] = []
    disp = {}
    trans = []
    for no, toks in rest:
        if toks[0] == "states":
            states.extend(toks[1:])
        elif toks[0] == "trans":
            if len(toks) < 4:
                raise FormatError("trans <name> <from> <to> d1 ... dn", no)
            name, src, dst = toks[1:4]
            d = _vector(toks[4:], n, no)
            if disp.get(name, d) != d:
                raise FormatError(f"transition {name!r} reused with a different displacement", no)
            disp[name] = d
            for st in (src, dst):
                if st not in states:
                    raise FormatError(f"undeclared state {st!r}", no)
            trans.append(Transition(src, name, dst))
        else:
            raise FormatError(f"unexpected {toks[0]!r} in a vass file", no)
    if not states:
        raise FormatError("no states declared")
    if not disp:
        raise FormatError("no transitions declared")
    return VassSystem(tuple(states), tuple(trans), VasSystem(n, disp))


def format_system(sys: System) -> str:
    if isinstance(sys, VasSystem):
        out = ["vas", f"dim {sys.dim}"]
        out += [f"action {a} " + " ".join(str(v) for v in d) for a, d in sys.displacement.items()]
        return "\n".join(out) + "\n"
    out = ["vass", f"dim {sys.dim}", "states " + " ".join(sys.states)]
    for t in sys.transitions:
        out.append(f"trans {t.action} {t.src} {t.dst} " + " ".join(str(v) for v in sys.vas.delta(t.action)))
    return "\n".join(out) + "\n"


def _kv(tok: str, key: str, no: int) -> str:
    if not tok.startswith(key + "="):
        raise FormatError(f"expected {key}=...", no)
    return tok[len(key) + 1:]


def parse_mrgs(text: str) -> Mrgs:
    _, n, rest = _header(text, ("mrgs",))
    disp: Dict[str, Tuple[int, ...]] = {}
    blocks: List[dict] = []
    joins: List[str] = []
    outer: Dict[str, tuple] = {}
    for no, toks in rest:
        head = toks[0]
        if head == "action":
            if blocks:
                raise FormatError("actions must be declared before the first graph", no)
            disp[toks[1]] = _vector(toks[2:], n, no)
        elif head == "graph":
            if blocks and len(joins) != len(blocks):
                raise FormatError("missing 'join <action>' before this graph", no)
            blocks.append({"nodes": {}, "edges": [], "no": no})
        elif head == "join":
            if not blocks or len(joins) != len(blocks) - 1:
                raise FormatError("'join' must sit between two graphs", no)
            joins.append(toks[1])
        elif head == "constraints":
            for tok in toks[1:]:
                key, _, val = tok.partition("=")
                outer[key] = parse_config(val, True, no)
        elif not blocks:
            raise FormatError(f"{head!r} outside of a graph block", no)
        elif head == "node":
            cfg = tuple(_ext(t, no) for t in toks[2:])
            if len(cfg) != n:
                raise FormatError(f"node needs {n} entries", no)
            blocks[-1]["nodes"][toks[1]] = cfg
        elif head == "edge":
            if len(toks) != 4:
                raise FormatError("edge <from> <action> <to>", no)
            blocks[-1]["edges"].append(Transition(toks[1], toks[2], toks[3]))
        elif head == "input":
            blocks[-1]["m"] = parse_config(_kv(toks[1], "m", no), True, no)
            blocks[-1]["x"] = _kv(toks[2], "x", no)
        elif head == "output":
            blocks[-1]["x'"] = _kv(toks[1], "x'", no)
            blocks[-1]["m'"] = parse_config(_kv(toks[2], "m'", no), True, no)
        else:
            raise FormatError(f"unexpected {head!r}", no)
    if not disp:
        raise FormatError("no actions declared")
    if len(joins) != len(blocks) - 1:
        raise FormatError("dangling 'join'")
    vas = VasSystem(n, disp)
    marked = []
    for b in blocks:
        for key in ("m", "x", "x'", "m'"):
            if key not in b:
                raise FormatError(f"graph block is missing its {key}", b["no"])
        try:
            g = ReachGraph(vas, b["nodes"], tuple(b["edges"]))
            marked.append(MarkedGraph(b["m"], b["x"], g, b["x'"], b["m'"]))
        except UsageError as err:
            raise FormatError(str(err), b["no"]) from None
    return Mrgs(vas, tuple(marked), tuple(joins), outer.get("m"), outer.get("m'"))


def _fmt_ext(cfg) -> str:
    return ",".join("T" if v is TOP else str(v) for v in cfg)


def format_mrgs(U: Mrgs) -> str:
    out = ["mrgs", f"dim {U.vas.dim}"]
    out += [f"action {a} " + " ".join(str(v) for v in d) for a, d in U.vas.displacement.items()]
    for j, M in enumerate(U.blocks):
        if j:
            out.append(f"join {U.joins[j - 1]}")
        out.append(f"graph {j}")
        for name, cfg in M.graph.nodes.items():
            out.append(f"node {name} " + " ".join("T" if v is TOP else str(v) for v in cfg))
        for e in M.graph.edges:
            out.append(f"edge {e.src} {e.action} {e.dst}")
        out.append(f"input m={_fmt_ext(M.m)} x={M.x}")
        out.append(f"output x'={M.x_out} m'={_fmt_ext(M.m_out)}")
    if U.m != U.blocks[0].m or U.m_out != U.blocks[-1].m_out:
        out.append(f"constraints m={_fmt_ext(U.m)} m'={_fmt_ext(U.m_out)}")
    return "\n".join(out) + "\n"


# -- linear sets --------------------------------------------------------------

_LINEAR = re.compile(r"^\s*base\s*(\([^)]*\))\s*periods\s*\{(.*)\}\s*$")
_TUPLE = re.compile(r"\(([^)]*)\)")


def _int_tuple(body: str) -> Tuple[int, ...]:
    toks = [t for t in re.split(r"[,\s]+", body.strip()) if t]
    try:
        return tuple(int(t) for t in toks)
    except ValueError:
        raise FormatError(f"bad vector ({body})") from None


def parse_linear(text: str) -> LinearSet:
    m = _LINEAR.match(text)
    if not m:
        raise FormatError(f"expected 'base (..) periods {{..}}', got {text.strip()!r}")
    base = _int_tuple(m.group(1)[1:-1])
    periods = [_int_tuple(t) for t in _TUPLE.findall(m.group(2))]
    if _TUPLE.sub("", m.group(2)).replace(",", "").strip():
        raise FormatError(f"bad period list {{{m.group(2)}}}")
    try:
        return LinearSet(base, periods)
    except ValueError as err:
        raise FormatError(str(err)) from None


def parse_semilinear(text: str) -> SemilinearSet:
    """One linear set per line (or separated by ``|``); ``empty <n>`` for the
    empty set of dimension n."""
    parts = []
    ambient = None
    for _, toks in _lines(text.replace("|", "\n")):
        line = " ".join(toks)
        if toks[0] == "empty":
            ambient = int(toks[1]) if len(toks) > 1 else None
            continue
        parts.append(parse_linear(line))
    return SemilinearSet(tuple(parts), ambient)


def _fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def format_linear(L: LinearSet) -> str:
    return f"base {_fmt_vec(L.base)} periods {{" + ",".join(_fmt_vec(p) for p in L.periods) + "}"


def format_semilinear(S: SemilinearSet) -> str:
    if not S.components:
        return f"empty {S.ambient}" if S.ambient is not None else "empty"
    return "\n".join(format_linear(c) for c in S.components)
