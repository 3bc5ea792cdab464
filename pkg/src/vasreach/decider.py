"""Dovetailed reachability decision: witness search against certificate search.

Round k expands the breadth-first search by one slice, tries half-space
templates (when enabled), then checks the formulas of enumeration layer k
(resuming wherever the previous round's formula budget ran out).  Exactly one
of the two searches can ever succeed, so with unbounded rounds this decides
reachability; every verdict is re-validated before it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Optional, Tuple, Union

from .invariant import Certificate, Invalid, check_certificate, formula_dim, point, steps
from .presburger import FormulaEnumerator, Le, evaluate
from .vas import ReachSearch, System, Transition, UsageError, _endpoint, as_vass, run_path

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeciderConfig:
    max_rounds: Optional[int] = None
    step_budget: int = 1000          # BFS expansions per round
    formula_budget: Optional[int] = None   # solver checks per round (None: whole layer)
    templates: bool = True
    template_cap: int = 3

    def __post_init__(self):
        if self.step_budget < 1:
            raise UsageError("step budget must be >= 1")
        if self.formula_budget is not None and self.formula_budget < 1:
            raise UsageError("formula budget must be >= 1")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise UsageError("max rounds must be >= 1")
        if self.template_cap < 1:
            raise UsageError("template cap must be >= 1")


@dataclass(frozen=True)
class Reachable:
    word: Tuple[str, ...]
    path: Tuple[Transition, ...]
    round: int = 0
    expanded: int = 0


@dataclass(frozen=True)
class Unreachable:
    certificate: Certificate
    round: int = 0
    via: str = "enumeration"


@dataclass(frozen=True)
class BudgetExhausted:
    rounds: int
    expanded: int
    formulas_checked: int


Verdict = Union[Reachable, Unreachable, BudgetExhausted]


def _vectors(n: int, bound: int) -> Iterator[Tuple[int, ...]]:
    """Integer vectors with infinity norm exactly ``bound``, in a fixed order."""
    rng = sorted(range(-bound, bound + 1), key=lambda v: (abs(v), -v))
    for c in product(rng, repeat=n):
        if max(abs(v) for v in c) == bound:
            yield c


def template_invariant_search(sys: System, s, s_out, bound: int, *, min_bound: int = 1) -> Optional[Certificate]:
    """Half-space certificate ``c.x <= c.s`` with ``c.delta <= 0`` for every
    step and ``c.s' > c.s``; ``|c|_inf`` ranges over ``min_bound..bound``."""
    p, q = point(sys, s), point(sys, s_out)
    n = formula_dim(sys)
    deltas = [st.delta for st in steps(sys)]
    for b in range(max(min_bound, 1), bound + 1):
        for c in _vectors(n, b):
            if any(sum(x * y for x, y in zip(c, d)) > 0 for d in deltas):
                continue
            d = sum(x * y for x, y in zip(c, p))
            if sum(x * y for x, y in zip(c, q)) <= d:
                continue
            cert = Certificate(Le(c, d), s, s_out, sys)
            if check_certificate(cert):
                return cert
            log.warning("template %s failed validation", c)
    return None


class _Cursor:
    """Position in the formula enumeration, shared across rounds."""

    def __init__(self, n: int):
        self.enum = FormulaEnumerator(n)
        self.layer = 0
        self.index = 0

    def take(self, upto_layer: int) -> Iterator:
        while self.layer <= upto_layer:
            items = self.enum.layer(self.layer)
            while self.index < len(items):
                f = items[self.index]
                self.index += 1
                yield f
            self.layer += 1
            self.index = 0


def decide_reach(sys: System, s, s_out, cfg: DeciderConfig = DeciderConfig()) -> Verdict:
    vass = as_vass(sys)
    src, tgt = _endpoint(sys, s), _endpoint(sys, s_out)
    search = ReachSearch(vass, src, tgt)
    # certificates are phrased over the caller's system (VAS or VASS)
    p_src, p_tgt = point(sys, s), point(sys, s_out)
    cursor = _Cursor(formula_dim(sys))
    checked = 0
    template_done = 0
    k = 0
    while cfg.max_rounds is None or k < cfg.max_rounds:
        found = search.advance(cfg.step_budget)
        if found is not None:
            end = run_path(vass, src, found.path)
            if end != tgt:
                raise AssertionError("witness does not replay")
            return Reachable(found.word, found.path, k, search.expanded)

        if cfg.templates and template_done < cfg.template_cap:
            b = min(k + 1, cfg.template_cap)
            cert = template_invariant_search(sys, s, s_out, b, min_bound=template_done + 1)
            template_done = b
            if cert is not None:
                return _validated(Unreachable(cert, k, "template"))

        budget = cfg.formula_budget
        used = 0
        for f in cursor.take(k):
            if not evaluate(f, p_src) or evaluate(f, p_tgt):
                continue
            checked += 1
            used += 1
            cert = Certificate(f, s, s_out, sys)
            if check_certificate(cert):
                return _validated(Unreachable(cert, k, "enumeration"))
            if budget is not None and used >= budget:
                break
        k += 1
    return BudgetExhausted(k, search.expanded, checked)


def _validated(v: Unreachable) -> Unreachable:
    res = check_certificate(v.certificate)
    if isinstance(res, Invalid):
        raise AssertionError(f"certificate failed validation: {res.describe()}")
    return v
