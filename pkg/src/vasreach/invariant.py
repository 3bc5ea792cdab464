"""Inductive invariants, separators and non-reachability certificates.

Invariance is decided by substituting ``x + delta(a)`` into the formula and
asking the solver for a counterexample over N^n, always conjoined with the
side condition ``x + delta(a) >= 0`` (only steps that stay in N^n matter).

For a VASS, the control state is an extra variable ``x_{n+1}`` holding the
state index; a transition ``p -a-> q`` shifts it by ``idx(q) - idx(p)`` and
its query additionally pins ``x_{n+1} = idx(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .presburger import NONNEG, Formula, Le, Not, conj, dim, evaluate, format_formula, satisfiable, shift
from .vas import System, UsageError, VasSystem, VassSystem, as_vass


@dataclass(frozen=True)
class Step:
    """One action of the system as seen by invariance queries."""

    label: str
    delta: Tuple[int, ...]          # over the formula variables
    guard: Tuple[Formula, ...]      # extra conditions on the pre-state


def formula_dim(sys: System) -> int:
    """Number of formula variables used to describe configurations of sys."""
    if isinstance(sys, VassSystem) and not sys.is_single_state:
        return sys.dim + 1
    return sys.dim


def _unit(n: int, i: int, sign: int = 1) -> Tuple[int, ...]:
    return tuple(sign * int(j == i) for j in range(n))


def steps(sys: System) -> List[Step]:
    n = sys.dim
    if isinstance(sys, VasSystem) or sys.is_single_state:
        vas = sys if isinstance(sys, VasSystem) else sys.vas
        return [Step(a, vas.delta(a), ()) for a in vas.alphabet]
    out = []
    N = n + 1
    for t in sys.transitions:
        p, q = sys.state_index(t.src), sys.state_index(t.dst)
        delta = sys.vas.delta(t.action) + (q - p,)
        guard = (Le(_unit(N, n), p), Le(_unit(N, n, -1), -p))
        out.append(Step(f"{t.src}-{t.action}->{t.dst}", delta, guard))
    return out


def point(sys: System, endpoint) -> Tuple[int, ...]:
    """Formula-variable encoding of a configuration (or (state, config))."""
    vass = as_vass(sys)
    if len(endpoint) == 2 and isinstance(endpoint[0], str) and not isinstance(endpoint[1], int):
        state, cfg = endpoint[0], tuple(endpoint[1])
        if state not in vass.states:
            raise UsageError(f"unknown state {state!r}")
    else:
        if not vass.is_single_state:
            raise UsageError("VASS configurations need a state")
        state, cfg = vass.states[0], tuple(endpoint)
    if len(cfg) != vass.dim:
        raise UsageError(f"configuration has length {len(cfg)}, expected {vass.dim}")
    if formula_dim(sys) > vass.dim:
        return cfg + (vass.state_index(state),)
    return cfg


def _check_dim(psi: Formula, sys: System) -> int:
    n = formula_dim(sys)
    if dim(psi) > n:
        raise UsageError(f"formula mentions x{dim(psi)} but configurations have {n} variables")
    return n


def _nonneg_after(n: int, delta: Sequence[int]) -> List[Formula]:
    # x_i + delta_i >= 0  <=>  -x_i <= delta_i
    return [Le(_unit(n, i, -1), delta[i]) for i in range(n) if delta[i] < 0]


@dataclass(frozen=True)
class InvarianceResult:
    ok: bool
    step: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def is_forward_invariant(psi: Formula, sys: System) -> InvarianceResult:
    """Unsat of psi(x) & !psi(x + delta) & x + delta >= 0 for every step."""
    n = _check_dim(psi, sys)
    for st in steps(sys):
        q = conj(psi, Not(shift(psi, st.delta)), *st.guard, *_nonneg_after(n, st.delta))
        model = satisfiable(q, NONNEG, n)
        if model is not None:
            return InvarianceResult(False, st.label, model)
    return InvarianceResult(True)


def is_backward_invariant(psi: Formula, sys: System) -> InvarianceResult:
    """Unsat of psi(x + delta) & !psi(x) & x + delta >= 0 for every step."""
    n = _check_dim(psi, sys)
    for st in steps(sys):
        q = conj(shift(psi, st.delta), Not(psi), *st.guard, *_nonneg_after(n, st.delta))
        model = satisfiable(q, NONNEG, n)
        if model is not None:
            return InvarianceResult(False, st.label, model)
    return InvarianceResult(True)


@dataclass(frozen=True)
class Certificate:
    formula: Formula
    source: tuple
    target: tuple
    system: System

    def text(self) -> str:
        return format_formula(self.formula)


@dataclass(frozen=True)
class Valid:
    def __bool__(self):
        return True

    def describe(self) -> str:
        return "valid"


@dataclass(frozen=True)
class Invalid:
    reason: str                      # source-not-in-I | target-in-I | not-invariant
    step: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return False

    def describe(self) -> str:
        out = f"invalid: {self.reason}"
        if self.step is not None:
            out += f" (step {self.step} leaves I from {self.witness})"
        return out


def check_certificate(cert: Certificate) -> Union[Valid, Invalid]:
    sys = cert.system
    _check_dim(cert.formula, sys)
    if not evaluate(cert.formula, point(sys, cert.source)):
        return Invalid("source-not-in-I")
    if evaluate(cert.formula, point(sys, cert.target)):
        return Invalid("target-in-I")
    inv = is_forward_invariant(cert.formula, sys)
    if not inv:
        return Invalid("not-invariant", inv.step, inv.witness)
    return Valid()


def is_complete_separator(S: Formula, S_out: Formula, sys: System) -> bool:
    """(S, S') partitions N^n, S is forward and S' backward invariant."""
    n = max(formula_dim(sys), dim(S), dim(S_out))
    if satisfiable(conj(S, S_out), NONNEG, n) is not None:
        return False
    if satisfiable(conj(Not(S), Not(S_out)), NONNEG, n) is not None:
        return False
    return bool(is_forward_invariant(S, sys)) and bool(is_backward_invariant(S_out, sys))


# -- extended VAS ---------------------------------------------------------------

PERIOD = "P"
BASE = "V"
COPERIOD = "P'"


def extend_vas_with_periods(sys: VasSystem, P: Iterable[Sequence[int]], P_out: Iterable[Sequence[int]]
                            ) -> Tuple[VasSystem, Dict[str, str]]:
    """Add a letter +p for every p in P and a letter -p' for every p' in P'.

    Returns the extended VAS and a map letter -> PERIOD / BASE / COPERIOD.
    """
    P = [tuple(int(v) for v in p) for p in P]
    P_out = [tuple(int(v) for v in p) for p in P_out]
    for p in P + P_out:
        if len(p) != sys.dim:
            raise UsageError("period has the wrong dimension")
        if any(v < 0 for v in p):
            raise UsageError(f"period {p} has a negative entry")
    disp = dict(sys.displacement)
    tags = {a: BASE for a in disp}

    def fresh(prefix: str, k: int) -> str:
        name = f"{prefix}{k}"
        while name in disp:
            name = "_" + name
        return name

    for k, p in enumerate(P, 1):
        a = fresh("p", k)
        disp[a] = p
        tags[a] = PERIOD
    for k, p in enumerate(P_out, 1):
        a = fresh("q", k)
        disp[a] = tuple(-v for v in p)
        tags[a] = COPERIOD
    return VasSystem(sys.dim, disp), tags


def reorder_canonical(word: Sequence[str], tags: Dict[str, str]) -> List[str]:
    """Period letters first, co-period letters last, stable otherwise."""
    for a in word:
        if a not in tags:
            raise UsageError(f"letter {a!r} is not tagged")
    return ([a for a in word if tags[a] == PERIOD] + [a for a in word if tags[a] == BASE]
            + [a for a in word if tags[a] == COPERIOD])


def period_images(word: Sequence[str], ext: VasSystem, tags: Dict[str, str]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """The linear maps f and f' applied to the Parikh image of ``word``:
    the total added by period letters and the total removed by co-period
    letters."""
    f = [0] * ext.dim
    f_out = [0] * ext.dim
    for a in word:
        d = ext.delta(a)
        if tags[a] == PERIOD:
            f = [x + y for x, y in zip(f, d)]
        elif tags[a] == COPERIOD:
            f_out = [x - y for x, y in zip(f_out, d)]
    return tuple(f), tuple(f_out)
