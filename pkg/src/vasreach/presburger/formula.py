"""Quantifier-free Presburger formulas over x1..xn.

Every linear comparison is normalised to atoms ``sum c_i x_i <= d`` (strict,
equality and disequality comparisons become boolean combinations of those),
and divisibility atoms carry ``sum c_i x_i = r (mod m)`` with coefficients and
residue reduced into ``[0, m)``.  Coefficient tuples are stored without
trailing zeros, so the same formula can be read at any dimension >= ``dim``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple, Union


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _dot(coeffs: Sequence[int], point: Sequence[int]) -> int:
    return sum(c * v for c, v in zip(coeffs, point))


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Le:
    """``sum coeffs[i] * x_{i+1} <= bound``."""

    coeffs: Tuple[int, ...]
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))
        object.__setattr__(self, "bound", int(self.bound))


@dataclass(frozen=True)
class Mod:
    """``sum coeffs[i] * x_{i+1} = residue (mod modulus)``."""

    coeffs: Tuple[int, ...]
    residue: int
    modulus: int

    def __post_init__(self):
        m = int(self.modulus)
        if m < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "coeffs", _trim(c % m for c in self.coeffs))
        object.__setattr__(self, "residue", int(self.residue) % m)


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Const, Le, Mod, Not, And, Or]
TRUE = Const(True)
FALSE = Const(False)


def conj(*fs: Formula) -> Formula:
    if not fs:
        return TRUE
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return FALSE
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def dim(f: Formula) -> int:
    """Largest variable index mentioned (0 for closed formulas)."""
    if isinstance(f, (Le, Mod)):
        return len(f.coeffs)
    if isinstance(f, Not):
        return dim(f.arg)
    if isinstance(f, (And, Or)):
        return max(dim(f.left), dim(f.right))
    return 0


def size(f: Formula) -> int:
    """Enumeration size: constants 0, atoms 1 + sum|c| + |d| (or + modulus),
    connectives 1 + children."""
    if isinstance(f, Const):
        return 0
    if isinstance(f, Le):
        return 1 + sum(abs(c) for c in f.coeffs) + abs(f.bound)
    if isinstance(f, Mod):
        return 1 + sum(abs(c) for c in f.coeffs) + f.modulus
    if isinstance(f, Not):
        return 1 + size(f.arg)
    return 1 + size(f.left) + size(f.right)


def evaluate(f: Formula, point: Sequence[int]) -> bool:
    if dim(f) > len(point):
        raise ValueError(f"formula uses x{dim(f)} but the point has dimension {len(point)}")
    return _eval(f, point)


def _eval(f: Formula, p: Sequence[int]) -> bool:
    if isinstance(f, Le):
        return _dot(f.coeffs, p) <= f.bound
    if isinstance(f, Mod):
        return (_dot(f.coeffs, p) - f.residue) % f.modulus == 0
    if isinstance(f, And):
        return _eval(f.left, p) and _eval(f.right, p)
    if isinstance(f, Or):
        return _eval(f.left, p) or _eval(f.right, p)
    if isinstance(f, Not):
        return not _eval(f.arg, p)
    return f.value


def shift(f: Formula, delta: Sequence[int]) -> Formula:
    """The formula ``f(x + delta)`` over the same variables."""
    if isinstance(f, Le):
        return Le(f.coeffs, f.bound - _dot(f.coeffs, delta))
    if isinstance(f, Mod):
        return Mod(f.coeffs, f.residue - _dot(f.coeffs, delta), f.modulus)
    if isinstance(f, Not):
        return Not(shift(f.arg, delta))
    if isinstance(f, And):
        return And(shift(f.left, delta), shift(f.right, delta))
    if isinstance(f, Or):
        return Or(shift(f.left, delta), shift(f.right, delta))
    return f


# -- printing ---------------------------------------------------------------

def format_linear(coeffs: Sequence[int], const: int = 0) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        name = f"x{i + 1}"
        mag = abs(c)
        body = name if mag == 1 else f"{mag}*{name}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    if const or not parts:
        if not parts:
            parts.append(str(const))
        else:
            parts.append(("+ " if const > 0 else "- ") + str(abs(const)))
    return " ".join(parts)


def _prec(f: Formula) -> int:
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    if isinstance(f, Not):
        return 3
    return 4


def format_formula(f: Formula) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Le):
        return f"{format_linear(f.coeffs)} <= {f.bound}"
    if isinstance(f, Mod):
        return f"({format_linear(f.coeffs)}) mod {f.modulus} = {f.residue}"
    if isinstance(f, Not):
        inner = format_formula(f.arg)
        return "!" + (inner if _prec(f.arg) >= 3 and not isinstance(f.arg, (Le, Mod)) else f"({inner})")
    p = _prec(f)
    op = " || " if isinstance(f, Or) else " && "
    left = format_formula(f.left)
    if _prec(f.left) < p:
        left = f"({left})"
    right = format_formula(f.right)
    if _prec(f.right) <= p:
        right = f"({right})"
    return left + op + right


def canonical(f: Formula) -> str:
    return format_formula(f)
