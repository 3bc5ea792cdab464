"""Quantifier-free Presburger arithmetic: syntax, semantics, decision, enumeration."""

from .enumerate import FormulaEnumerator, enumerate_formulas
from .formula import (FALSE, TRUE, And, Const, Formula, Le, Mod, Not, Or, canonical, conj, dim, disj,
                      evaluate, format_formula, shift, size)
from .parser import FormulaSyntaxError, parse
from .solver import ALL_INT, NONNEG, satisfiable, valid

__all__ = [
    "ALL_INT", "NONNEG", "FALSE", "TRUE", "And", "Const", "Formula", "FormulaEnumerator",
    "FormulaSyntaxError", "Le", "Mod", "Not", "Or", "canonical", "conj", "dim", "disj",
    "enumerate_formulas", "evaluate", "format_formula", "parse", "satisfiable", "shift", "size", "valid",
]
