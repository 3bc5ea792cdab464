"""Recursive-descent parser for the formula syntax.

    formula := disj
    disj    := conj ('||' conj)*
    conj    := unary ('&&' unary)*
    unary   := '!' unary | primary
    primary := 'true' | 'false' | atom | '(' formula ')'
    atom    := expr CMP expr | expr 'mod' INT '=' INT
    expr    := ['-'] term (('+'|'-') term)*
    term    := INT | INT '*' VAR | VAR | '(' expr ')'

Comparisons other than ``<=`` are rewritten into ``<=`` atoms.
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .formula import FALSE, TRUE, And, Formula, Le, Mod, Not, Or

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|(<=|>=|!=|==|&&|\|\||[<>=!()+\-*])|(mod|true|false))")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        kind = ("int", "var", "op", "kw")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.best: FormulaSyntaxError = None

    # helpers
    def peek(self) -> Tuple[str, str, int]:
        return self.toks[self.i]

    def fail(self, msg: str):
        err = FormulaSyntaxError(msg, self.peek()[2])
        if self.best is None or err.offset >= self.best.offset:
            self.best = err
        raise err

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value and self.peek()[0] in ("op", "kw"):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            self.fail(f"expected {value!r}")

    def integer(self) -> int:
        kind, val, _ = self.peek()
        if kind != "int":
            self.fail("expected an integer")
        self.i += 1
        return int(val)

    # grammar
    def formula(self) -> Formula:
        f = self.conj()
        while self.accept("||"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept("&&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, val, _ = self.peek()
        if kind == "kw" and val in ("true", "false"):
            self.i += 1
            return TRUE if val == "true" else FALSE
        if kind == "op" and val == "(":
            save = self.i
            try:
                return self.atom()
            except FormulaSyntaxError:
                self.i = save
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def atom(self) -> Formula:
        lhs, lc = self.expr()
        if self.accept("mod"):
            m = self.integer()
            if m < 2:
                self.i -= 1
                self.fail("modulus must be at least 2")
            self.expect("=")
            r = self.integer()
            return Mod(_vec(lhs), r - lc, m)
        kind, op, _ = self.peek()
        if kind != "op" or op not in ("<=", "<", "=", "==", "!=", ">=", ">"):
            self.fail("expected a comparison")
        self.i += 1
        rhs, rc = self.expr()
        # lhs + lc  op  rhs + rc   <=>   (lhs - rhs)  op  rc - lc
        diff = dict(lhs)
        for v, c in rhs.items():
            diff[v] = diff.get(v, 0) - c
        c = _vec(diff)
        d = rc - lc
        neg = tuple(-v for v in c)
        if op == "<=":
            return Le(c, d)
        if op == "<":
            return Le(c, d - 1)
        if op == ">=":
            return Le(neg, -d)
        if op == ">":
            return Le(neg, -d - 1)
        if op in ("=", "=="):
            return And(Le(c, d), Le(neg, -d))
        return Or(Le(c, d - 1), Le(neg, -d - 1))

    def expr(self) -> Tuple[Dict[int, int], int]:
        coeffs: Dict[int, int] = {}
        const = 0
        sign = -1 if self.accept("-") else 1
        while True:
            tc, tk = self.term()
            for v, c in tc.items():
                coeffs[v] = coeffs.get(v, 0) + sign * c
            const += sign * tk
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return coeffs, const

    def term(self) -> Tuple[Dict[int, int], int]:
        kind, val, _ = self.peek()
        if kind == "int":
            self.i += 1
            n = int(val)
            if self.accept("*"):
                return {self.var(): n}, 0
            return {}, n
        if kind == "var":
            return {self.var(): 1}, 0
        if kind == "op" and val == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        self.fail("expected a term")

    def var(self) -> int:
        kind, val, _ = self.peek()
        if kind != "var":
            self.fail("expected a variable")
        idx = int(val[1:])
        if idx < 1:
            self.fail("variables are numbered from 1")
        self.i += 1
        return idx


def _vec(coeffs: Dict[int, int]) -> Tuple[int, ...]:
    n = max(coeffs, default=0)
    return tuple(coeffs.get(i, 0) for i in range(1, n + 1))


def parse(text: str) -> Formula:
    p = _Parser(text)
    try:
        f = p.formula()
        if p.peek()[0] != "eof":
            p.fail("unexpected trailing input")
        return f
    except FormulaSyntaxError as err:
        raise (p.best if p.best is not None and p.best.offset > err.offset else err) from None
