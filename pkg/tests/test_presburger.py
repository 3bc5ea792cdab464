from __future__ import annotations

import random
from itertools import product

import pytest

from vasreach.presburger import (ALL_INT, FALSE, NONNEG, TRUE, And, FormulaEnumerator, FormulaSyntaxError, Le,
                                 Mod, Not, Or, canonical, conj, dim, enumerate_formulas, evaluate,
                                 format_formula, parse, satisfiable, shift, size, valid)
from vasreach.presburger import omega
from vasreach.presburger.solver import nnf


def test_parse_examples():
    assert parse("x2 <= x1 + 2") == Le((-1, 1), 2)
    f = parse("(x1 mod 2 = 1) && x1 >= 10")
    assert isinstance(f, And)
    assert f.left == Mod((1,), 1, 2) and f.right == Le((-1,), -10)
    with pytest.raises(FormulaSyntaxError) as err:
        parse("x1 <")
    assert err.value.offset == 4


@pytest.mark.parametrize("text", [
    "x2 <= x1 + 2", "!(x1 = 3) || x2 > 2*x1", "x1 mod 3 = 2 && (x2 < 1 || true)",
    "false", "x1 + x2 != 4", "-x1 - 3*x3 >= -7", "!!(x1 <= 0)", "(x1 <= 1 || x2 <= 1) && x3 <= 1",
])
def test_round_trip(text):
    f = parse(text)
    assert parse(format_formula(f)) == f


@pytest.mark.parametrize("bad", ["", "x1 <= ", "x0 <= 1", "x1 mod 1 = 0", "(x1 <= 2", "x1 <= 2)", "x1 ** 2 <= 3"])
def test_syntax_errors(bad):
    with pytest.raises((FormulaSyntaxError, ValueError)):
        parse(bad)


def test_eval_examples():
    f = parse("x2 <= x1 + 2")
    assert evaluate(f, (0, 2))
    assert not evaluate(f, (0, 3))
    assert evaluate(TRUE, (5, 5, 5))
    with pytest.raises(ValueError):
        evaluate(Le((0, 0, 1), 0), (1, 1))


def test_satisfiable_examples():
    assert satisfiable(parse("x1 >= 0 && x1 <= -1"), ALL_INT) is None
    q = parse("x2 <= x1 + 2 && x1 >= 1 && x2 >= 2 && !(x2 - 2 <= x1 + 1)")
    assert satisfiable(q, NONNEG) is None
    assert all(not evaluate(q, p) for p in product(range(101), repeat=2))
    assert satisfiable(parse("x1 mod 2 = 1 && x1 >= 10"), NONNEG) == (11,)


def test_valid():
    assert valid(parse("x1 >= 0"), NONNEG, 1)
    assert not valid(parse("x1 >= 0"), ALL_INT, 1)
    assert valid(parse("x1 mod 2 = 0 || x1 mod 2 = 1"), ALL_INT, 1)


def test_all_int_domain():
    m = satisfiable(parse("x1 <= -5 && x1 mod 3 = 1"), ALL_INT)
    assert m is not None and m[0] <= -5 and m[0] % 3 == 1
    assert satisfiable(parse("x1 <= -5"), NONNEG) is None


def test_nnf_eliminates_negation():
    f = parse("!(x1 <= 2 && x2 mod 3 = 1)")
    g = nnf(f)
    assert "!" not in format_formula(g)
    for p in product(range(8), repeat=2):
        assert evaluate(f, p) == evaluate(g, p)


def test_shift():
    f = parse("x2 <= x1 + 2 && x1 mod 2 = 0")
    g = shift(f, (1, -2))
    for p in product(range(6), repeat=2):
        assert evaluate(g, p) == evaluate(f, (p[0] + 1, p[1] - 2))


def test_size_and_dim():
    assert size(TRUE) == 0 and size(FALSE) == 0
    assert size(Le((-1, 1), 2)) == 5
    assert size(Mod((1,), 1, 2)) == 4
    assert size(And(Le((1,), 0), Le((1,), 0))) == 5
    assert dim(parse("x3 <= 0")) == 3 and dim(TRUE) == 0


def test_enumeration_examples():
    assert enumerate_formulas(2, 0) == [FALSE, TRUE]
    target = Le((-1, 1), 2)
    k_star = next(k for k in range(9) if target in enumerate_formulas(2, k))
    assert k_star == size(target) == 5
    for k in range(6):
        a, b = enumerate_formulas(2, k), enumerate_formulas(2, k + 1)
        assert b[:len(a)] == a


def test_enumeration_is_ordered_and_deterministic():
    fs = enumerate_formulas(2, 7)
    keys = [(size(f), canonical(f)) for f in fs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert FormulaEnumerator(2).upto(7) == fs


def test_enumeration_covers_every_small_atom():
    fs = set(enumerate_formulas(1, 6))
    for c in range(-3, 4):
        for d in range(-3, 4):
            f = Le((c,), d)
            if c == 0:
                continue    # constant atoms are represented by true/false
            if size(f) <= 6:
                assert f in fs


def test_omega_against_brute_force():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(1, 3)
        eqs = [(tuple(rng.randint(-3, 3) for _ in range(n)), rng.randint(-5, 5)) for _ in range(rng.randint(0, 1))]
        ineqs = [(tuple(rng.randint(-3, 3) for _ in range(n)), rng.randint(-5, 5)) for _ in range(rng.randint(1, 4))]
        ineqs += [(tuple(-int(i == j) for j in range(n)), 0) for i in range(n)]
        ineqs += [(tuple(int(i == j) for j in range(n)), 12) for i in range(n)]

        def ok(x):
            return (all(sum(c * v for c, v in zip(cs, x)) == r for cs, r in eqs)
                    and all(sum(c * v for c, v in zip(cs, x)) <= r for cs, r in ineqs))
        model = omega.solve(n, eqs, ineqs)
        brute = any(ok(x) for x in product(range(13), repeat=n))
        assert (model is not None) == brute
        if model is not None:
            assert ok(model)


def _random_formula(rng, n, depth):
    if depth == 0 or rng.random() < 0.3:
        c = [rng.randint(-3, 3) for _ in range(n)]
        if rng.random() < 0.2:
            return Mod(c, rng.randrange(3), 3)
        return Le(c, rng.randint(-8, 8))
    r = rng.random()
    if r < 0.15:
        return Not(_random_formula(rng, n, depth - 1))
    op = And if r < 0.6 else Or
    return op(_random_formula(rng, n, depth - 1), _random_formula(rng, n, depth - 1))


def test_solver_small_differential():
    rng = random.Random(2024)
    B = 12
    for i in range(150):
        n = rng.randint(1, 2)
        f = _random_formula(rng, n, 4)
        f = conj(f, *[Le(tuple(int(j == v) for j in range(n)), B) for v in range(n)])
        brute = any(evaluate(f, p) for p in product(range(B + 1), repeat=n))
        m = satisfiable(f, NONNEG, n)
        assert (m is not None) == brute, format_formula(f)
        if m is not None:
            assert evaluate(f, m)
