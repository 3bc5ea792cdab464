from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import sympy
from hypothesis import given, strategies as st

from vasreach.diophantine import (det, hermite_normal_form, hilbert_basis, identity, integer_solution_space,
                                  is_unimodular, matmul, min_elements, rank, rational_feasible_strict,
                                  solve_integer)
from vasreach.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog_eq

from oracles import minimal_solutions


def test_hnf_examples():
    H, U = hermite_normal_form([[2, 4]])
    assert H == [[2, 0]] and is_unimodular(U)
    H, U = hermite_normal_form(identity(3))
    assert H == identity(3) and U == identity(3)
    A = [[6, 10, 15]]
    H, U = hermite_normal_form(A)
    assert H == [[1, 0, 0]]
    assert matmul(A, U) == H and abs(det(U)) == 1


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_hnf_property(A):
    H, U = hermite_normal_form(A)
    assert matmul(A, U) == H
    assert abs(sympy.Matrix(U).det()) == 1
    # same column lattice rank as A
    assert sympy.Matrix(H).rank() == sympy.Matrix(A).rank()


def test_solve_integer_examples():
    assert solve_integer([[2]], [3]) is None
    assert solve_integer([[2]], [4]) == (2,)
    x = solve_integer([[1, -1], [1, -2]], [1, -2])
    assert x == (4, 3)


@given(st.integers(1, 3).flatmap(lambda m: st.tuples(
    st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=m, max_size=m),
    st.lists(st.integers(-6, 6), min_size=m, max_size=m))))
def test_solve_integer_property(data):
    A, b = data
    x = solve_integer(A, b, 3)
    if x is not None:
        assert [sum(a * v for a, v in zip(row, x)) for row in A] == b
    else:
        B = 20
        for v in product(range(-B, B + 1), repeat=3):
            assert [sum(a * w for a, w in zip(row, v)) for row in A] != b


def test_solution_space_parametrises_all_solutions():
    A, b = [[2, 3, -1]], [5]
    x0, K = integer_solution_space(A, b, 3)
    for t in product(range(-3, 4), repeat=len(K)):
        x = [x0[i] + sum(tk * k[i] for tk, k in zip(t, K)) for i in range(3)]
        assert 2 * x[0] + 3 * x[1] - x[2] == 5
    # and every small solution is hit: K spans the kernel lattice (det 1 check)
    assert len(K) == 2


def test_rational_feasible_strict_examples():
    sol = rational_feasible_strict([[1, -1]], {0, 1}, ())
    assert sol is not None and sol[0] > 0 and sol[0] == sol[1]
    assert rational_feasible_strict([[1, 1]], {0}, {1}) is None
    assert rational_feasible_strict([[1, -1], [1, -2]], {0, 1}, ()) is None


def test_rational_feasible_strict_random():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(2, 4)
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(1, 2))]
        strict = {i for i in range(n) if rng.random() < 0.6}
        nonneg = {i for i in range(n) if i not in strict and rng.random() < 0.5}
        sol = rational_feasible_strict(A, strict, nonneg, n)
        if sol is not None:
            assert all(isinstance(v, Fraction) for v in sol)
            assert all(sum(a * v for a, v in zip(row, sol)) == 0 for row in A)
            assert all(sol[i] > 0 for i in strict) and all(sol[i] >= 0 for i in nonneg)
        ranges = [range(1, 7) if i in strict else range(0, 7) if i in nonneg else range(-6, 7) for i in range(n)]
        found = any(all(sum(a * v for a, v in zip(row, x)) == 0 for row in A) for x in product(*ranges))
        if found:
            assert sol is not None


def test_linprog():
    # max x + y, x + y + s = 4
    status, x, v = linprog_eq([1, 1, 0], [[1, 1, 1]], [4])
    assert status == OPTIMAL and v == 4
    assert linprog_eq([1], [[1]], [-1])[0] == INFEASIBLE
    assert linprog_eq([1, 0], [[1, -1]], [0])[0] == UNBOUNDED


def test_hilbert_basis_examples():
    assert hilbert_basis([[1, -1]]) == {(1, 1)}
    assert hilbert_basis([[1, 1, -2]]) == {(2, 0, 1), (0, 2, 1), (1, 1, 1)}
    assert hilbert_basis([], 1) == {(1,)}


def test_min_elements_examples():
    assert min_elements({(1, 2), (2, 1), (2, 2)}) == {(1, 2), (2, 1)}
    assert min_elements({(0, 0)}) == {(0, 0)}
    assert min_elements(set()) == set()


@given(st.integers(1, 3).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                                             min_size=m, max_size=m)))))
def test_hilbert_basis_property(data):
    n, A = data
    hb = hilbert_basis(A, n)
    for v in hb:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    small = {v for v in hb if max(v) <= 6}
    assert small == minimal_solutions(A, n, 6)


def test_hilbert_basis_caps():
    # x1 + x2 = 2 x3 with x3 <= 0: nothing
    assert hilbert_basis([[1, 1, -2]], 3, [None, None, 0]) == set()
    assert hilbert_basis([[1, -1]], 2, [None, 0]) == set()


def test_rank():
    assert rank([]) == 0
    assert rank([(1, 1), (2, 2)]) == 1
    assert rank([(1, 0), (1, 1)]) == 2
