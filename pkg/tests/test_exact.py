import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpalie.exact import (
    AmbientDimensionError,
    Matrix,
    Subspace,
    format_rational,
    nullspace,
    parse_rational,
    rank,
    rref,
    solve_linear,
    subspace_ops,
    to_rational,
)
from oracles import bareiss_rank, modular_rank

small = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rational_round_trip():
    for text in ["0", "-3", "7/2", "-5/6"]:
        assert format_rational(parse_rational(text)) == text
    assert format_rational(Fraction(4, 2)) == "2"
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_rref_small():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rref(m) == Matrix([[1, 0, 1], [0, 1, 1], [0, 0, 0]])
    assert rank(m) == 2
    assert nullspace(m).dim == 1


def test_zero_and_empty():
    assert rank(Matrix.zeros(3, 4)) == 0
    assert nullspace(Matrix.zeros(2, 3)) == Subspace.full(3)
    assert Subspace.zero(3).dim == 0


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_bareiss(rows):
    assert rank(Matrix(rows)) == bareiss_rank(rows)


@settings(max_examples=60, deadline=None)
@given(matrices(8, 8), st.integers(0, 10**6))
def test_rank_matches_modular_probe(rows, seed):
    # a random 30-bit prime almost never divides a pivot minor of a small matrix
    rng = random.Random(seed)
    while True:
        p = rng.randrange(2**29, 2**30) | 1
        if all(p % d for d in range(3, int(p**0.5) + 1, 2)):
            break
    assert rank(Matrix(rows)) == modular_rank(rows, p)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_nullspace_is_kernel(rows):
    m = Matrix(rows)
    ns = nullspace(m)
    assert ns.dim + rank(m) == m.ncols
    for v in ns.vectors():
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_canonical(rows):
    m = Matrix(rows)
    r = rref(m)
    assert rref(r) == r
    shuffled = list(rows)
    random.Random(len(rows)).shuffle(shuffled)
    assert rref(Matrix(shuffled)) == r


@settings(max_examples=80, deadline=None)
@given(matrices(4, 5), matrices(4, 5))
def test_dimension_formula(a_rows, b_rows):
    n = 5
    a = Subspace.span([r + [0] * (n - len(r)) for r in a_rows], n)
    b = Subspace.span([r + [0] * (n - len(r)) for r in b_rows], n)
    ops = subspace_ops(a, b)
    assert ops.sum.dim + ops.intersection.dim == a.dim + b.dim
    assert ops.sum.contains(a) and ops.sum.contains(b)
    assert a.contains(ops.intersection) and b.contains(ops.intersection)
    assert a.annihilator().dim == n - a.dim


def test_subspace_equality_is_basis_independent():
    a = Subspace.span([[1, 1, 0], [0, 1, 1]], 3)
    b = Subspace.span([[1, 2, 1], [1, 0, -1]], 3)
    assert a == b
    assert a.member([2, 3, 1])
    assert not a.member([1, 0, 0])


def test_ambient_mismatch():
    with pytest.raises(AmbientDimensionError):
        Subspace.full(2).sum(Subspace.full(3))


def test_solve_linear():
    cols = [{0: 1, 1: 1}, {1: 1}]
    assert solve_linear(cols, {0: 2, 1: 5}) == [2, 3]
    assert solve_linear(cols, {2: 1}) is None


def test_matrix_json_round_trip():
    m = Matrix([[Fraction(1, 2), 0], [-3, Fraction(7, 5)]])
    assert Matrix.from_json(m.to_json()) == m
