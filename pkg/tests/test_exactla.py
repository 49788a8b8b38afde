from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import rank_by_span, solutions, subspaces
from torsionlab.errors import SizeError
from torsionlab.exactla import (Field, Matrix, enumerate_subspaces, gaussian_binomial, kernel_basis, rref,
                                solve)

F2, F3, QQ = Field(2), Field(3), Field(0)


def mat(field, rows):
    return Matrix.from_rows(field, rows)


@st.composite
def matrices(draw, fields=(2, 3, 5, 7, 0), max_dim=4):
    p = draw(st.sampled_from(fields))
    field = Field(p)
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    elem = st.integers(0, p - 1) if p else st.fractions(min_value=-3, max_value=3, max_denominator=3)
    rows = draw(st.lists(st.lists(elem, min_size=c, max_size=c), min_size=r, max_size=r))
    return mat(field, rows)


def test_rref_examples():
    r, piv = rref(Matrix.identity(F2, 3))
    assert r == Matrix.identity(F2, 3) and piv == [0, 1, 2]
    r, piv = rref(Matrix.zeros(F3, 2, 3))
    assert r == Matrix.zeros(F3, 2, 3) and piv == []
    r, piv = rref(mat(F2, [[1, 1], [1, 1]]))
    assert r == mat(F2, [[1, 1], [0, 0]]) and piv == [0]


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(F2, 4)) == []
    assert len(kernel_basis(Matrix.zeros(F2, 2, 3))) == 3
    assert kernel_basis(mat(F2, [[1, 1]])) == [(1, 1)]


def test_solve_examples():
    assert solve(Matrix.identity(F3, 2), (2, 1)) == (2, 1)
    assert solve(Matrix.zeros(F2, 2, 2), (1, 0)) is None
    assert solve(mat(F2, [[1, 0], [1, 0]]), (1, 1)) == (1, 0)
    assert solve(mat(QQ, [[2, 0], [0, 3]]), (1, 1)) == (Fraction(1, 2), Fraction(1, 3))


def test_subspace_examples():
    assert len(enumerate_subspaces(0, F2)) == 1
    assert len(enumerate_subspaces(1, F2)) == 2
    assert len(enumerate_subspaces(2, F2)) == 5
    with pytest.raises(SizeError):
        enumerate_subspaces(2, QQ)
    with pytest.raises(SizeError):
        enumerate_subspaces(9, F2)


@given(matrices())
def test_rref_idempotent(m):
    r, _ = rref(m)
    assert rref(r)[0] == r


@given(matrices())
def test_rank_nullity(m):
    assert m.rank + len(kernel_basis(m)) == m.cols


@given(matrices())
def test_kernel_vectors_are_independent_solutions(m):
    basis = kernel_basis(m)
    for v in basis:
        assert all(x == 0 for x in m.apply(v))
    if basis:
        assert Matrix.from_rows(m.field, basis).rank == len(basis)


@given(matrices(fields=(2, 3), max_dim=3))
def test_rank_matches_span_enumeration(m):
    assert m.rank == rank_by_span([list(r) for r in m.data], m.field.p)


@given(matrices(fields=(2, 3), max_dim=3), st.data())
def test_solve_matches_enumeration(m, data):
    p = m.field.p
    b = data.draw(st.lists(st.integers(0, p - 1), min_size=m.rows, max_size=m.rows))
    sols = solutions([list(r) for r in m.data], b, p)
    x = solve(m, b)
    if sols:
        assert x is not None and tuple(x) in sols
    else:
        assert x is None


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_subspace_count_is_gaussian_binomial_sum(p, d):
    subs = enumerate_subspaces(d, Field(p))
    assert len(subs) == sum(gaussian_binomial(d, k, p) for k in range(d + 1))
    assert len(set(subs)) == len(subs)
    assert len(subs) == len(subspaces(d, p))
    for s in subs:
        assert rref(s)[0] == s
