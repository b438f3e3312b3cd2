from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from polarcyl import linalg

from oracles import gauss_solve

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_rank_and_determinant_basics():
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.determinant([[2, 1], [1, 2]]) == 3
    assert linalg.determinant([[0, 1], [1, 0]]) == -1


def test_solve_rejects_singular():
    with pytest.raises(linalg.SingularMatrixError):
        linalg.solve([[1, 2], [2, 4]], [1, 2])


def test_solve_general_reports_nullity_and_inconsistency():
    x, nullity = linalg.solve_general([[1, 1, 0], [0, 0, 1]], [2, 3])
    assert nullity == 1 and x is not None
    assert linalg.mat_vec([[1, 1, 0], [0, 0, 1]], x) == [2, 3]
    x, _ = linalg.solve_general([[1, 1], [1, 1]], [1, 2])
    assert x is None


def test_negative_definite_chains():
    a2 = [[-2, 1], [1, -2]]
    assert linalg.is_negative_definite(a2)
    assert not linalg.is_negative_definite([[-1, 1], [1, -1]])
    assert not linalg.is_negative_definite([[-1, 2], [2, -1]])


@settings(max_examples=200, deadline=None)
@given(square(4))
def test_determinant_matches_sympy(m):
    assert linalg.determinant(m) == Fraction(int(sympy.Matrix(m).det()))


@settings(max_examples=200, deadline=None)
@given(square(4))
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=200, deadline=None)
@given(square(4), st.lists(small, min_size=4, max_size=4))
def test_solve_matches_independent_gauss(m, b):
    if linalg.determinant(m) == 0:
        return
    assert linalg.solve(m, b) == gauss_solve(m, b)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.lists(st.lists(small, min_size=5, max_size=5),
                                                    min_size=r, max_size=r)))
def test_nullspace_is_a_kernel_basis(m):
    basis = linalg.nullspace(m)
    assert len(basis) == 5 - linalg.rank(m)
    for v in basis:
        assert linalg.mat_vec(m, v) == [0] * len(m)
    if basis:
        assert linalg.rank(basis) == len(basis)
