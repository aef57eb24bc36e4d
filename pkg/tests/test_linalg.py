from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from nilbicone import linalg

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sp.Matrix(m).rank()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_nullspace_is_kernel(m):
    basis = linalg.nullspace(m)
    assert len(basis) == len(m[0]) - linalg.rank(m)
    for v in basis:
        assert all(c == 0 for c in linalg.mat_vec(m, v))


@given(matrices(rows=st.just(4), cols=st.just(4)))
@settings(max_examples=60, deadline=None)
def test_inverse_and_solve(m):
    if linalg.rank(m) < 4:
        assert linalg.solve(m, [1, 0, 0, 0]) is None or linalg.rank(m + [[0] * 4]) < 4
        return
    inv = linalg.inverse(m)
    prod = [[sum(m[i][k] * inv[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
    assert prod == [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    rhs = (1, 2, 3, 4)
    assert linalg.mat_vec(m, linalg.solve(m, rhs)) == rhs


def test_modular_rank():
    m = [[1, 2], [3, 6 + 7]]
    assert linalg.rank(m) == 2
    assert linalg.rank(m, 7) == 1


def test_in_span_and_inconsistent_solve():
    rows = [(1, 0, 1), (0, 1, 1)]
    assert linalg.in_span((2, 3, 5), rows)
    assert not linalg.in_span((0, 0, 1), rows)
    assert linalg.solve([[1, 1], [1, 1]], [1, 2]) is None
