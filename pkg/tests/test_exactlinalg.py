from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from susplink.errors import MonodromyError
from susplink.exactlinalg import determinant, is_negative_definite, leading_minors, solve_exact


def laplace_det(m):
    """Independent oracle: cofactor expansion."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * laplace_det(minor)
    return total


small_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-6, 6), min_size=n, max_size=n),
        min_size=n, max_size=n,
    )
)


@given(small_matrices)
def test_determinant_matches_laplace(m):
    assert determinant(m) == laplace_det(m)


def test_determinant_known():
    assert determinant([[-2]]) == -2
    assert determinant([[-3, 2], [2, -3]]) == 5


@given(small_matrices, st.lists(st.integers(-9, 9), min_size=1, max_size=5))
def test_solve_by_resubstitution(m, rhs):
    n = len(m)
    rhs = (rhs * n)[:n]
    if laplace_det(m) == 0:
        with pytest.raises(MonodromyError):
            solve_exact(m, rhs)
        return
    x = solve_exact(m, rhs)
    for i in range(n):
        assert sum(Fraction(m[i][j]) * x[j] for j in range(n)) == rhs[i]


def test_leading_minors():
    m = [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]
    assert leading_minors(m) == [-2, 3, -4]
    assert is_negative_definite(m)


def test_not_definite():
    assert not is_negative_definite([[0]])
    assert not is_negative_definite([[1]])
    assert not is_negative_definite([[-2, 3], [3, -2]])


def definiteness_oracle(m):
    """Sylvester via the Laplace oracle."""
    n = len(m)
    for k in range(1, n + 1):
        sub = [row[:k] for row in m[:k]]
        if (-1) ** k * laplace_det(sub) <= 0:
            return False
    return True


@given(small_matrices)
def test_definiteness_matches_oracle(m):
    sym = [[m[i][j] + m[j][i] for j in range(len(m))] for i in range(len(m))]
    assert is_negative_definite(sym) == definiteness_oracle(sym)
