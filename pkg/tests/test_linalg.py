from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from monopath.errors import PreconditionError
from monopath.linalg import l1_distance_to_span, rank, row_echelon, simplex_min, solve, to_matrix


def test_rank_and_rref():
    m = to_matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    red, pivots = row_echelon(m)
    assert pivots == [0, 1]
    assert rank(m) == 2
    assert red[0][0] == 1 and red[1][1] == 1


def test_solve_basic_solution():
    m = to_matrix([[1, 1, 0], [0, 1, 1]])
    x = solve(m, [Fraction(2), Fraction(3)])
    assert x == [Fraction(-1), Fraction(3), Fraction(0)]


def test_solve_inconsistent():
    with pytest.raises(PreconditionError):
        solve(to_matrix([[1, 1], [1, 1]]), [Fraction(1), Fraction(2)])


def test_simplex_small():
    # min x + 2y s.t. x + y = 3, x - y = 1
    res = simplex_min([1, 2], [[1, 1], [1, -1]], [3, 1])
    assert res.status == "optimal"
    assert res.value == 4 and res.x == (2, 1)


def test_simplex_infeasible_and_unbounded():
    assert simplex_min([1], [[1], [1]], [1, 2]).status == "infeasible"
    assert simplex_min([-1, 0], [[1, -1]], [0]).status == "unbounded"


def test_simplex_redundant_rows_and_negative_rhs():
    res = simplex_min([1, 1], [[1, 1], [2, 2], [-1, 0]], [2, 4, -1])
    assert res.status == "optimal" and res.value == 2 and res.x[0] == 1


@given(st.integers(1, 4), st.integers(2, 6), st.data())
def test_simplex_matches_scipy(m, n, data):
    a = [[data.draw(st.integers(-4, 4)) for _ in range(n)] for _ in range(m)]
    x0 = [data.draw(st.integers(0, 3)) for _ in range(n)]  # feasible by construction
    b = [sum(r * v for r, v in zip(row, x0)) for row in a]
    c = [data.draw(st.integers(0, 5)) for _ in range(n)]  # c >= 0: bounded
    ours = simplex_min(c, a, b)
    ref = linprog(c, A_eq=np.array(a, float), b_eq=np.array(b, float), bounds=[(0, None)] * n,
                  method="highs")
    assert ours.status == "optimal" and ref.status == 0
    assert abs(float(ours.value) - ref.fun) < 1e-7
    assert all(sum(Fraction(r) * v for r, v in zip(row, ours.x)) == bi for row, bi in zip(a, b))


def test_l1_distance_to_zero_sum_line():
    # distance from e1 to span{e1 - e2}: min |1 - t| + |t| = 1
    res = l1_distance_to_span([Fraction(1), Fraction(0)], [[Fraction(1), Fraction(-1)]])
    assert res.value == 1
