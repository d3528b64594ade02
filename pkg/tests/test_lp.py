from fractions import Fraction as F

from hypothesis import given, strategies as st
from scipy.optimize import linprog

from singlab import lp


def test_maximize_small():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    res = lp.maximize([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == lp.OPTIMAL
    assert res.value == F(14, 5)
    assert res.x == (F(8, 5), F(6, 5))


def test_equality_and_redundant_rows():
    res = lp.minimize([1, 2], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert res.status == lp.OPTIMAL and res.value == 1


def test_infeasible_and_unbounded():
    assert lp.maximize([1], [[1]], [-1]).status == lp.INFEASIBLE
    assert lp.maximize([1, 0], [[-1, 1]], [1]).status == lp.UNBOUNDED
    assert not lp.feasible(A_eq=[[1, 1]], b_eq=[-1])
    assert lp.feasible(A_ub=[[1, 1]], b_ub=[1])


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook largest-coefficient rule
    c = [F(3, 4), -150, F(1, 50), -6]
    A = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    res = lp.maximize(c, A, [0, 0, 1])
    assert res.status == lp.OPTIMAL
    assert res.value == F(1, 20)


small = st.integers(-5, 5)


@given(
    st.lists(small, min_size=3, max_size=3),
    st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.integers(0, 8), min_size=4, max_size=4),
)
def test_matches_floating_solver(c, A, b):
    b = b[: len(A)]
    # box keeps the problem bounded
    A_full = A + [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    b_full = b + [10, 10, 10]
    res = lp.maximize(c, A_full, b_full)
    ref = linprog([-v for v in c], A_ub=A_full, b_ub=b_full, bounds=[(0, None)] * 3, method="highs")
    assert res.status == lp.OPTIMAL and ref.status == 0
    assert abs(float(res.value) + ref.fun) < 1e-7
    for row, rhs in zip(A_full, b_full):
        assert sum(a * x for a, x in zip(row, res.x)) <= rhs
