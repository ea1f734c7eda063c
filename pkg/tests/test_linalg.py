from fractions import Fraction

import sympy as sp
from hypothesis import given, strategies as st

from nstren.linalg import bareiss_rank, integer_rows

matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3),
                                min_size=n, max_size=n), min_size=1, max_size=6))


@given(matrices)
def test_rank_matches_sympy(rows):
    assert bareiss_rank(rows) == sp.Matrix(rows).rank()


def test_rank_deficient_example():
    assert bareiss_rank([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 2


def test_integer_rows_clear_denominators():
    rows = integer_rows([[Fraction(1, 2), Fraction(1, 3)]])
    assert rows == [[3, 2]]
