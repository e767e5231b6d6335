from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from symdegen.linalg import bareiss_det, bareiss_rank, nullspace, rref, sparse_nullspace

entries = st.one_of(st.integers(-6, 6), st.fractions(min_value=-3, max_value=3, max_denominator=4))


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


shaped = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(lambda s: matrices(*s))
square = st.integers(1, 6).flatmap(lambda n: matrices(n, n))


def sym(a):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in row] for row in a])


@given(shaped)
def test_rank_matches_sympy(a):
    assert bareiss_rank(a) == sym(a).rank()


@given(square)
def test_det_matches_sympy(a):
    assert sympy.Rational(str(bareiss_det(a))) == sym(a).det()


def test_small_cases():
    assert bareiss_rank([]) == 0
    assert bareiss_det([]) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_rank([[1, 2], [2, 4]]) == 1


@given(shaped)
def test_rref_pivots_give_rank(a):
    red, piv = rref(a)
    assert len(piv) == bareiss_rank(a)
    for row, c in zip(red, piv):
        assert row[c] == 1


def _apply(a, v):
    return [sum(Fraction(x) * y for x, y in zip(row, v)) for row in a]


@given(shaped)
def test_nullspaces_are_kernels_of_full_dimension(a):
    n = len(a[0])
    for basis in (nullspace(a, n), sparse_nullspace([dict(enumerate(r)) for r in a], n)):
        assert len(basis) == n - bareiss_rank(a)
        assert all(not any(_apply(a, v)) for v in basis)
        if basis:
            assert bareiss_rank(basis) == len(basis)
