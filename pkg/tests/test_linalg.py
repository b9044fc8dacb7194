from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from polymethod.linalg import Echelon, clear_denominators, nullspace, rank

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)
matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=0, max_size=6).map(lambda r: (r, c)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_sympy(mc):
    rows, ncols = mc
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert rank(rows) == expected


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace_is_kernel_with_full_dimension(mc):
    rows, ncols = mc
    ns = nullspace(rows, ncols)
    assert len(ns) + rank(rows) == ncols
    for v in ns:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0
    assert rank(ns) == len(ns)


def test_echelon_membership():
    e = Echelon()
    assert e.add([1, 2, 0])
    assert e.add([0, 1, 1])
    assert not e.add([1, 3, 1])
    assert e.contains([2, 5, 1])
    assert not e.contains([0, 0, 1])
    assert e.rank == 2


def test_clear_denominators_gives_primitive_integers():
    v = clear_denominators([Fraction(1, 2), Fraction(-3, 4), Fraction(0)])
    assert v == [2, -3, 0]
    assert all(x.denominator == 1 for x in v)
