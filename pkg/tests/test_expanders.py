from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_lab import oracles
from affine_lab.expanders import (
    a_times_sum4,
    aa_plus_a,
    aaa,
    growth_stats,
    productset,
    q_set,
    s14_set,
    sumset,
)
from affine_lab.incidence import PointSet, axis_intercepts


def test_set_operations():
    assert sumset([1, 2], [10]) == {11, 12}
    assert sumset([1, 2]) == {2, 3, 4}
    assert productset([1, 2, 4]) == {1, 2, 4, 8, 16}
    assert aa_plus_a([1, 2]) == {2, 3, 4, 5, 6}
    assert aaa([1, 2]) == {1, 2, 4, 8}
    assert a_times_sum4([1]) == {4}


def test_q_set_examples():
    assert q_set([1, 2]) == {0, 1, 2, 3}
    assert q_set([0, 1]) == {0, 1}
    with pytest.raises(ValueError):
        q_set([3])


def test_s14_examples():
    assert s14_set([0, 1]) == {-1, 0, 1, 2}
    assert s14_set([0]) == {0}


def test_growth_stats():
    g = growth_stats([1, 2, 3])
    assert g.doubling == Fraction(5, 3)
    assert growth_stats([1, 2, 4]).productset_size == 5
    assert growth_stats([7]).doubling == 1
    assert g.mult_ratio == Fraction(27, 15)
    assert growth_stats([0, 1]).mult_ratio is None


@settings(max_examples=40, deadline=None)
@given(st.frozensets(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=2, max_size=5))
def test_q_set_is_y_intercept_trace(A):
    q = q_set(A)
    assert q == oracles.q_set_brute(A)
    assert q >= A
    P = PointSet.cartesian(A, A)
    assert q == axis_intercepts(P, "y")
    assert len(axis_intercepts(P, "x")) == len(q)


@settings(max_examples=40, deadline=None)
@given(st.frozensets(st.integers(-5, 5), min_size=1, max_size=5))
def test_s14_contains_a(A):
    assert s14_set(A) >= A
