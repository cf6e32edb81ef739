from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_lab import oracles
from affine_lab.geometry import LINE_AT_INFINITY, X_AXIS, Y_AXIS, PlanarLine, Point
from affine_lab.incidence import (
    InfiniteTraceError,
    PointSet,
    axis_intercepts,
    count_incidences,
    count_incidences_brute,
    directions,
    fourth_moment,
    is_collinear_set,
    line_profile,
    mixed_moment,
    profile_pair_count,
    rich_lines,
    trace_on_line,
)

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
point_sets = st.sets(st.tuples(small, small), min_size=0, max_size=9)


def grid(n):
    return PointSet.cartesian(range(n), range(n))


def test_three_by_three_profile():
    prof = line_profile(grid(3))
    assert len(prof) == 20
    assert sorted(prof.values()).count(3) == 8
    assert sorted(prof.values()).count(2) == 12


def test_rich_lines():
    assert len(rich_lines(grid(3), 3)) == 8
    assert len(rich_lines(grid(3), 2)) == 20
    with pytest.raises(ValueError):
        rich_lines(grid(3), 1)


@pytest.mark.parametrize("n,value", [(1, 0), (2, 96), (3, 840)])
def test_fourth_moment_small_grids(n, value):
    assert fourth_moment(grid(n)) == value


def test_fourth_moment_only_spanned_lines():
    # a lone point spans no line
    assert fourth_moment(PointSet.from_points([(0, 0)])) == 0
    assert fourth_moment(PointSet.from_points([(0, 0), (1, 1), (2, 2)])) == 81


def test_directions_example():
    P = PointSet.from_points([(0, 0), (1, 0), (0, 1), (2, 3)])
    assert len(directions(P)) == 6


def test_trace_examples():
    P = grid(2)
    tr = trace_on_line(P, PlanarLine.of(1, 0, 1))
    assert len(tr) == 5
    assert sum(1 for p in tr if p.z != 0) == 4
    assert len(trace_on_line(P, LINE_AT_INFINITY)) == 4
    with pytest.raises(InfiniteTraceError):
        trace_on_line(P, X_AXIS)


def test_axis_intercepts():
    P = grid(2)
    assert axis_intercepts(P, "y") == {0, 1}
    assert axis_intercepts(P, "x") == {0, 1}


def test_incidences_grid_rows():
    P = grid(3)
    lines = [X_AXIS, Y_AXIS, PlanarLine.of(1, -1, 0), PlanarLine.of(1, 1, -10)]
    assert count_incidences(P, lines) == 9
    assert count_incidences(P, lines, method="brute") == 9
    assert count_incidences(P, []) == 0


def test_mixed_moment_equals_fourth_moment_on_diagonal():
    P = grid(3)
    assert mixed_moment(P, P) == fourth_moment(P)


def test_collinear_set():
    assert is_collinear_set(PointSet.from_points([(0, 0), (1, 1), (2, 2)]))
    assert not is_collinear_set(grid(2))


@settings(max_examples=60, deadline=None)
@given(point_sets)
def test_profile_matches_oracle(pts):
    P = PointSet.from_points(pts)
    prof = line_profile(P)
    assert {tuple(l): m for l, m in prof.items()} == oracles.profile_brute(P)
    n = len(P)
    assert profile_pair_count(prof) == n * (n - 1) // 2


@settings(max_examples=40, deadline=None)
@given(point_sets)
def test_fourth_moment_matches_oracle(pts):
    P = PointSet.from_points(pts)
    assert fourth_moment(P) == oracles.fourth_moment_brute(P)


@settings(max_examples=40, deadline=None)
@given(point_sets, point_sets, st.booleans())
def test_mixed_moment_matches_oracle(p1, p2, doubly):
    P1, P2 = PointSet.from_points(p1), PointSet.from_points(p2)
    assert mixed_moment(P1, P2, doubly) == oracles.mixed_moment_brute(P1, P2, doubly)


@settings(max_examples=60, deadline=None)
@given(point_sets, st.lists(st.tuples(small, small, small).filter(any), max_size=8))
def test_incidence_grouped_matches_brute(pts, raw_lines):
    P = PointSet.from_points(pts)
    lines = [PlanarLine.of(*t) for t in raw_lines]
    expected = oracles.incidences_brute(P, lines)
    assert count_incidences(P, lines) == expected == count_incidences_brute(P, lines)


@settings(max_examples=60, deadline=None)
@given(point_sets)
def test_directions_match_slopes(pts):
    P = PointSet.from_points(pts)
    assert len(directions(P)) == len(oracles.slopes_brute(P))
