from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fastdelivery.envelope import (Line, LineSet, MinWindow, Ray, build_upper_envelope,
                                   naive_leftmost_intersection, naive_max_at, naive_min_at)
from fastdelivery.errors import DuplicateEntry, EmptySet, EmptyWindow

rat = st.builds(F, st.integers(-12, 12), st.integers(1, 4))
pos = st.builds(F, st.integers(1, 12), st.integers(1, 4))


def test_single_line_is_returned():
    ls = LineSet([(1, 0, 7)])
    assert ls.max_at(5) == (5, 7)


def test_dominated_line_never_wins():
    ls = LineSet([(1, 5, 0), (1, 2, 1)])
    for x in range(-5, 6):
        assert ls.max_at(x)[1] == 0


def test_tie_at_origin_goes_to_steeper_line():
    assert LineSet([(1, 0, 0), (2, 0, 1)]).max_at(0) == (0, 1)


def test_value_at_point():
    assert LineSet([(3, 1, 0)]).max_at(2) == (7, 0)


def test_duplicate_and_empty():
    ls = LineSet([(1, 1, 0)])
    with pytest.raises(DuplicateEntry):
        ls.insert_line(1, 1, 0)
    with pytest.raises(EmptySet):
        LineSet().max_at(0)


def test_symmetric_crossing():
    assert LineSet([(1, 0, 0)]).leftmost_intersection(10, 1) == (5, 5, 0)


def test_query_starting_below_the_envelope():
    # envelope y = 2x + 4 starts above y = 3 - x and stays above
    assert LineSet([(2, 4, 0)]).leftmost_intersection(3, 1) is None
    # an envelope falling faster than the query line is met later
    assert LineSet([(-2, 4, 0)]).leftmost_intersection(3, 1) == (1, 2, 0)
    assert LineSet([(F(-1, 2), 4, 0)]).leftmost_intersection(3, 1) is None


@given(st.lists(st.tuples(rat, rat), min_size=1, max_size=25, unique=True), st.lists(rat, min_size=1, max_size=10))
def test_max_matches_naive(pairs, xs):
    ls = LineSet()
    raw = []
    for i, (a, b) in enumerate(pairs):
        ls.insert_line(a, b, i)
        raw.append(Line(a, b, i))
        for x in xs:
            assert ls.max_at(x) == naive_max_at(raw, x)


@given(st.lists(st.tuples(rat, rat), min_size=1, max_size=25, unique=True), rat, pos)
def test_leftmost_intersection_matches_naive(pairs, c, m):
    ls = LineSet()
    raw = []
    for i, (a, b) in enumerate(pairs):
        ls.insert_line(a, b, i)
        raw.append(Line(a, b, i))
        assert ls.leftmost_intersection(c, m) == naive_leftmost_intersection(raw, c, m)


def test_parallel_rays_higher_intercept_wins():
    env = build_upper_envelope([Ray(F(1), F(0), 0), Ray(F(1), F(2), 1)])
    assert [s.owner for s in env.segments] == [1]


def test_rays_through_origin_leave_the_steepest():
    env = build_upper_envelope([Ray(F(a), F(0), a) for a in (1, 2, 3)])
    assert len(env) == 1 and env.segments[0].a == 3


@given(st.lists(st.tuples(rat, rat, st.builds(F, st.integers(0, 12))), min_size=1, max_size=10),
       st.lists(st.builds(F, st.integers(0, 60), st.integers(1, 4)), min_size=1, max_size=20))
def test_ray_envelope_matches_pointwise_max(specs, xs):
    rays = [Ray(a, b, i, s) for i, (a, b, s) in enumerate(specs)]
    env = build_upper_envelope(rays)
    for x in xs:
        act = [Line(r.a, r.b, r.owner) for r in rays if r.start <= x]
        if act:
            assert env.at(x) == naive_max_at(act, x)


def test_segments_of_a_line_set():
    ls = LineSet([(0, 0, -1), (2, -4, 3)])
    env = ls.segments()
    assert [(s.owner, s.lo, s.hi) for s in env.segments] == [(-1, -float("inf"), 2), (3, 2, float("inf"))]


def test_window_single_line_and_excluding_the_minimum():
    w = MinWindow()
    w.push(0, 0, 1, 0)
    assert w.min_at(3) == (1, 0)
    w.push(1, 0, 5, 1)
    w.advance(0)
    assert w.min_at(3) == (5, 1)
    w.advance(1)
    with pytest.raises(EmptyWindow):
        w.min_at(0)


def test_window_keys_must_not_decrease():
    w = MinWindow()
    w.push(2, 0, 0, 0)
    with pytest.raises(ValueError):
        w.push(1, 0, 0, 1)


@given(st.lists(st.one_of(st.tuples(st.just("push"), st.integers(0, 2), rat, rat),
                          st.tuples(st.just("advance"), st.integers(0, 2))), max_size=40), rat)
def test_window_matches_naive(ops, x):
    w = MinWindow()
    key = F(0)
    raw = []   # (key, line)
    bound = None
    for j, op in enumerate(ops):
        if op[0] == "push":
            key += op[1]
            w.push(key, op[2], op[3], j)
            raw.append((key, Line(op[2], op[3], j)))
        else:
            b = key - op[1]
            w.advance(b)
            bound = b if bound is None else max(bound, b)
        live = [l for k, l in raw if bound is None or k > bound]
        if live:
            assert w.min_at(x) == naive_min_at(live, x)
        else:
            with pytest.raises(EmptyWindow):
                w.min_at(x)
