import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fastdelivery.errors import NotAPath
from fastdelivery.generate import gen_random
from fastdelivery.metric import apsp
from fastdelivery.model import LineAgent, LineInstance, make_instance
from fastdelivery.oracle import oracle_path_lex
from fastdelivery.path import (compute_rays, decompose, dominated_agents, path_to_line, solve_line,
                               solve_path, solve_path_naive)
from fastdelivery.schedule import validate_schedule

from helpers import FIG6_LINE, random_line


def line(t, *agents, ids=None):
    ids = ids or range(len(agents))
    ags = [LineAgent(i, F(p), F(w), F(v)) for i, (p, w, v) in zip(ids, agents)]
    return LineInstance(F(t), tuple(sorted(ags, key=lambda a: (a.position, a.id))))


def test_coordinates_of_a_short_path():
    inst = make_instance(3, [(0, 1, 2), (1, 2, 3)], [(1, 1, 1)], 0, 2)
    ln = path_to_line(inst)
    assert ln.t == 5 and ln.agents[0].position == 2


def test_target_left_of_source_is_reflected():
    inst = make_instance(4, [(0, 1, 2), (1, 2, 3), (2, 3, 4)], [(3, 1, 1)], 2, 0)
    ln = path_to_line(inst)
    assert ln.t == 5 and ln.agents[0].position == -4


def test_non_path_is_refused():
    inst = make_instance(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], [(0, 1, 1)], 0, 2)
    with pytest.raises(NotAPath):
        path_to_line(inst)


@given(st.integers(0, 10**6))
def test_coordinates_reproduce_distances(seed):
    inst = gen_random("path", 6, 2, seed)
    ln, d = path_to_line(inst), apsp(inst.graph)
    for u in range(6):
        for v in range(6):
            assert abs(ln.coords[u] - ln.coords[v]) == d(u, v)


def test_single_agent_ray():
    rays, _ = compute_rays(line(10, (4, 1, 2)))
    r = [r for r in rays if r.owner == 0][0]
    assert (r.slope, r.x0, r.y0, r.zero) == (2, 2, 0, False)


def test_slower_agent_further_right_never_carries():
    rays, _ = compute_rays(line(10, (2, 1, 2), (5, 1, 1)))
    assert [r for r in rays if r.owner == 1][0].zero


def test_middle_agent_speeds_up_the_fast_pickup():
    # agent 2 (v=8) far right; agent 1 (v=2) in between lets the package move earlier
    with_mid = line(40, (1, 1, 1), (6, 1, 2), (30, 1, 8))
    without = line(40, (1, 1, 1), (30, 1, 8), ids=[0, 2])
    pick = lambda ln: [r for r in compute_rays(ln)[0] if r.owner == 2][0].x0
    assert pick(with_mid) < pick(without)


@given(st.integers(0, 10**6))
def test_rays_match_naive_scan(seed):
    ln = random_line(random.Random(seed))
    assert compute_rays(ln)[0] == compute_rays(ln, naive=True)[0]


def test_one_agent_one_phase():
    dec = decompose(line(5, (2, 1, 1)))
    assert len(dec.candidates) == 1 and len(dec.candidates[0].phases) == 1


def test_equal_velocities_share_a_phase():
    dec = decompose(line(5, (2, 3, 1), (4, 1, 1)))
    for cand in dec.candidates:
        assert len(cand.phases) == 1
        assert {m.id for m in cand.phases[0].members} == {0, 1}


def test_three_agents_beyond_target():
    T, E, legs = solve_line(FIG6_LINE)
    assert (T, E) == (5, 19)
    assert (T, E) == oracle_path_lex(FIG6_LINE)[:2]
    assert [a for a, _ in legs] == [1, 2, 3]


def test_single_agent_walks_then_carries():
    assert solve_line(line(7, (3, 2, 1)))[:2] == (10, 20)
    assert solve_line(line(7, (0, 2, 1)))[:2] == (7, 14)


@given(st.integers(0, 10**6))
def test_matches_line_oracle(seed):
    ln = random_line(random.Random(seed))
    want = oracle_path_lex(ln)[:2]
    assert solve_line(ln)[:2] == want
    assert solve_line(ln, naive=True)[:2] == want


@given(st.integers(0, 10**6))
def test_dominated_agents_can_be_removed(seed):
    ln = random_line(random.Random(seed))
    gone = set(dominated_agents(ln))
    kept = LineInstance(ln.t, tuple(a for a in ln.agents if a.id not in gone))
    assert solve_line(kept)[:2] == solve_line(ln)[:2]


@given(st.integers(0, 10**6))
def test_graph_schedules_validate(seed):
    inst = gen_random("path", 2 + seed % 6, 1 + seed % 5, seed)
    sched, rep = solve_path(inst)
    assert validate_schedule(inst, sched) == []
    assert solve_path_naive(inst)[1].lex == rep.lex
