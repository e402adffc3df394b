import random
from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fastdelivery.errors import EmptyHandoverList, EpsilonOutOfRange, InputError
from fastdelivery.generate import gen_random
from fastdelivery.model import INF, NodePoint, ObjectiveReport, Schedule, make_instance
from fastdelivery.schedule import (check_epsilon, combined_value, evaluate_schedule, report_of,
                                   validate_schedule)


def floyd(graph):
    n = graph.node_count
    d = [[INF] * n for _ in range(n)]
    for v in range(n):
        d[v][v] = F(0)
    for u, v, l in graph.edges:
        d[u][v] = d[v][u] = min(d[u][v], l)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def simulate(inst, chain):
    """Straight-line interpreter: every agent keeps its own clock and odometer."""
    d = floyd(inst.graph)
    clock = {a.id: F(0) for a in inst.agents}
    odo = {a.id: F(0) for a in inst.agents}
    where = {a.id: a.start for a in inst.agents}
    pkg, ready = inst.source, F(0)
    for aid, drop in chain:
        a = inst.agent(aid)
        clock[aid] += d[where[aid]][pkg] / a.velocity
        odo[aid] += d[where[aid]][pkg]
        clock[aid] = max(clock[aid], ready)
        clock[aid] += d[pkg][drop] / a.velocity
        odo[aid] += d[pkg][drop]
        where[aid], pkg, ready = drop, drop, clock[aid]
    energy = sum(inst.agent(i).weight * odo[i] for i in odo)
    return ready, energy


def test_two_leg_example(two_leg):
    inst, chain = two_leg
    _, rep = evaluate_schedule(inst, chain)
    assert rep.lex == (8, 72)


def test_single_agent_at_source():
    inst = make_instance(2, [(0, 1, 7)], [(0, 0, 1)], 0, 1)
    _, rep = evaluate_schedule(inst, [(0, NodePoint(1))])
    assert rep.lex == (7, 0)


@given(st.integers(0, 10**6))
def test_evaluator_matches_interpreter(seed):
    inst = gen_random("graph", 4, 3, seed)
    rng = random.Random(seed)
    ids = rng.sample([a.id for a in inst.agents], rng.randint(1, 3))
    stops = [rng.randrange(4) for _ in ids[:-1]] + [inst.target]
    chain = list(zip(ids, stops))
    _, rep = evaluate_schedule(inst, [(a, NodePoint(v)) for a, v in chain])
    assert rep.lex == simulate(inst, chain)


def test_evaluator_rejects_bad_lists(two_leg):
    inst, chain = two_leg
    with pytest.raises(EmptyHandoverList):
        evaluate_schedule(inst, [])
    with pytest.raises(InputError):
        evaluate_schedule(inst, [(0, NodePoint(2))])  # does not end at t
    with pytest.raises(InputError):
        evaluate_schedule(inst, [(0, NodePoint(2)), (0, NodePoint(3))])


def test_valid_schedule_has_no_violations(two_leg):
    inst, chain = two_leg
    sched, rep = evaluate_schedule(inst, chain)
    assert validate_schedule(inst, sched) == []
    assert report_of(inst, sched) == rep


def test_swapped_legs_break_continuity(two_leg):
    inst, chain = two_leg
    sched, _ = evaluate_schedule(inst, chain)
    kinds = {v.kind for v in validate_schedule(inst, Schedule(sched.legs[::-1]))}
    assert "continuity" in kinds and "endpoints" in kinds


def test_shifted_pickup_time_is_caught(two_leg):
    inst, chain = two_leg
    sched, _ = evaluate_schedule(inst, chain)
    legs = list(sched.legs)
    legs[1] = replace(legs[1], pickup_time=legs[1].pickup_time - 1)
    assert [v.kind for v in validate_schedule(inst, Schedule(tuple(legs)))] == ["time"]


def test_combined_value_examples(two_leg_combined):
    inst, chain = two_leg_combined
    _, rep = evaluate_schedule(inst, chain)
    assert combined_value(rep, F(4, 5)) == F(99, 5)
    assert combined_value(ObjectiveReport(F(10), F(0)), F(1, 2)) == 5
    assert combined_value(ObjectiveReport(F(8), F(72)), F(1, 3)) == F(152, 3)


@pytest.mark.parametrize("eps", [0, 1, F(3, 2), -1])
def test_epsilon_range(eps):
    with pytest.raises(EpsilonOutOfRange):
        check_epsilon(eps)
