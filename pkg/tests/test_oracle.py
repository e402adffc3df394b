from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fastdelivery.errors import GuardExceeded, NonUniformVelocities
from fastdelivery.generate import gen_random
from fastdelivery.metric import apsp
from fastdelivery.model import LineAgent, LineInstance, make_instance
from fastdelivery.oracle import (MAX_AGENTS, MAX_LINE_AGENTS, oracle_combined, oracle_fast_subdivided,
                                 oracle_path_lex, oracle_uniform_lex, subdivide)

from helpers import small_graph


@pytest.mark.parametrize("D", [1, 3, 8])
def test_single_agent_exact_for_any_refinement(D):
    inst = make_instance(3, [(0, 1, 3), (1, 2, 5)], [(2, 1, 2)], 0, 1)
    assert oracle_fast_subdivided(inst, D).lex == (F(8 + 3, 2), 11)


def test_guards():
    big = gen_random("graph", 4, MAX_AGENTS + 1, 0)
    with pytest.raises(GuardExceeded):
        oracle_fast_subdivided(big, 1)
    with pytest.raises(GuardExceeded):
        oracle_combined(big, F(1, 2), 1)
    with pytest.raises(GuardExceeded):
        oracle_fast_subdivided(gen_random("graph", 9, 1, 0), 1)
    agents = tuple(LineAgent(i, F(i), F(1), F(1)) for i in range(MAX_LINE_AGENTS + 1))
    with pytest.raises(GuardExceeded):
        oracle_path_lex(LineInstance(F(3), agents))
    with pytest.raises(NonUniformVelocities):
        oracle_uniform_lex(make_instance(2, [(0, 1, 1)], [(0, 1, 1), (1, 1, 2)], 0, 1))


def test_refinement_must_be_positive():
    with pytest.raises(ValueError):
        oracle_fast_subdivided(make_instance(2, [(0, 1, 1)], [(0, 1, 1)], 0, 1), 0)


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_subdivision_keeps_node_distances(seed, D):
    g = gen_random("graph", 5, 1, seed).graph
    sub = subdivide(g, D)[0]
    d, ds = apsp(g), apsp(sub)
    assert all(d(u, v) == ds(u, v) for u in range(5) for v in range(5))
    assert sub.node_count == 5 + (D - 1) * len(g.edges)


@given(st.integers(0, 10**6))
def test_fast_refinement_never_hurts(seed):
    inst = small_graph(seed)
    try:
        ts = [oracle_fast_subdivided(inst, D).delivery_time for D in (1, 2, 4, 8)]
    except Exception:
        return
    assert all(b <= a for a, b in zip(ts, ts[1:]))


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_combined_refinement_never_hurts(seed):
    inst = gen_random("graph", 2 + seed % 4, 1 + seed % 3, seed)
    vs = [oracle_combined(inst, F(1, 2), D).combined_value for D in (1, 2, 4)]
    assert all(b <= a for a, b in zip(vs, vs[1:]))


def test_one_beneficial_handover_on_a_uniform_instance():
    # expensive agent at s; the free agent at the midpoint walks back and meets it halfway
    inst = make_instance(3, [(0, 1, 5), (1, 2, 5)], [(0, 3, 1), (1, 0, 1)], 0, 2)
    res = oracle_uniform_lex(inst, with_schedule=True)
    assert res.report.lex == (10, F(15, 2))
    assert [a for a, _ in res.handovers] == [0, 1]


def test_line_oracle_single_agent():
    assert oracle_path_lex(LineInstance(F(4), (LineAgent(0, F(-2), F(3), F(2)),)))[:2] == (3, 18)
