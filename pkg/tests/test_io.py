import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fastdelivery import io
from fastdelivery.errors import InputError, MalformedFormula
from fastdelivery.fast import prune_collocated, solve_fast
from fastdelivery.gadgets import default_embedding
from fastdelivery.generate import gen_random
from fastdelivery.model import EdgePoint, NodePoint
from fastdelivery.schedule import validate_schedule


def roundtrip(doc):
    return json.loads(io.dumps(doc))


def test_points():
    for p in (NodePoint(3), EdgePoint(1, 4, F(7, 3))):
        assert io.point_from_json(roundtrip(io.point_to_json(p))) == p
    assert io.point_to_json(EdgePoint(0, 2, F(1, 2))) == {"edge": [0, 2], "offset": "1/2"}


@given(st.integers(0, 10**6))
def test_instance_round_trip(seed):
    inst = gen_random("graph", 5, 3, seed)
    assert io.instance_from_json(roundtrip(io.instance_to_json(inst))) == inst


def test_instance_with_sparse_ids():
    inst = prune_collocated(gen_random("graph", 3, 4, 1))
    assert io.instance_from_json(roundtrip(io.instance_to_json(inst))) == inst


@given(st.integers(0, 10**6))
def test_schedule_round_trip_still_validates(seed):
    inst = gen_random("graph", 5, 3, seed)
    try:
        sched, rep = solve_fast(inst)
    except Exception:
        return
    back = io.schedule_from_json(roundtrip(io.schedule_to_json(sched, rep)))
    assert back == sched and validate_schedule(inst, back) == []


def test_formula_round_trip():
    f = default_embedding(3, [(1, -2, 3), (-1, 2)])
    assert io.formula_from_json(roundtrip(io.formula_to_json(f))) == f


@pytest.mark.parametrize("doc", [
    {"format": "something/else"},
    {"format": io.INSTANCE_FORMAT, "nodes": 2, "edges": [[0, 1, 1.5]], "agents": [[0, "1", "1"]], "source": 0, "target": 1},
    {"format": io.INSTANCE_FORMAT, "nodes": 2, "edges": [[0, 1, "1"]], "agents": [[0, "1"]], "source": 0, "target": 1},
    {"format": io.INSTANCE_FORMAT, "nodes": 2, "edges": [], "source": 0, "target": 1},
])
def test_bad_instance_documents(doc):
    with pytest.raises(InputError):
        io.instance_from_json(doc)


def test_bad_formula_document():
    with pytest.raises(MalformedFormula):
        io.formula_from_json({"format": io.FORMULA_FORMAT, "variables": 1, "clauses": [[1]]})


def test_load_reports_bad_files(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(InputError):
        io.load(str(p))
    with pytest.raises(InputError):
        io.load(str(tmp_path / "missing.json"))
