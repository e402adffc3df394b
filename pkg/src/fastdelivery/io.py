"""JSON file formats.  Every rational is written as a "num/den" string.

Points are {"node": v} or {"edge": [u, v], "offset": "a/b"} with u < v and the
offset measured from u.
"""
from __future__ import annotations

import json
from typing import Optional

from .errors import InputError, MalformedFormula
from .gadgets import EmbeddedFormula
from .model import (Agent, EdgePoint, Graph, GraphPoint, Instance, Leg, NodePoint,
                    ObjectiveReport, Schedule, as_rational, format_rational)

INSTANCE_FORMAT = "fastdelivery.instance/1"
SCHEDULE_FORMAT = "fastdelivery.schedule/1"
FORMULA_FORMAT = "fastdelivery.formula/1"


def _expect(doc, tag: str, err=InputError):
    if not isinstance(doc, dict) or doc.get("format") != tag:
        raise err(f"expected a document with format {tag!r}")


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer")
    return value


def point_to_json(p: GraphPoint) -> dict:
    if isinstance(p, NodePoint):
        return {"node": p.node}
    return {"edge": [p.u, p.v], "offset": format_rational(p.offset)}


def point_from_json(doc) -> GraphPoint:
    if not isinstance(doc, dict):
        raise InputError(f"bad point {doc!r}")
    if "node" in doc:
        return NodePoint(_int(doc["node"], "node"))
    try:
        u, v = doc["edge"]
        return EdgePoint(_int(u, "edge end"), _int(v, "edge end"), as_rational(doc["offset"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad point {doc!r}") from exc


def instance_to_json(inst: Instance) -> dict:
    positional = [a.id for a in inst.agents] == list(range(len(inst.agents)))
    if positional:
        agents = [[a.start, format_rational(a.weight), format_rational(a.velocity)] for a in inst.agents]
    else:
        agents = [{"id": a.id, "start": a.start, "weight": format_rational(a.weight),
                   "velocity": format_rational(a.velocity)} for a in inst.agents]
    return {
        "format": INSTANCE_FORMAT,
        "nodes": inst.graph.node_count,
        "edges": [[u, v, format_rational(l)] for u, v, l in inst.graph.edges],
        "agents": agents,
        "source": inst.source,
        "target": inst.target,
    }


def instance_from_json(doc) -> Instance:
    _expect(doc, INSTANCE_FORMAT)
    try:
        edges = tuple((_int(u, "edge end"), _int(v, "edge end"), as_rational(l)) for u, v, l in doc["edges"])
        graph = Graph(_int(doc["nodes"], "nodes"), edges)
        agents = []
        for i, a in enumerate(doc["agents"]):
            if isinstance(a, dict):
                agents.append(Agent(_int(a["id"], "agent id"), _int(a["start"], "agent start"),
                                    as_rational(a["weight"]), as_rational(a["velocity"])))
            else:
                p, w, vel = a
                agents.append(Agent(i, _int(p, "agent start"), as_rational(w), as_rational(vel)))
        return Instance(graph, tuple(agents), _int(doc["source"], "source"), _int(doc["target"], "target"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed instance: {exc}") from exc


def report_to_json(report: ObjectiveReport) -> dict:
    out = {"delivery_time": format_rational(report.delivery_time), "energy": format_rational(report.energy)}
    if report.combined_value is not None:
        out["combined_value"] = format_rational(report.combined_value)
    return out


def schedule_to_json(schedule: Schedule, report: Optional[ObjectiveReport] = None) -> dict:
    doc = {
        "format": SCHEDULE_FORMAT,
        "legs": [{
            "agent": leg.agent,
            "pickup": point_to_json(leg.pickup),
            "dropoff": point_to_json(leg.dropoff),
            "pickup_time": format_rational(leg.pickup_time),
            "dropoff_time": format_rational(leg.dropoff_time),
            "approach_distance": format_rational(leg.approach_distance),
            "carry_distance": format_rational(leg.carry_distance),
        } for leg in schedule.legs],
    }
    if report is not None:
        doc["report"] = report_to_json(report)
    return doc


def schedule_from_json(doc) -> Schedule:
    _expect(doc, SCHEDULE_FORMAT)
    try:
        legs = tuple(Leg(_int(l["agent"], "agent"), point_from_json(l["pickup"]), point_from_json(l["dropoff"]),
                         as_rational(l["pickup_time"]), as_rational(l["dropoff_time"]),
                         as_rational(l["approach_distance"]), as_rational(l["carry_distance"]))
                     for l in doc["legs"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed schedule: {exc}") from exc
    return Schedule(legs)


def handovers_from_json(doc):
    """Handover list from a schedule file; legs may omit everything but agent and dropoff."""
    _expect(doc, SCHEDULE_FORMAT)
    try:
        return [(_int(l["agent"], "agent"), point_from_json(l["dropoff"])) for l in doc["legs"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed schedule: {exc}") from exc


def formula_to_json(f: EmbeddedFormula) -> dict:
    return {
        "format": FORMULA_FORMAT,
        "variables": f.x,
        "clauses": [list(c) for c in f.clauses],
        "inside": [list(s) for s in f.inside],
        "outside": [list(s) for s in f.outside],
    }


def formula_from_json(doc) -> EmbeddedFormula:
    _expect(doc, FORMULA_FORMAT, MalformedFormula)
    try:
        return EmbeddedFormula(doc["variables"], tuple(tuple(c) for c in doc["clauses"]),
                               tuple(tuple(s) for s in doc["inside"]), tuple(tuple(s) for s in doc["outside"]))
    except (KeyError, TypeError) as exc:
        raise MalformedFormula(f"malformed formula: {exc}") from exc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def save(path: str, doc) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(doc))
