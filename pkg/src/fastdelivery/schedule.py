"""Schedule evaluation by the drop-off recursion, validation, and the combined objective."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import EmptyHandoverList, EpsilonOutOfRange, InputError, UnknownAgent, UnreachablePoint
from .metric import DistanceMatrix, apsp, point_distance
from .model import (
    EMPTY_SCHEDULE,
    GraphPoint,
    Instance,
    Leg,
    NodePoint,
    ObjectiveReport,
    Schedule,
    as_rational,
    check_point,
)

Handover = Tuple[int, GraphPoint]


def evaluate_schedule(
    instance: Instance,
    handovers: Sequence[Handover],
    dist: Optional[DistanceMatrix] = None,
) -> Tuple[Schedule, ObjectiveReport]:
    """Times and energies of the schedule given by carriers in order and their drop-off points.

    The first carrier picks up at the source; each later carrier picks up where the
    previous one dropped off.  All movement follows shortest paths.
    """
    if not handovers:
        raise EmptyHandoverList("handover list is empty")
    graph = instance.graph
    dist = dist if dist is not None else apsp(graph)
    seen = set()
    for agent_id, point in handovers:
        if agent_id in seen:
            raise InputError(f"agent {agent_id} carries twice")
        seen.add(agent_id)
        instance.agent(agent_id)
        check_point(graph, point)
    if handovers[-1][1] != NodePoint(instance.target):
        raise InputError("last drop-off must be the target")

    legs = []
    time = Fraction(0)
    energy = Fraction(0)
    pickup: GraphPoint = NodePoint(instance.source)
    for agent_id, dropoff in handovers:
        agent = instance.agent(agent_id)
        approach = point_distance(graph, dist, NodePoint(agent.start), pickup)
        carry = point_distance(graph, dist, pickup, dropoff)
        if approach == float("inf") or carry == float("inf"):
            raise UnreachablePoint(f"agent {agent_id} cannot reach {pickup} or {dropoff}")
        start = max(time, approach / agent.velocity)
        time = start + carry / agent.velocity
        energy += agent.weight * (approach + carry)
        legs.append(Leg(agent_id, pickup, dropoff, start, time, approach, carry))
        pickup = dropoff
    return Schedule(tuple(legs)), ObjectiveReport(time, energy)


@dataclass(frozen=True)
class Violation:
    kind: str  # endpoints | continuity | duplicate-agent | time | distance | unknown-agent | point
    leg: Optional[int]
    message: str


def validate_schedule(instance: Instance, schedule: Schedule, dist: Optional[DistanceMatrix] = None) -> List[Violation]:
    """All violations found; an empty list means the schedule is valid."""
    graph = instance.graph
    out: List[Violation] = []
    legs = schedule.legs
    if not legs:
        if instance.source != instance.target:
            out.append(Violation("endpoints", None, "empty schedule but source != target"))
        return out
    ids = {a.id for a in instance.agents}
    for j, leg in enumerate(legs):
        if leg.agent not in ids:
            out.append(Violation("unknown-agent", j, f"agent {leg.agent} not in instance"))
        for p in (leg.pickup, leg.dropoff):
            try:
                check_point(graph, p)
            except InputError as exc:
                out.append(Violation("point", j, str(exc)))
    if legs[0].pickup != NodePoint(instance.source):
        out.append(Violation("endpoints", 0, "first pickup is not the source"))
    if legs[-1].dropoff != NodePoint(instance.target):
        out.append(Violation("endpoints", len(legs) - 1, "last drop-off is not the target"))
    for j in range(1, len(legs)):
        if legs[j].pickup != legs[j - 1].dropoff:
            out.append(Violation("continuity", j, f"pickup {legs[j].pickup} != previous drop-off {legs[j - 1].dropoff}"))
        if legs[j].pickup_time < legs[j - 1].dropoff_time:
            out.append(Violation("time", j, "pickup before the package was dropped off"))
    seen = set()
    for j, leg in enumerate(legs):
        if leg.agent in seen:
            out.append(Violation("duplicate-agent", j, f"agent {leg.agent} carries twice"))
        seen.add(leg.agent)
        if leg.dropoff_time < leg.pickup_time:
            out.append(Violation("time", j, "drop-off before pickup"))
    if out:
        return out

    try:
        expected, _ = evaluate_schedule(instance, schedule.handovers(), dist)
    except (InputError, UnknownAgent, UnreachablePoint) as exc:
        return [Violation("point", None, str(exc))]
    for j, (got, want) in enumerate(zip(legs, expected.legs)):
        if (got.pickup_time, got.dropoff_time) != (want.pickup_time, want.dropoff_time):
            out.append(Violation("time", j, f"stored times {got.pickup_time},{got.dropoff_time} "
                                            f"!= recomputed {want.pickup_time},{want.dropoff_time}"))
        if (got.approach_distance, got.carry_distance) != (want.approach_distance, want.carry_distance):
            out.append(Violation("distance", j, "stored distances differ from shortest-path distances"))
    return out


def report_of(instance: Instance, schedule: Schedule) -> ObjectiveReport:
    """Objective values read off a schedule's stored legs."""
    if not schedule.legs:
        return ObjectiveReport(Fraction(0), Fraction(0))
    weight = {a.id: a.weight for a in instance.agents}
    energy = sum((weight[l.agent] * (l.approach_distance + l.carry_distance) for l in schedule.legs), Fraction(0))
    return ObjectiveReport(schedule.legs[-1].dropoff_time, energy)


def check_epsilon(epsilon) -> Fraction:
    epsilon = as_rational(epsilon)
    if not 0 < epsilon < 1:
        raise EpsilonOutOfRange(f"epsilon must lie in (0,1), got {epsilon}")
    return epsilon


def combined_value(report: ObjectiveReport, epsilon) -> Fraction:
    epsilon = check_epsilon(epsilon)
    return epsilon * report.delivery_time + (1 - epsilon) * report.energy


def with_combined(report: ObjectiveReport, epsilon) -> ObjectiveReport:
    return ObjectiveReport(report.delivery_time, report.energy, combined_value(report, epsilon))


def trivial_result(instance: Instance):
    """Result for s = t: nothing moves."""
    return EMPTY_SCHEDULE, ObjectiveReport(Fraction(0), Fraction(0))
