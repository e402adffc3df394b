"""Combined objective eps*T + (1-eps)*E: the best single-agent schedule.

Using only the agent with the smallest route cost is within a factor 3 of the optimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import Infeasible
from .metric import DistanceMatrix, apsp
from .model import INF, Agent, Instance, NodePoint, ObjectiveReport, Schedule
from .schedule import check_epsilon, evaluate_schedule, trivial_result, with_combined


@dataclass(frozen=True)
class AgentScore:
    agent: int
    unit_cost: Fraction   # eps/v + (1-eps)*w
    route_cost: Fraction  # unit cost * (d(p,s) + d(s,t))


def unit_cost(agent: Agent, epsilon: Fraction) -> Fraction:
    return epsilon / agent.velocity + (1 - epsilon) * agent.weight


def minimal_agent(instance: Instance, epsilon, dist: Optional[DistanceMatrix] = None) -> AgentScore:
    epsilon = check_epsilon(epsilon)
    dist = dist if dist is not None else apsp(instance.graph)
    s, t = instance.source, instance.target
    if dist(s, t) == INF:
        raise Infeasible("target unreachable from source")
    best = None
    for a in sorted(instance.agents, key=lambda a: a.id):
        if dist(a.start, s) == INF:
            continue
        c = unit_cost(a, epsilon)
        score = AgentScore(a.id, c, c * (dist(a.start, s) + dist(s, t)))
        if best is None or score.route_cost < best.route_cost:
            best = score
    if best is None:
        raise Infeasible("no agent can reach the source")
    return best


def solve_combined_3approx(instance: Instance, epsilon, dist: Optional[DistanceMatrix] = None) -> Tuple[Schedule, ObjectiveReport]:
    epsilon = check_epsilon(epsilon)
    dist = dist if dist is not None else apsp(instance.graph)
    score = minimal_agent(instance, epsilon, dist)
    if instance.source == instance.target:
        schedule, report = trivial_result(instance)
        return schedule, with_combined(report, epsilon)
    schedule, report = evaluate_schedule(instance, [(score.agent, NodePoint(instance.target))], dist)
    report = with_combined(report, epsilon)
    assert report.combined_value == score.route_cost
    return schedule, report
