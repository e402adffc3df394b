"""Lexicographic (time, energy) delivery on general graphs when all agents share one velocity.

With a common velocity the best time is (delta + d(s,t))/v, delta being the distance
from s to the closest agent.  The package must then move along a shortest s-t path
without ever waiting, so an agent can only take over at points it reaches no later
than the package.  Those points form a finite candidate set per agent, and the
cheapest chain of hand-overs is a shortest path in a small acyclic graph.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import Infeasible, NonUniformVelocities
from .metric import DistanceMatrix, apsp, point_distance
from .model import INF, GraphPoint, Instance, NodePoint, ObjectiveReport, Schedule, point_on_edge
from .schedule import evaluate_schedule, trivial_result


@dataclass
class CandidateSet:
    points: Dict[int, List[GraphPoint]]  # agent id -> pick-up candidates, ordered by distance from s
    offset: Fraction                     # delta


def common_velocity(instance: Instance) -> Fraction:
    vs = {a.velocity for a in instance.agents}
    if len(vs) != 1:
        raise NonUniformVelocities("agents do not share one velocity")
    return vs.pop()


def _check(instance: Instance, dist: DistanceMatrix) -> Fraction:
    s, t = instance.source, instance.target
    if dist(s, t) == INF:
        raise Infeasible("target unreachable from source")
    reach = [dist(a.start, s) for a in instance.agents if dist(a.start, s) != INF]
    if not reach:
        raise Infeasible("no agent can reach the source")
    return min(reach)


def candidate_pickups(instance: Instance, dist: Optional[DistanceMatrix] = None) -> CandidateSet:
    common_velocity(instance)
    g = instance.graph
    dist = dist if dist is not None else apsp(g)
    delta = _check(instance, dist)
    s, t = instance.source, instance.target
    dst = dist(s, t)
    on_path = [v for v in range(g.node_count) if dist(s, v) != INF and dist(s, v) + dist(v, t) == dst]
    # shortest-path edges oriented away from s
    arcs = [(u, v, l) for a, b, l in g.edges for u, v in ((a, b), (b, a))
            if dist(s, u) != INF and dist(s, u) + l + dist(v, t) == dst]
    points: Dict[int, List[GraphPoint]] = {}
    for ag in instance.agents:
        p = ag.start
        found = [(dist(s, v), NodePoint(v)) for v in on_path if dist(p, v) <= delta + dist(s, v)]
        if dist(p, s) != INF:
            for u, v, l in arcs:
                # at y from u: via v the agent needs d(p,v) + l - y, the package delta + d(s,u) + y;
                # the branch via u never has an isolated solution
                y = (dist(p, v) + l - delta - dist(s, u)) / 2
                if 0 < y < l and dist(p, v) + l - y <= dist(p, u) + y:
                    found.append((dist(s, u) + y, point_on_edge(g, u, v, y)))
        found.sort(key=lambda e: (e[0], repr(e[1])))
        uniq = []
        for _, q in found:
            if not uniq or uniq[-1] != q:
                uniq.append(q)
        points[ag.id] = uniq
    return CandidateSet(points, delta)


@dataclass
class HandoverDag:
    nodes: List[Tuple[int, GraphPoint]]          # (agent id, pick-up point)
    arcs: Dict[int, List[Tuple[int, Fraction]]]  # node index -> [(node index or SINK, weight)]
    sources: List[int]


SINK = -1


def build_dag(instance: Instance, cands: CandidateSet, dist: DistanceMatrix) -> HandoverDag:
    g = instance.graph
    s, t = instance.source, instance.target
    dst = dist(s, t)
    nodes = [(aid, q) for aid, qs in cands.points.items() for q in qs]
    ds = [point_distance(g, dist, NodePoint(s), q) for _, q in nodes]
    dt = [point_distance(g, dist, q, NodePoint(t)) for _, q in nodes]
    weight = {a.id: a.weight for a in instance.agents}
    start = {a.id: a.start for a in instance.agents}
    appr = [point_distance(g, dist, NodePoint(start[aid]), q) for aid, q in nodes]
    arcs: Dict[int, List[Tuple[int, Fraction]]] = {}
    for i, (ai, qi) in enumerate(nodes):
        out = [(SINK, weight[ai] * (appr[i] + dt[i]))]
        for j, (aj, qj) in enumerate(nodes):
            if aj == ai or qj == qi or ds[j] <= ds[i]:
                continue
            d = point_distance(g, dist, qi, qj)
            if ds[i] + d + dt[j] == dst:
                out.append((j, weight[ai] * (appr[i] + d)))
        arcs[i] = out
    sources = [i for i, (aid, q) in enumerate(nodes)
               if q == NodePoint(s) and dist(start[aid], s) == cands.offset]
    return HandoverDag(nodes, arcs, sources)


def _normalise(chain: List[Tuple[int, GraphPoint]]) -> List[Tuple[int, GraphPoint]]:
    """Let an agent that shows up twice carry straight through instead."""
    out: List[Tuple[int, GraphPoint]] = []
    for aid, drop in chain:
        seen = [k for k, (a, _) in enumerate(out) if a == aid]
        if seen:
            out = out[:seen[0]]
        out.append((aid, drop))
    return out


def solve_uniform(instance: Instance, dist: Optional[DistanceMatrix] = None) -> Tuple[Schedule, ObjectiveReport]:
    v = common_velocity(instance)
    dist = dist if dist is not None else apsp(instance.graph)
    delta = _check(instance, dist)
    if instance.source == instance.target:
        return trivial_result(instance)
    cands = candidate_pickups(instance, dist)
    dag = build_dag(instance, cands, dist)
    n = len(dag.nodes)
    best = [INF] * (n + 1)  # index n is the sink
    parent: List[Optional[int]] = [None] * (n + 1)
    heap = []
    for i in dag.sources:
        best[i] = Fraction(0)
        heap.append((Fraction(0), i))
    heapq.heapify(heap)
    while heap:
        d, i = heapq.heappop(heap)
        if d > best[i] or i == n:
            continue
        for j, w in dag.arcs[i]:
            j = n if j == SINK else j
            if d + w < best[j]:
                best[j] = d + w
                parent[j] = i
                heapq.heappush(heap, (d + w, j))
    if best[n] == INF:
        raise Infeasible("no hand-over chain reaches t")
    order = []
    i = parent[n]
    while i is not None:
        order.append(i)
        i = parent[i]
    order.reverse()
    chain = []
    for a, b in zip(order, order[1:]):
        chain.append((dag.nodes[a][0], dag.nodes[b][1]))
    chain.append((dag.nodes[order[-1]][0], NodePoint(instance.target)))
    schedule, report = evaluate_schedule(instance, _normalise(chain), dist)
    assert report.delivery_time == (delta + dist(instance.source, instance.target)) / v
    assert report.energy <= best[n]
    return schedule, report
