"""Minimum delivery time: dynamic program over agents sorted by velocity.

Row ``i`` of the tables holds the earliest arrival of the package at every node when
only the ``i`` slowest agents may carry (row 0: nobody, the package sits at ``s``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import Infeasible
from .metric import DistanceMatrix, apsp
from .model import INF, Agent, Instance, NodePoint, ObjectiveReport, Schedule, point_on_edge
from .schedule import evaluate_schedule, trivial_result

# In-edge pick-up: (distance from v, helping agent row, 'u' = helper came through u, 'p' = helper picked up in-edge)
EdgePick = Tuple[Fraction, int, str]


def prune_collocated(instance: Instance) -> Instance:
    """Keep one agent per start node: the fastest, lowest id on ties."""
    best: Dict[int, Agent] = {}
    for a in instance.agents:
        cur = best.get(a.start)
        if cur is None or a.velocity > cur.velocity or (a.velocity == cur.velocity and a.id < cur.id):
            best[a.start] = a
    keep = {a.id for a in best.values()}
    return instance.with_agents(a for a in instance.agents if a.id in keep)


@dataclass
class DpTables:
    agents: List[Agent]                  # row i >= 1 belongs to agents[i - 1]
    T: List[List]                        # T[i][v]
    A: List[List[Optional[int]]]         # A[i][v]: row of the last carrier, None for row 0
    P: List[Dict[Tuple[int, int], EdgePick]]
    record: List[List[tuple]]            # how T[i][v] was obtained
    edge_record: List[List[tuple]]       # record right after the in-edge step (before the walk pass)


def _rows(instance: Instance, dist: DistanceMatrix, in_edge: bool = True) -> DpTables:
    graph = instance.graph
    n = graph.node_count
    s = instance.source
    agents = sorted(instance.agents, key=lambda a: (a.velocity, a.id))
    arrive = [[INF if dist(a.start, v) == INF else dist(a.start, v) / a.velocity for v in range(n)] for a in agents]

    T0 = [INF] * n
    T0[s] = Fraction(0)
    tables = DpTables(agents, [T0], [[None] * n], [{}], [[("copy",)] * n], [[("copy",)] * n])
    directed = [(u, v, l) for u, v, l in graph.edges] + [(v, u, l) for u, v, l in graph.edges]

    for i in range(1, len(agents) + 1):
        me = agents[i - 1]
        arr = arrive[i - 1]
        prevT, prevA = tables.T[i - 1], tables.A[i - 1]
        T = list(prevT)
        A = list(prevA)
        rec = [("copy",)] * n
        P: Dict[Tuple[int, int], EdgePick] = {}

        if in_edge:
            inv_me = 1 / me.velocity
            for u, v, length in directed:
                if not (arr[v] < prevT[v] and arr[u] > prevT[u]):
                    continue
                d_iv = dist(me.start, v)
                best: Optional[EdgePick] = None
                lo = prevA[u] if prevA[u] is not None else 1
                for j in range(lo, i):
                    other = agents[j - 1]
                    if other.velocity >= me.velocity:
                        continue
                    inv_j = 1 / other.velocity
                    denom = inv_me + inv_j
                    cands = []
                    meet_at_u = max(prevT[u], arrive[j - 1][u])
                    if meet_at_u != INF:
                        x = (meet_at_u + length * inv_j - d_iv * inv_me) / denom
                        if 0 < x < length:
                            cands.append((x, j, "u"))
                    prior = tables.P[j].get((u, v))
                    if prior is not None:
                        y = prior[0]
                        x = ((dist(other.start, v) + 2 * y) * inv_j - d_iv * inv_me) / denom
                        if 0 < x <= y:
                            cands.append((x, j, "p"))
                    for c in cands:
                        if best is None or c[0] < best[0]:
                            best = c
                if best is None:
                    continue
                P[(u, v)] = best
                reach = (d_iv + 2 * best[0]) * inv_me
                if reach < T[v]:
                    T[v] = reach
                    A[v] = i
                    rec[v] = ("edge", u)

        frozen = list(T)
        edge_rec = list(rec)
        for v in range(n):
            if frozen[v] == INF or arr[v] == INF:
                continue
            base = max(frozen[v], arr[v])
            for u in range(n):
                d = dist(v, u)
                if d == INF:
                    continue
                cand = base + d / me.velocity
                if cand < T[u]:
                    T[u] = cand
                    A[u] = i
                    rec[u] = ("walk", v)

        tables.T.append(T)
        tables.A.append(A)
        tables.P.append(P)
        tables.record.append(rec)
        tables.edge_record.append(edge_rec)
    return tables


class _Retrace:
    """Rebuilds a handover list from the DP records."""

    def __init__(self, instance: Instance, tables: DpTables):
        self.graph = instance.graph
        self.source = instance.source
        self.tb = tables

    def _id(self, row: int) -> int:
        return self.tb.agents[row - 1].id

    def to_node(self, i: int, v: int, rec=None) -> List[tuple]:
        if i == 0:
            assert v == self.source
            return []
        rec = rec or self.tb.record[i][v]
        kind = rec[0]
        if kind == "copy":
            return self.to_node(i - 1, v)
        if kind == "edge":
            return self.to_edge_point(i, rec[1], v) + [(self._id(i), NodePoint(v))]
        w = rec[1]
        at_w = self.tb.edge_record[i][w]
        if at_w[0] == "edge":
            return self.to_edge_point(i, at_w[1], w) + [(self._id(i), NodePoint(v))]
        return self.to_node(i - 1, w) + [(self._id(i), NodePoint(v))]

    def to_edge_point(self, i: int, u: int, v: int) -> List[tuple]:
        """Handovers bringing the package to agent ``i``'s in-edge pick-up on (u, v)."""
        x, j, kind = self.tb.P[i][(u, v)]
        point = point_on_edge(self.graph, v, u, x)
        if kind == "u":
            h = self.to_node(i - 1, u)
            if h and h[-1][0] == self._id(j):
                h[-1] = (self._id(j), point)
            else:
                h.append((self._id(j), point))
            return h
        return self.to_edge_point(j, u, v) + [(self._id(j), point)]


def fast_tables(instance: Instance, dist: Optional[DistanceMatrix] = None, in_edge: bool = True) -> DpTables:
    dist = dist if dist is not None else apsp(instance.graph)
    return _rows(prune_collocated(instance), dist, in_edge)


def solve_fast(instance: Instance, dist: Optional[DistanceMatrix] = None, in_edge: bool = True) -> Tuple[Schedule, ObjectiveReport]:
    """Minimum-time schedule. ``in_edge=False`` disables in-edge pick-ups (regression checks only)."""
    dist = dist if dist is not None else apsp(instance.graph)
    s, t = instance.source, instance.target
    if dist(s, t) == INF:
        raise Infeasible("target unreachable from source")
    if all(dist(a.start, s) == INF for a in instance.agents):
        raise Infeasible("no agent can reach the source")
    if s == t:
        return trivial_result(instance)
    pruned = prune_collocated(instance)
    tables = _rows(pruned, dist, in_edge)
    k = len(tables.agents)
    best = tables.T[k][t]
    if best == INF:
        raise Infeasible("package cannot reach the target")
    handovers = _Retrace(pruned, tables).to_node(k, t)
    schedule, report = evaluate_schedule(instance, handovers, dist)
    assert report.delivery_time == best, (report.delivery_time, best)
    return schedule, report
