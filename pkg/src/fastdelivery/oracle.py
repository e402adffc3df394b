"""Brute-force reference solvers.

They share only the instance model, the metric and the evaluator with the main
solvers, and are exponential on purpose.  Every size guard is a hard error.
"""
from __future__ import annotations

import heapq
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import GuardExceeded, Infeasible, NonUniformVelocities
from .metric import DistanceMatrix, apsp, point_distance
from .model import INF, Agent, Graph, GraphPoint, Instance, LineInstance, NodePoint, ObjectiveReport, point_on_edge
from .schedule import check_epsilon, evaluate_schedule, trivial_result, with_combined

MAX_AGENTS = 6
MAX_NODES = 8
MAX_UNIFORM_AGENTS = 5
MAX_LINE_AGENTS = 6


@dataclass
class OracleResult:
    report: ObjectiveReport
    handovers: List[Tuple[int, GraphPoint]]


@dataclass(frozen=True)
class SubdivisionSpec:
    D: int

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D < 1:
            raise ValueError("refinement D must be a positive integer")


def _guard(instance: Instance, k_max: int = MAX_AGENTS, n_max: int = MAX_NODES):
    if len(instance.agents) > k_max:
        raise GuardExceeded(f"oracle limited to k <= {k_max} agents, got {len(instance.agents)}")
    if instance.graph.node_count > n_max:
        raise GuardExceeded(f"oracle limited to n <= {n_max} nodes, got {instance.graph.node_count}")


def subdivide(graph: Graph, D: int) -> Tuple[Graph, List[GraphPoint]]:
    """Split every edge into D equal parts; original nodes keep their numbers."""
    points: List[GraphPoint] = [NodePoint(v) for v in range(graph.node_count)]
    edges = []
    for u, v, length in graph.edges:
        step = length / D
        prev = u
        for i in range(1, D):
            points.append(point_on_edge(graph, u, v, step * i))
            cur = len(points) - 1
            edges.append((prev, cur, step))
            prev = cur
        edges.append((prev, v, step))
    return Graph(len(points), tuple(edges)), points


def _int_adjacency(sub: Graph):
    """Subdivided graph with lengths scaled to integers; returns (adjacency, scale)."""
    scale = 1
    for _, _, length in sub.edges:
        scale = scale * length.denominator // gcd(scale, length.denominator)
    adj = [[(v, int(length * scale)) for v, length in sub.neighbors(u)] for u in range(sub.node_count)]
    return adj, scale


def _layer(adj, seeds: Sequence[Tuple[int, int]], factor: int):
    """Multi-source Dijkstra in integer time units, keeping the seed each node came from."""
    n = len(adj)
    dist = [INF] * n
    origin = [-1] * n
    for node, label in seeds:
        if label < dist[node]:
            dist[node] = label
            origin[node] = node
    heap = [(dist[v], v) for v in range(n) if dist[v] != INF]
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, length in adj[u]:
            nd = d + length * factor
            if nd < dist[v]:
                dist[v] = nd
                origin[v] = origin[u]
                heapq.heappush(heap, (nd, v))
    return dist, origin


def oracle_fast_subdivided(instance: Instance, D: int, with_schedule: bool = False):
    """Minimum delivery time when handovers may only happen at subdivision nodes.

    Every carrier sequence with strictly increasing velocities is tried; sequences
    sharing a prefix share its layer.  The result upper-bounds the true optimum.
    Arithmetic runs on integers after scaling lengths and times.
    """
    SubdivisionSpec(D)
    _guard(instance)
    s, t = instance.source, instance.target
    base = apsp(instance.graph)
    if base(s, t) == INF or all(base(a.start, s) == INF for a in instance.agents):
        raise Infeasible("no feasible schedule")
    if s == t:
        res = OracleResult(trivial_result(instance)[1], [])
        return res if with_schedule else res.report
    sub, points = subdivide(instance.graph, D)
    adj, scale = _int_adjacency(sub)
    agents = sorted(instance.agents, key=lambda a: (a.velocity, a.id))
    # one time unit is 1/(scale*M); an agent needs M/velocity units per scaled length
    M = 1
    for a in agents:
        M = M * a.velocity.numerator // gcd(M, a.velocity.numerator)
    factor = {a.id: int(M / a.velocity) for a in agents}
    arrive = {a.id: _layer(adj, [(a.start, 0)], factor[a.id])[0] for a in agents}
    best: List = [INF, None]

    def descend(prefix, times, trail):
        # times[w]: earliest package time at w; trail: per layer, the pick-up origin of each node
        if times[t] < best[0]:
            best[0] = times[t]
            best[1] = (list(prefix), list(trail))
        last = prefix[-1]
        for nxt in agents:
            if nxt.velocity <= last.velocity:
                continue
            arr = arrive[nxt.id]
            seeds = [(w, max(times[w], arr[w])) for w in range(len(adj)) if times[w] != INF and arr[w] != INF]
            if not seeds:
                continue
            d, origin = _layer(adj, seeds, factor[nxt.id])
            descend(prefix + [nxt], d, trail + [origin])

    for first in agents:
        a = arrive[first.id][s]
        if a == INF:
            continue
        d, origin = _layer(adj, [(s, a)], factor[first.id])
        descend([first], d, [origin])

    prefix, trail = best[1]
    # walk back: the last carrier brought the package to t from its pick-up node
    drops = [t]
    for origin in reversed(trail[1:]):
        drops.append(origin[drops[-1]])
    drops.reverse()
    handovers = [(a.id, points[w]) for a, w in zip(prefix, drops)]
    _, report = evaluate_schedule(instance, handovers, base)
    assert report.delivery_time == Fraction(best[0], scale * M)
    res = OracleResult(report, handovers)
    return res if with_schedule else res.report


def _pareto(labels):
    """Non-dominated (T, E, parent) labels, sorted by T."""
    labels.sort(key=lambda x: (x[0], x[1]))
    out = []
    for lab in labels:
        if not out or lab[1] < out[-1][1]:
            out.append(lab)
    return out


def oracle_combined(instance: Instance, epsilon, D: int, with_schedule: bool = False):
    """Minimum eps*T + (1-eps)*E over all carrier sequences, handovers on subdivision nodes.

    No velocity ordering is imposed.  Pareto (T, E) labels are kept per node because
    waiting makes the objective non-additive.
    """
    epsilon = check_epsilon(epsilon)
    SubdivisionSpec(D)
    _guard(instance)
    s, t = instance.source, instance.target
    base = apsp(instance.graph)
    if base(s, t) == INF or all(base(a.start, s) == INF for a in instance.agents):
        raise Infeasible("no feasible schedule")
    if s == t:
        rep = trivial_result(instance)[1]
        res = OracleResult(ObjectiveReport(rep.delivery_time, rep.energy, Fraction(0)), [])
        return res if with_schedule else res.report
    sub, points = subdivide(instance.graph, D)
    adj, scale = _int_adjacency(sub)
    N = sub.node_count
    # integer units: time 1/(scale*M), energy 1/(scale*W); value scaled by scale*M*W*den(eps)
    M = W = 1
    for a in instance.agents:
        M = M * a.velocity.numerator // gcd(M, a.velocity.numerator)
        W = W * a.weight.denominator // gcd(W, a.weight.denominator)
    tfac = {a.id: int(M / a.velocity) for a in instance.agents}
    efac = {a.id: int(a.weight * W) for a in instance.agents}
    ea, eb = epsilon.numerator, epsilon.denominator
    sdist = [_layer(adj, [(v, 0)], 1)[0] for v in range(N)]
    best: List = [INF, None]

    def value(lab):
        return ea * W * lab[0] + (eb - ea) * M * lab[1]

    def carry(agent: Agent, entry):
        """entry[w]: Pareto labels of the package waiting at w. Returns labels after agent carries."""
        out: List[List] = [[] for _ in range(N)]
        tf, ef = tfac[agent.id], efac[agent.id]
        row = sdist[agent.start]
        for w in range(N):
            if not entry[w] or row[w] == INF:
                continue
            arr = row[w] * tf
            dw = sdist[w]
            for lab in entry[w]:
                start = max(lab[0], arr)
                energy = lab[1] + row[w] * ef
                for x in range(N):
                    dx = dw[x]
                    if dx == INF:
                        continue
                    nt, ne = start + dx * tf, energy + dx * ef
                    if ea * W * nt + (eb - ea) * M * ne < best[0]:
                        out[x].append((nt, ne, (agent.id, w, lab)))
        return [_pareto(o) for o in out]

    def descend(used, labels):
        for lab in labels[t]:
            v = value(lab)
            if v < best[0]:
                best[0], best[1] = v, lab
        for nxt in instance.agents:
            if nxt.id in used:
                continue
            nl = carry(nxt, labels)
            if any(nl):
                descend(used | {nxt.id}, nl)

    start = [[] for _ in range(N)]
    start[s] = [(0, 0, None)]
    descend(frozenset(), start)

    # unwind parents: each label knows its carrier and pick-up node
    chain = []
    lab, drop = best[1], t
    while lab[2] is not None:
        agent_id, w, prev = lab[2]
        chain.append((agent_id, points[drop]))
        lab, drop = prev, w
    chain.reverse()
    _, report = evaluate_schedule(instance, chain, base)
    report = with_combined(report, epsilon)
    assert report.combined_value == Fraction(best[0], scale * M * W * eb)
    res = OracleResult(report, chain)
    return res if with_schedule else res.report


def oracle_path_lex(line: LineInstance):
    """Exact lexicographic (T, E) on a line by enumerating carrier sequences.

    After the first carrier (who picks up at s), each next carrier takes over either
    where it can first catch the current carrier or at its own start, so hand-over
    points strictly increase.  Returns (T, E, legs) with legs = [(agent, drop position)].
    """
    if len(line.agents) > MAX_LINE_AGENTS:
        raise GuardExceeded(f"line oracle limited to k <= {MAX_LINE_AGENTS}")
    t = line.t
    vmax = max(a.velocity for a in line.agents)
    best = [(INF, INF), None]

    def finish(legs, agent, h, time, energy):
        # agent holds the package at h (picked up at ``time``) and carries it to t
        T = time + abs(t - h) / agent.velocity
        E = energy + agent.weight * abs(t - h)
        if (T, E) < best[0]:
            best[0] = (T, E)
            best[1] = legs + [(agent.id, t)]

    def grow(legs, agent, h, time, energy, used):
        # ``agent`` picked up at h at ``time`` and walks right with it
        if (time + (t - h) / vmax, energy) > best[0]:
            return
        finish(legs, agent, h, time, energy)
        for nxt in line.agents:
            if nxt.id in used:
                continue
            points = set()
            p = nxt.position
            if h < p < t:
                points.add(p)
            # meet the moving package: position h + v*(x - time) against p -/+ u*x
            if p > h:
                x = (p - h + agent.velocity * time) / (agent.velocity + nxt.velocity)
            elif nxt.velocity > agent.velocity:
                x = (h - agent.velocity * time - p) / (nxt.velocity - agent.velocity)
            else:
                x = None
            if x is not None and x >= time:
                m = h + agent.velocity * (x - time)
                if h < m < t:
                    points.add(m)
            for m in sorted(points):
                reach = abs(p - m) / nxt.velocity
                arrive = time + (m - h) / agent.velocity
                start = max(arrive, reach)
                spent = energy + agent.weight * (m - h) + nxt.weight * abs(p - m)
                grow(legs + [(agent.id, m)], nxt, m, start, spent, used | {nxt.id})

    for first in line.agents:
        d = abs(first.position)
        grow([], first, Fraction(0), d / first.velocity, first.weight * d, frozenset({first.id}))
    (T, E), legs = best
    return T, E, legs


def _uniform_points(instance: Instance, dist: DistanceMatrix, delta) -> Dict[int, List[GraphPoint]]:
    """Per agent: points on a shortest s-t path that it reaches no later than a package
    moving without delay.  Interior points are kept only where it arrives exactly on time."""
    g = instance.graph
    s, t = NodePoint(instance.source), NodePoint(instance.target)
    dst = dist(instance.source, instance.target)
    out = {}
    for a in instance.agents:
        pts = set()
        start = NodePoint(a.start)
        for v in range(g.node_count):
            q = NodePoint(v)
            ds = point_distance(g, dist, s, q)
            if ds + point_distance(g, dist, q, t) == dst and point_distance(g, dist, start, q) <= delta + ds:
                pts.add(q)
        for u, v, l in g.edges:
            for y in ((dist(a.start, v) + l - delta - dist(instance.source, u)) / 2 if dist(a.start, v) != INF else None,
                      (delta + dist(instance.source, v) + l - dist(a.start, u)) / 2 if dist(a.start, u) != INF else None):
                # the two ways an agent arriving over the far endpoint can tie with the package
                if y is None or not 0 < y < l:
                    continue
                q = point_on_edge(g, u, v, y)
                ds = point_distance(g, dist, s, q)
                if ds + point_distance(g, dist, q, t) == dst and point_distance(g, dist, start, q) == delta + ds:
                    pts.add(q)
        out[a.id] = sorted(pts, key=lambda q: (point_distance(g, dist, s, q), repr(q)))
    return out


def oracle_uniform_lex(instance: Instance, with_schedule: bool = False):
    """Exact (T, E) for a common velocity: every ordered set of carriers, each taking over
    at one of its candidate points, evaluated by the drop-off recursion."""
    vs = {a.velocity for a in instance.agents}
    if len(vs) != 1:
        raise NonUniformVelocities("agents do not share one velocity")
    if len(instance.agents) > MAX_UNIFORM_AGENTS:
        raise GuardExceeded(f"uniform oracle limited to k <= {MAX_UNIFORM_AGENTS}")
    v = vs.pop()
    g = instance.graph
    dist = apsp(g)
    s, t = instance.source, instance.target
    reach = [dist(a.start, s) for a in instance.agents if dist(a.start, s) != INF]
    if dist(s, t) == INF or not reach:
        raise Infeasible("no feasible schedule")
    if s == t:
        res = OracleResult(trivial_result(instance)[1], [])
        return res if with_schedule else res.report
    delta = min(reach)
    pts = _uniform_points(instance, dist, delta)
    dt = {q: point_distance(g, dist, q, NodePoint(t)) for qs in pts.values() for q in qs}
    ds = {q: point_distance(g, dist, NodePoint(s), q) for qs in pts.values() for q in qs}
    best = [(INF, INF), None]

    def grow(legs, agent, q, time, energy, used):
        # ``agent`` holds the package at q at ``time``; delays can never be recovered
        if time > (delta + ds[q]) / v or energy > best[0][1]:
            return
        T = time + dt[q] / v
        E = energy + agent.weight * dt[q]
        if (T, E) < best[0]:
            best[0], best[1] = (T, E), legs + [(agent.id, NodePoint(t))]
        for nxt in instance.agents:
            if nxt.id in used:
                continue
            for r in pts[nxt.id]:
                if ds[r] <= ds[q]:
                    continue
                d = point_distance(g, dist, q, r)
                appr = point_distance(g, dist, NodePoint(nxt.start), r)
                start = max(time + d / v, appr / v)
                grow(legs + [(agent.id, r)], nxt, r, start, energy + agent.weight * d + nxt.weight * appr,
                     used | {nxt.id})

    for a in instance.agents:
        d = dist(a.start, s)
        if d != INF and NodePoint(s) in pts[a.id]:
            grow([], a, NodePoint(s), d / v, a.weight * d, frozenset({a.id}))
    _, report = evaluate_schedule(instance, best[1], dist)
    assert report.lex == best[0]
    res = OracleResult(report, best[1])
    return res if with_schedule else res.report
