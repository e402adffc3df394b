"""Exact shortest-path distances between nodes and between points on edges."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .model import INF, EdgePoint, Graph, GraphPoint, NodePoint

Distance = Union[Fraction, float]  # float only ever as INF


def dijkstra(graph: Graph, sources: Sequence[Tuple[int, Fraction]]) -> List[Distance]:
    """Multi-source label-setting shortest paths with exact keys.

    ``sources`` holds (node, initial label) pairs.
    """
    dist: List[Distance] = [INF] * graph.node_count
    heap = []
    for node, label in sources:
        if label < dist[node]:
            dist[node] = label
            heap.append((label, node))
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, length in graph.neighbors(u):
            nd = d + length
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@dataclass(frozen=True)
class DistanceMatrix:
    rows: Tuple[Tuple[Distance, ...], ...]

    def __call__(self, u: int, v: int) -> Distance:
        return self.rows[u][v]

    def __len__(self):
        return len(self.rows)


def apsp(graph: Graph) -> DistanceMatrix:
    return DistanceMatrix(tuple(tuple(dijkstra(graph, [(s, Fraction(0))])) for s in range(graph.node_count)))


def _anchors(graph: Graph, p: GraphPoint):
    """(node, distance from p to node along p's own edge) for routing out of p."""
    if isinstance(p, NodePoint):
        return ((p.node, Fraction(0)),)
    length = graph.length(p.u, p.v)
    return ((p.u, p.offset), (p.v, length - p.offset))


def point_distance(graph: Graph, dist: DistanceMatrix, a: GraphPoint, b: GraphPoint) -> Distance:
    best: Distance = INF
    if isinstance(a, EdgePoint) and isinstance(b, EdgePoint) and (a.u, a.v) == (b.u, b.v):
        best = abs(a.offset - b.offset)
    elif isinstance(a, EdgePoint) and isinstance(b, NodePoint) and b.node in (a.u, a.v):
        best = a.offset if b.node == a.u else graph.length(a.u, a.v) - a.offset
    elif isinstance(b, EdgePoint) and isinstance(a, NodePoint) and a.node in (b.u, b.v):
        best = b.offset if a.node == b.u else graph.length(b.u, b.v) - b.offset
    for x, dx in _anchors(graph, a):
        for y, dy in _anchors(graph, b):
            d = dist(x, y)
            if d == INF:
                continue
            cand = dx + d + dy
            if cand < best:
                best = cand
    return best


def node_to_point(graph: Graph, dist: DistanceMatrix, node: int, p: GraphPoint) -> Distance:
    return point_distance(graph, dist, NodePoint(node), p)


def is_connected(dist: DistanceMatrix, u: int, v: int) -> bool:
    return dist(u, v) != INF
