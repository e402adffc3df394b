"""Instance model: exact scalars, graphs, points on edges, agents, schedules."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .errors import InputError, UnknownAgent

Rational = Fraction
# Disconnected pairs; compares correctly against Fraction and is never used in arithmetic results.
INF = float("inf")


def as_rational(value) -> Fraction:
    """Parse an int, Fraction or "num/den" string exactly. Floats are refused."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Graph:
    node_count: int
    edges: Tuple[Tuple[int, int, Fraction], ...]
    _lengths: Dict[Tuple[int, int], Fraction] = field(init=False, repr=False, compare=False)
    _adj: Tuple[Tuple[Tuple[int, Fraction], ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.node_count < 1:
            raise InputError("graph needs at least one node")
        canon = []
        lengths = {}
        adj: List[List[Tuple[int, Fraction]]] = [[] for _ in range(self.node_count)]
        for u, v, length in self.edges:
            length = as_rational(length)
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InputError(f"edge ({u},{v}) references an unknown node")
            if u == v:
                raise InputError(f"self-loop at node {u}")
            if length <= 0:
                raise InputError(f"edge ({u},{v}) has non-positive length")
            u, v = min(u, v), max(u, v)
            if (u, v) in lengths:
                raise InputError(f"parallel edge ({u},{v})")
            lengths[(u, v)] = length
            canon.append((u, v, length))
            adj[u].append((v, length))
            adj[v].append((u, length))
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "_lengths", lengths)
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))

    def length(self, u: int, v: int) -> Fraction:
        return self._lengths[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._lengths

    def neighbors(self, v: int) -> Tuple[Tuple[int, Fraction], ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])


@dataclass(frozen=True, order=True)
class NodePoint:
    node: int

    def __str__(self):
        return f"node {self.node}"


@dataclass(frozen=True, order=True)
class EdgePoint:
    """Interior point of edge {u, v} with u < v, at distance ``offset`` from u."""

    u: int
    v: int
    offset: Fraction

    def __str__(self):
        return f"edge ({self.u},{self.v}) @ {format_rational(self.offset)}"


GraphPoint = Union[NodePoint, EdgePoint]


def point_on_edge(graph: Graph, a: int, b: int, dist_from_a) -> GraphPoint:
    """Canonical point at distance ``dist_from_a`` from ``a`` along edge {a, b}."""
    length = graph.length(a, b)
    d = as_rational(dist_from_a)
    if d < 0 or d > length:
        raise InputError(f"offset {d} outside edge ({a},{b}) of length {length}")
    if d == 0:
        return NodePoint(a)
    if d == length:
        return NodePoint(b)
    if a < b:
        return EdgePoint(a, b, d)
    return EdgePoint(b, a, length - d)


def check_point(graph: Graph, p: GraphPoint) -> None:
    if isinstance(p, NodePoint):
        if not 0 <= p.node < graph.node_count:
            raise InputError(f"unknown node {p.node}")
        return
    if not (p.u < p.v and graph.has_edge(p.u, p.v)):
        raise InputError(f"{p} is not on a canonical edge")
    if not 0 < p.offset < graph.length(p.u, p.v):
        raise InputError(f"{p} is not strictly inside its edge")


@dataclass(frozen=True)
class Agent:
    id: int
    start: int
    weight: Fraction
    velocity: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", as_rational(self.weight))
        object.__setattr__(self, "velocity", as_rational(self.velocity))
        if self.weight < 0:
            raise InputError(f"agent {self.id}: negative weight")
        if self.velocity <= 0:
            raise InputError(f"agent {self.id}: velocity must be positive and finite")


@dataclass(frozen=True)
class Instance:
    graph: Graph
    agents: Tuple[Agent, ...]
    source: int
    target: int

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        n = self.graph.node_count
        if not (0 <= self.source < n and 0 <= self.target < n):
            raise InputError("source/target outside the graph")
        if not self.agents:
            raise InputError("instance needs at least one agent")
        ids = [a.id for a in self.agents]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate agent ids")
        for a in self.agents:
            if not 0 <= a.start < n:
                raise InputError(f"agent {a.id} starts outside the graph")

    def agent(self, agent_id: int) -> Agent:
        for a in self.agents:
            if a.id == agent_id:
                return a
        raise UnknownAgent(f"no agent with id {agent_id}")

    def with_agents(self, agents) -> "Instance":
        return Instance(self.graph, tuple(agents), self.source, self.target)


def make_instance(node_count: int, edges, agents, source: int, target: int) -> Instance:
    """Convenience constructor; ``agents`` are (start, weight, velocity) triples, ids by position."""
    graph = Graph(node_count, tuple((u, v, as_rational(l)) for u, v, l in edges))
    roster = tuple(Agent(i, p, as_rational(w), as_rational(vel)) for i, (p, w, vel) in enumerate(agents))
    return Instance(graph, roster, source, target)


@dataclass(frozen=True)
class Leg:
    agent: int
    pickup: GraphPoint
    dropoff: GraphPoint
    pickup_time: Fraction
    dropoff_time: Fraction
    approach_distance: Fraction
    carry_distance: Fraction


@dataclass(frozen=True)
class ObjectiveReport:
    delivery_time: Fraction
    energy: Fraction
    combined_value: Optional[Fraction] = None

    @property
    def lex(self) -> Tuple[Fraction, Fraction]:
        return (self.delivery_time, self.energy)


@dataclass(frozen=True)
class Schedule:
    legs: Tuple[Leg, ...]

    def handovers(self) -> List[Tuple[int, GraphPoint]]:
        return [(leg.agent, leg.dropoff) for leg in self.legs]

    @property
    def agents(self) -> List[int]:
        return [leg.agent for leg in self.legs]


EMPTY_SCHEDULE = Schedule(())


@dataclass(frozen=True)
class LineAgent:
    id: int
    position: Fraction
    weight: Fraction
    velocity: Fraction


@dataclass(frozen=True)
class LineInstance:
    """A path instance laid on the real line with s = 0 < t; agents sorted by position."""

    t: Fraction
    agents: Tuple[LineAgent, ...]
    coords: Tuple[Fraction, ...] = ()  # coordinate of every graph node, when built from a graph
