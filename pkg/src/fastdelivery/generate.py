"""Seeded random instances for tests and experiments."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .errors import BadParameters
from .model import Agent, Graph, Instance


def gen_random(kind: str, n: int, k: int, seed: int, uniform: bool = False,
               max_length: int = 20, max_weight: int = 8, max_velocity: int = 8,
               extra_edges: Optional[int] = None) -> Instance:
    """Deterministic instance from ``seed``.

    ``kind`` is "path" (nodes 0..n-1 in a row) or "graph" (random spanning tree plus
    extra edges).  Lengths are integers in [1, max_length], weights in [0, max_weight],
    velocities in {1..max_velocity} (all 1 when ``uniform``).
    """
    if kind not in ("path", "graph"):
        raise BadParameters(f"kind must be 'path' or 'graph', got {kind!r}")
    if n < 1 or k < 1:
        raise BadParameters("need n >= 1 and k >= 1")
    rng = random.Random(seed)
    edges = {}
    if kind == "path":
        for v in range(n - 1):
            edges[(v, v + 1)] = rng.randint(1, max_length)
    else:
        for v in range(1, n):
            u = rng.randrange(v)
            edges[(u, v)] = rng.randint(1, max_length)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
        rng.shuffle(pairs)
        extra = rng.randint(0, len(pairs)) if extra_edges is None else min(extra_edges, len(pairs))
        for u, v in pairs[:extra]:
            edges[(u, v)] = rng.randint(1, max_length)
    graph = Graph(n, tuple((u, v, Fraction(l)) for (u, v), l in sorted(edges.items())))
    agents = tuple(
        Agent(i, rng.randrange(n), Fraction(rng.randint(0, max_weight)),
              Fraction(1 if uniform else rng.randint(1, max_velocity)))
        for i in range(k)
    )
    s = rng.randrange(n)
    t = rng.randrange(n)
    if n > 1:
        while t == s:
            t = rng.randrange(n)
    return Instance(graph, agents, s, t)
