"""Lexicographic (time, energy) delivery on a path.

The path is laid on the line with s = 0 < t.  In the (time, position) plane every
agent's best carrying trajectory is a line; their upper envelope is the fastest
package trajectory.  A time-optimal schedule starts with one agent picking the
package up at s, rides that agent's line until it touches the envelope, then
follows the envelope.  Each straight piece is a phase with a single velocity, and
inside a phase the energy is minimised by a DP over the agents of that velocity.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .envelope import EnvelopeSegments, Line, LineSet, MinWindow, build_upper_envelope, Ray, \
    naive_leftmost_intersection, naive_max_at
from .errors import Infeasible, NotAPath
from .metric import apsp
from .model import (INF, GraphPoint, Instance, LineAgent, LineInstance, NodePoint, ObjectiveReport,
                    Schedule, point_on_edge)
from .schedule import evaluate_schedule, trivial_result

IDLE = -1  # owner of the line y = 0: the package lying at s


def path_order(instance: Instance) -> List[int]:
    """Nodes in path order, or NotAPath."""
    g = instance.graph
    n = g.node_count
    if len(g.edges) != n - 1 or any(g.degree(v) > 2 for v in range(n)):
        raise NotAPath("graph is not a simple path")
    if n == 1:
        return [0]
    ends = [v for v in range(n) if g.degree(v) == 1]
    order, prev = [ends[0]], None
    while len(order) < n:
        nxt = [w for w, _ in g.neighbors(order[-1]) if w != prev]
        if not nxt:
            raise NotAPath("graph is not connected")
        prev = order[-1]
        order.append(nxt[0])
    return order


def path_to_line(instance: Instance) -> LineInstance:
    order = path_order(instance)
    g = instance.graph
    coord = [Fraction(0)] * g.node_count
    for a, b in zip(order, order[1:]):
        coord[b] = coord[a] + g.length(a, b)
    base = coord[instance.source]
    coord = [c - base for c in coord]
    if coord[instance.target] < 0:
        coord = [-c for c in coord]
    agents = sorted((LineAgent(a.id, coord[a.start], a.weight, a.velocity) for a in instance.agents),
                    key=lambda a: (a.position, a.id))
    return LineInstance(coord[instance.target], tuple(agents), tuple(coord))


def line_point(instance: Instance, line: LineInstance, x: Fraction) -> GraphPoint:
    """Graph point at line coordinate x."""
    nodes = sorted(range(len(line.coords)), key=lambda v: line.coords[v])
    keys = [line.coords[v] for v in nodes]
    i = bisect_left(keys, x)
    if i < len(keys) and keys[i] == x:
        return NodePoint(nodes[i])
    a, b = nodes[i - 1], nodes[i]
    return point_on_edge(instance.graph, a, b, x - keys[i - 1])


# -- rays -----------------------------------------------------------------------


@dataclass(frozen=True)
class PathRay:
    """Trajectory of the package once ``owner`` has it: y = slope*(x - x0) + y0 for x >= x0."""

    owner: int
    slope: Fraction
    x0: Fraction
    y0: Fraction
    zero: bool = False  # agent never helps: overtaken by a faster carrier before it gets the package


class _NaiveLines:
    """List-backed stand-in for LineSet, used by the reference solver."""

    def __init__(self):
        self.lines: List[Line] = []

    def insert_line(self, a, b, owner):
        self.lines.append(Line(Fraction(a), Fraction(b), owner))

    def max_at(self, x):
        return naive_max_at(self.lines, x)

    def leftmost_intersection(self, c, m):
        return naive_leftmost_intersection(self.lines, c, m)


def compute_rays(line: LineInstance, naive: bool = False):
    """Rays of all agents; returns (rays, line set holding the envelope lines).

    Agents left of s walk right at full speed, so their whole line is a trajectory.
    Agents right of s are taken left to right; each meets the package where its
    walking line y = p - v*x first hits the current envelope.
    """
    ls = _NaiveLines() if naive else LineSet()
    ls.insert_line(0, 0, IDLE)
    slope = {IDLE: Fraction(0)}
    rays = [PathRay(IDLE, Fraction(0), Fraction(0), Fraction(0))]
    for a in line.agents:
        if a.position < 0:
            ls.insert_line(a.velocity, a.position, a.id)
            slope[a.id] = a.velocity
            rays.append(PathRay(a.id, a.velocity, -a.position / a.velocity, Fraction(0)))
    for a in line.agents:
        if a.position < 0:
            continue
        x, y, owner = ls.leftmost_intersection(a.position, a.velocity)
        if slope[owner] > a.velocity:
            rays.append(PathRay(a.id, a.velocity, x, y, zero=True))
            continue
        ls.insert_line(a.velocity, y - a.velocity * x, a.id)
        slope[a.id] = a.velocity
        rays.append(PathRay(a.id, a.velocity, x, y))
    return rays, ls


# -- phases ---------------------------------------------------------------------


@dataclass(frozen=True)
class Member:
    id: int
    position: Fraction  # start on the line; for an agent walking in from the left, its mirror image
    weight: Fraction


@dataclass
class UniformPhase:
    """Package moves at ``slope`` from (x_in, y_in) until it reaches position y_out."""

    slope: Fraction
    x_in: Fraction
    y_in: Fraction
    y_out: Fraction
    members: List[Member]

    @property
    def delta(self) -> Fraction:
        return self.slope * self.x_in


@dataclass
class LineDpTables:
    members: List[Member]
    q: List[Fraction]
    E: List[Fraction]
    A: List[int]
    how: List[tuple]


@dataclass
class PhaseSolution:
    energy: Fraction
    legs: List[List]  # [agent id, drop position]
    tables: Optional[LineDpTables] = None


def prune_members(members: Sequence[Member]) -> List[Member]:
    """Drop agents dominated by an earlier (closer) agent that is no more expensive."""
    out: List[Member] = []
    for m in sorted(members, key=lambda m: (m.position, m.weight, m.id)):
        if out and m.weight >= out[-1].weight:
            continue
        out.append(m)
    return out


def solve_uniform_line(phase: UniformPhase, naive: bool = False) -> Optional[PhaseSolution]:
    """Minimum energy to move the package through the phase without delaying it.

    Returns None when no agent can take the package at the phase entry.
    E[i] is the least energy to have the package at p_i (on time); A[i] the carrier there.
    """
    ms = prune_members(phase.members)  # the recurrences rely on weights falling left to right
    y_in, delta, tau = phase.y_in, phase.delta, phase.y_out
    if not ms or ms[0].position != y_in + delta:
        return None
    p = [m.position for m in ms]
    w = [m.weight for m in ms]
    q = [(x + y_in - delta) / 2 for x in p]
    k = len(ms)
    E = [2 * delta * w[0]]
    A = [0]
    how = [("entry",)]
    window = MinWindow()
    window.push(p[0], w[0], E[0] - p[0] * w[0], 0)
    back = -1  # rightmost index with p <= q_i
    for i in range(1, k):
        while back + 1 < i and p[back + 1] <= q[i]:
            back += 1
        opts = []
        if back >= 0:
            opts.append((E[back] + (q[i] - p[back]) * w[back] + 2 * (p[i] - q[i]) * w[i], 0, ("2b", back)))
        if naive:
            cs = [(E[j] - (p[j] - q[i]) * w[j], j) for j in range(i) if A[j] == j and q[i] < p[j]]
            if cs:
                v, j = min(cs, key=lambda c: (c[0], w[c[1]], ms[c[1]].id))
                opts.append((v + 2 * (p[i] - q[i]) * w[i], 1, ("2c", j)))
        else:
            window.advance(q[i])
            if len(window):
                v, j = window.min_at(q[i])
                opts.append((v + 2 * (p[i] - q[i]) * w[i], 1, ("2c", j)))
        opts.append((E[i - 1] + (p[i] - p[i - 1]) * w[i - 1], 2, ("1",)))
        best = min(opts, key=lambda o: (o[0], o[1]))
        E.append(best[0])
        how.append(best[2])
        A.append(i if best[1] < 2 else i - 1)
        if A[i] == i and not naive:
            window.push(p[i], w[i], E[i] - p[i] * w[i], i)

    finals = []
    last = bisect_right(p, tau) - 1
    if last >= 0:
        finals.append((E[last] + (tau - p[last]) * w[last], 0, ("stop", last)))
    for j in range(k):
        if A[j] == j and q[j] < tau < p[j]:
            finals.append((E[j] - (p[j] - tau) * w[j], 1, ("back", j)))
    energy, _, end = min(finals, key=lambda o: (o[0], o[1]))
    tables = LineDpTables(ms, q, E, A, how)
    return PhaseSolution(energy, _retrace(tables, end, tau), tables)


def _retrace(tb: LineDpTables, end: tuple, tau: Fraction) -> List[List]:
    """Legs [agent, drop position] realising the chosen final option."""
    p = [m.position for m in tb.members]
    ids = [m.id for m in tb.members]
    # chain back to member 0, then replay forwards
    stack = []
    i = end[1]
    while True:
        stack.append(i)
        h = tb.how[i]
        if h[0] == "entry":
            break
        i = i - 1 if h[0] == "1" else h[1]
    stack.reverse()
    legs = [[ids[0], p[0]]]

    def extend(j, x):
        # package is at p_j with carrier A[j]; move it to x >= p_j using member j
        if tb.A[j] == j:
            legs[-1][1] = x
        elif x > p[j]:
            legs.append([ids[j], x])

    for prev, i in zip(stack, stack[1:]):
        h = tb.how[i]
        if h[0] == "1":
            extend(prev, p[i])
        elif h[0] == "2b":
            extend(prev, tb.q[i])
            legs.append([ids[i], p[i]])
        else:
            legs[-1][1] = tb.q[i]
            legs.append([ids[i], p[i]])
    if end[0] == "stop":
        extend(stack[-1], tau)
    else:
        legs[-1][1] = tau
    return legs


# -- decomposition and recombination --------------------------------------------


@dataclass
class Candidate:
    first: int                    # agent picking the package up at s
    phases: List[UniformPhase]    # the first rides that agent's line, the rest are envelope pieces
    segment: int                  # index of the first envelope piece used


@dataclass
class Decomposition:
    T: Fraction
    rays: List[PathRay]
    segments: List[Tuple[Fraction, Fraction, Fraction, Fraction]]  # slope, x_lo, y_lo, x_hi, clipped to [0, T]
    candidates: List[Candidate]
    envelope: EnvelopeSegments = None


class _Groups:
    """Agents of each velocity, split into walkers from the right and from the left."""

    def __init__(self, line: LineInstance):
        self.right: Dict[Fraction, List[LineAgent]] = {}
        self.left: Dict[Fraction, Dict[Fraction, List[LineAgent]]] = {}
        for a in line.agents:
            if a.position >= 0:
                self.right.setdefault(a.velocity, []).append(a)
            else:
                self.left.setdefault(a.velocity, {}).setdefault(a.position, []).append(a)
        self.keys = {v: [a.position for a in ags] for v, ags in self.right.items()}

    def phase(self, slope, x_in, y_in, y_out) -> UniformPhase:
        delta = slope * x_in
        members = [Member(a.id, y_in + delta, a.weight) for a in self.left.get(slope, {}).get(y_in - delta, [])]
        ags = self.right.get(slope, [])
        keys = self.keys.get(slope, [])
        lo = bisect_left(keys, y_in + delta)
        hi = bisect_left(keys, 2 * y_out - y_in + delta)
        members += [Member(a.id, a.position, a.weight) for a in ags[lo:hi]]
        return UniformPhase(slope, x_in, y_in, y_out, members)


def _clip(env: EnvelopeSegments, T: Fraction, t: Fraction):
    out = []
    for sg in env.segments:
        lo, hi = max(sg.lo, Fraction(0)), min(sg.hi, T)
        if lo >= hi:
            continue
        out.append((sg.a, lo, sg.a * lo + sg.b, hi))
    return out


def decompose(line: LineInstance, naive: bool = False) -> Decomposition:
    rays, ls = compute_rays(line, naive)
    env = build_upper_envelope([Ray(l.a, l.b, l.owner, None) for l in ls.lines])
    t = line.t
    T = None
    for sg in env.segments:
        if sg.hi > 0 and sg.a > 0:
            x = (t - sg.b) / sg.a
            if max(sg.lo, 0) <= x <= sg.hi:
                T = x
                break
    if T is None:
        raise Infeasible("package never reaches t")
    segs = _clip(env, T, t)
    slopes = [s[0] for s in segs]
    groups = _Groups(line)
    cands = []
    for a in line.agents:
        start = abs(a.position) / a.velocity
        j = bisect_right(slopes, a.velocity)  # first piece steeper than this agent
        xv, yv = (segs[j][1], segs[j][2]) if j < len(segs) else (T, t)
        if yv == 0 or a.velocity * (xv - start) != yv:
            continue
        phases = [groups.phase(a.velocity, start, Fraction(0), yv)]
        for slope, x_lo, y_lo, x_hi in segs[j:]:
            y_hi = t if x_hi == T else slope * (x_hi - x_lo) + y_lo
            phases.append(groups.phase(slope, x_lo, y_lo, y_hi))
        cands.append(Candidate(a.id, phases, j))
    return Decomposition(T, rays, segs, cands, env)


def recombine(dec: Decomposition, naive: bool = False):
    """Cheapest candidate; envelope phases are solved once and shared through suffix sums."""
    nseg = len(dec.segments)
    shared: Dict[int, Optional[PhaseSolution]] = {}
    suffix = [Fraction(0)] * (nseg + 1)
    for cand in dec.candidates:
        for idx, ph in zip(range(cand.segment, nseg), cand.phases[1:]):
            if idx not in shared:
                shared[idx] = solve_uniform_line(ph, naive)
    for idx in range(nseg - 1, -1, -1):
        sol = shared.get(idx)
        suffix[idx] = INF if sol is None or suffix[idx + 1] == INF else sol.energy + suffix[idx + 1]
    best = None
    for cand in dec.candidates:
        head = solve_uniform_line(cand.phases[0], naive)
        if head is None or suffix[cand.segment] == INF:
            continue
        total = head.energy + suffix[cand.segment]
        if best is None or total < best[0]:
            best = (total, cand, head)
    if best is None:
        raise Infeasible("no candidate trajectory can be realised")
    total, cand, head = best
    legs = list(head.legs)
    for idx in range(cand.segment, nseg):
        legs += shared[idx].legs
    return total, legs


def solve_line(line: LineInstance, naive: bool = False):
    """(T, E, legs) on a line instance; legs are [agent id, drop position]."""
    dec = decompose(line, naive)
    energy, legs = recombine(dec, naive)
    return dec.T, energy, legs


def solve_path(instance: Instance, naive: bool = False) -> Tuple[Schedule, ObjectiveReport]:
    """Lexicographically minimal (T, E) schedule on a path graph."""
    line = path_to_line(instance)
    dist = apsp(instance.graph)
    s, t = instance.source, instance.target
    if s == t:
        return trivial_result(instance)
    T, energy, legs = solve_line(line, naive)
    handovers = [(aid, line_point(instance, line, x)) for aid, x in legs]
    schedule, report = evaluate_schedule(instance, handovers, dist)
    assert report.lex == (T, energy), (report.lex, T, energy)
    return schedule, report


def dominated_agents(line: LineInstance) -> List[int]:
    """Agents with another agent on the same side of s that is no farther, no slower and no
    more expensive (full ties: the higher id is the dominated one)."""
    out = []
    for b in line.agents:
        for a in line.agents:
            if a.id == b.id or (a.position < 0) != (b.position < 0):
                continue
            key_a = (abs(a.position), -a.velocity, a.weight)
            key_b = (abs(b.position), -b.velocity, b.weight)
            if all(x <= y for x, y in zip(key_a, key_b)) and (key_a != key_b or a.id < b.id):
                out.append(b.id)
                break
    return out


def solve_path_naive(instance: Instance):
    """Reference O(k^2) solver: list scans instead of the envelope structures."""
    return solve_path(instance, naive=True)
