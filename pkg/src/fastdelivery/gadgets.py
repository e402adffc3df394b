"""Planar 3SAT formulas turned into delivery instances, and back.

The fastest delivery of a gadget instance takes 32x^2y^2 for x variables and y
clauses.  It spends exactly 2xy energy if and only if the formula is satisfiable,
and then the package path spells out a satisfying assignment.

Layout: s, u_1..u_{x+1} on a spine, u and t hanging off u_{x+1}.  Between u_j and
u_{j+1} run two paths of 2y-1 internal nodes each.  Odd internal nodes have a side
edge to a clause node or to a private helper node.  The path whose side edges
lead to clauses containing the positive literal u_j is the false path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import MalformedFormula, NotExtremalSchedule, UnsatisfiedAssignment
from .model import Agent, Graph, Instance, NodePoint, Schedule
from .schedule import check_epsilon, evaluate_schedule, validate_schedule

SLOW = "slow"            # velocity 1, weight 0
FAST = "fast"            # velocity 2, weight 1
VERY_FAST = "very_fast"  # velocity 8, weight 0
_KINDS = {SLOW: (0, 1), FAST: (1, 2), VERY_FAST: (0, 8)}  # kind -> (weight, velocity)

Literal = int  # +j for u_j, -j for its negation (variables are 1-based)


@dataclass(frozen=True)
class EmbeddedFormula:
    """CNF with a plane embedding given as ordered clause lists per variable side.

    ``inside[j-1]`` and ``outside[j-1]`` list clause indices (0-based) attached to
    variable j on either side of the variable cycle.  Each side holds a single
    polarity of that variable.
    """

    x: int
    clauses: Tuple[Tuple[Literal, ...], ...]
    inside: Tuple[Tuple[int, ...], ...]
    outside: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        object.__setattr__(self, "inside", tuple(tuple(c) for c in self.inside))
        object.__setattr__(self, "outside", tuple(tuple(c) for c in self.outside))
        self._check()

    @property
    def y(self) -> int:
        return len(self.clauses)

    def _check(self):
        x = self.x
        if not isinstance(x, int) or x < 1:
            raise MalformedFormula("need at least one variable")
        if not self.clauses:
            raise MalformedFormula("need at least one clause")
        for i, c in enumerate(self.clauses):
            if not 1 <= len(c) <= 3:
                raise MalformedFormula(f"clause {i} must have 1 to 3 literals")
            vs = [abs(l) for l in c]
            if any(not isinstance(l, int) or l == 0 or abs(l) > x for l in c):
                raise MalformedFormula(f"clause {i} has a literal outside 1..{x}")
            if len(set(vs)) != len(vs):
                raise MalformedFormula(f"clause {i} mentions a variable twice")
        if len(self.inside) != x or len(self.outside) != x:
            raise MalformedFormula("embedding needs one inside and one outside list per variable")
        for j in range(1, x + 1):
            lists = (self.inside[j - 1], self.outside[j - 1])
            listed = [i for side in lists for i in side]
            want = sorted(i for i, c in enumerate(self.clauses) if j in c or -j in c)
            if sorted(listed) != want:
                raise MalformedFormula(f"variable {j}: embedding lists do not match its clauses")
            signs = []
            for side in lists:
                pol = {j in self.clauses[i] for i in side}
                if len(pol) > 1:
                    raise MalformedFormula(f"variable {j}: one side mixes both polarities")
                signs.append(pol.pop() if pol else None)
            if signs[0] is not None and signs[0] == signs[1]:
                raise MalformedFormula(f"variable {j}: both sides carry the same polarity")

    def side_lists(self, j: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """(clauses with u_j, clauses with not u_j), in embedding order."""
        pos, neg = (), ()
        for side in (self.inside[j - 1], self.outside[j - 1]):
            if side and j in self.clauses[side[0]]:
                pos = side
            elif side:
                neg = side
        return pos, neg

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def default_embedding(x: int, clauses: Sequence[Sequence[Literal]]) -> EmbeddedFormula:
    """Positive occurrences inside, negative outside, both in clause order."""
    inside = [[i for i, c in enumerate(clauses) if j in c] for j in range(1, x + 1)]
    outside = [[i for i, c in enumerate(clauses) if -j in c] for j in range(1, x + 1)]
    return EmbeddedFormula(x, tuple(tuple(c) for c in clauses), tuple(map(tuple, inside)), tuple(map(tuple, outside)))


Role = Tuple  # ("s",) ("t",) ("u",) ("var", j) ("clause", i) ("path", j, value, index) ("helper", j, value, l)


@dataclass(frozen=True)
class GadgetInstance:
    formula: EmbeddedFormula
    instance: Instance
    roles: Tuple[Role, ...]        # role of every node
    kinds: Dict[int, str]          # agent id -> SLOW / FAST / VERY_FAST
    path_nodes: Dict[Tuple[int, bool], Tuple[int, ...]]  # (j, value) -> internal nodes left to right
    side_agent: Dict[Tuple[int, bool, int], Tuple[int, ...]]  # (j, value, l) -> candidate slow agents

    @property
    def target_time(self) -> Fraction:
        x, y = self.formula.x, self.formula.y
        return Fraction(32 * x * x * y * y)

    @property
    def target_energy(self) -> Fraction:
        return Fraction(2 * self.formula.x * self.formula.y)

    def node(self, role: Role) -> int:
        return self.roles.index(role)


def attach_length(x: int, y: int, j: int, l: int) -> int:
    """Side edge of the l-th odd node on a path of variable j: a slow agent starting
    at its far end arrives exactly when the package does."""
    return 12 * x * x * y * y + (j - 1) * 4 * x * y * y + (l - 1) * 4 * x * y + 1


def build_delivery_instance(formula: EmbeddedFormula) -> GadgetInstance:
    x, y = formula.x, formula.y
    roles: List[Role] = [("s",)] + [("var", j) for j in range(1, x + 2)] + [("u",), ("t",)]
    roles += [("clause", i) for i in range(y)]
    s, u, t = 0, x + 2, x + 3
    var = lambda j: j
    clause = lambda i: x + 4 + i
    edges: List[Tuple[int, int, int]] = [(s, var(1), 12 * x * x * y * y),
                                         (var(x + 1), u, 128 * x * x * y * y),
                                         (var(x + 1), t, 128 * x * x * y * y)]
    roster: List[Tuple[int, str]] = [(s, SLOW), (u, VERY_FAST)] + [(var(j), FAST) for j in range(1, x + 1)]
    path_nodes: Dict[Tuple[int, bool], Tuple[int, ...]] = {}
    attach: List[Tuple[int, bool, int, int]] = []  # (j, value, l, helper node)
    clause_hits: Dict[int, List[Tuple[int, bool, int]]] = {i: [] for i in range(y)}

    for j in range(1, x + 1):
        pos, neg = formula.side_lists(j)
        for value, hosted in ((False, pos), (True, neg)):
            inner = []
            for idx in range(1, 2 * y):
                inner.append(len(roles))
                roles.append(("path", j, value, idx))
            path_nodes[(j, value)] = tuple(inner)
            chain = [var(j)] + inner + [var(j + 1)]
            for e in range(2 * y):
                edges.append((chain[e], chain[e + 1], 2 if e % 2 == 0 else 4 * x * y - 1))
            for idx in range(2, 2 * y, 2):
                roster.append((inner[idx - 1], FAST))
            for l in range(1, y + 1):
                node = inner[2 * l - 2]
                length = attach_length(x, y, j, l)
                if l <= len(hosted):
                    edges.append((node, clause(hosted[l - 1]), length))
                    clause_hits[hosted[l - 1]].append((j, value, l))
                else:
                    helper = len(roles)
                    roles.append(("helper", j, value, l))
                    edges.append((node, helper, length))
                    attach.append((j, value, l, helper))

    side_agent: Dict[Tuple[int, bool, int], Tuple[int, ...]] = {}
    for i in range(y):
        ids = []
        for _ in range(len(formula.clauses[i]) - 1):
            ids.append(len(roster))
            roster.append((clause(i), SLOW))
        for key in clause_hits[i]:
            side_agent[key] = tuple(ids)
    for j, value, l, helper in attach:
        side_agent[(j, value, l)] = (len(roster),)
        roster.append((helper, SLOW))

    graph = Graph(len(roles), tuple((a, b, Fraction(w)) for a, b, w in edges))
    agents = tuple(Agent(i, p, Fraction(_KINDS[k][0]), Fraction(_KINDS[k][1])) for i, (p, k) in enumerate(roster))
    kinds = {i: k for i, (_, k) in enumerate(roster)}
    inst = Instance(graph, agents, s, t)
    assert len(agents) == 4 * x * y - x - y + 2
    return GadgetInstance(formula, inst, tuple(roles), kinds, path_nodes, side_agent)


Assignment = Union[Sequence[bool], Mapping[int, bool]]


def _as_tuple(formula: EmbeddedFormula, assignment: Assignment) -> Tuple[bool, ...]:
    if isinstance(assignment, Mapping):
        if sorted(assignment) != list(range(1, formula.x + 1)):
            raise UnsatisfiedAssignment(f"assignment must give every variable 1..{formula.x}")
        return tuple(bool(assignment[j]) for j in range(1, formula.x + 1))
    vals = tuple(bool(v) for v in assignment)
    if len(vals) != formula.x:
        raise UnsatisfiedAssignment(f"assignment must give {formula.x} values")
    return vals


def assignment_handovers(gadget: GadgetInstance, assignment: Assignment) -> List[Tuple[int, NodePoint]]:
    formula = gadget.formula
    vals = _as_tuple(formula, assignment)
    if not formula.satisfied_by(vals):
        raise UnsatisfiedAssignment("assignment leaves a clause unsatisfied")
    inst = gadget.instance
    at = {a.start: a.id for a in inst.agents if gadget.kinds[a.id] == FAST}
    used: Dict[int, int] = {}  # slow agent -> already sent
    hand: List[Tuple[int, NodePoint]] = [(0, NodePoint(gadget.node(("var", 1))))]
    for j in range(1, formula.x + 1):
        inner = gadget.path_nodes[(j, vals[j - 1])]
        chain = [gadget.node(("var", j))] + list(inner) + [gadget.node(("var", j + 1))]
        for l in range(1, formula.y + 1):
            left, odd, right = chain[2 * l - 2], chain[2 * l - 1], chain[2 * l]
            hand.append((at[left], NodePoint(odd)))
            free = [a for a in gadget.side_agent[(j, vals[j - 1], l)] if a not in used]
            assert free, "a satisfying assignment never runs out of clause agents"
            used[free[0]] = 1
            hand.append((free[0], NodePoint(right)))
    very_fast = next(i for i, k in gadget.kinds.items() if k == VERY_FAST)
    hand.append((very_fast, NodePoint(inst.target)))
    return hand


def assignment_to_schedule(gadget: GadgetInstance, assignment: Assignment) -> Schedule:
    schedule, _ = evaluate_schedule(gadget.instance, assignment_handovers(gadget, assignment))
    return schedule


def _path_of(gadget: GadgetInstance, point) -> Optional[Tuple[int, bool]]:
    nodes = [point.node] if isinstance(point, NodePoint) else [point.u, point.v]
    for v in nodes:
        role = gadget.roles[v]
        if role[0] == "path":
            return role[1], role[2]
    return None


def schedule_to_assignment(gadget: GadgetInstance, schedule: Schedule) -> Tuple[bool, ...]:
    inst = gadget.instance
    if validate_schedule(inst, schedule):
        raise NotExtremalSchedule("schedule is not valid for this instance")
    _, report = evaluate_schedule(inst, schedule.handovers())
    if report.lex != (gadget.target_time, gadget.target_energy):
        raise NotExtremalSchedule(
            f"schedule has (T, E) = ({report.delivery_time}, {report.energy}), "
            f"not ({gadget.target_time}, {gadget.target_energy})")
    seen: Dict[int, set] = {j: set() for j in range(1, gadget.formula.x + 1)}
    for leg in schedule.legs:
        for p in (leg.pickup, leg.dropoff):
            hit = _path_of(gadget, p)
            if hit is not None:
                seen[hit[0]].add(hit[1])
    if any(len(v) != 1 for v in seen.values()):
        raise NotExtremalSchedule("package does not use exactly one path per variable")
    vals = tuple(seen[j].pop() for j in range(1, gadget.formula.x + 1))
    if not gadget.formula.satisfied_by(vals):  # impossible for an extremal schedule
        raise NotExtremalSchedule("schedule does not encode a satisfying assignment")
    return vals


def scale_for_combined(gadget: GadgetInstance, epsilon) -> Instance:
    """Same instance with every weight multiplied by epsilon/8."""
    eps = check_epsilon(epsilon)
    f = eps / 8
    inst = gadget.instance
    return inst.with_agents(Agent(a.id, a.start, a.weight * f, a.velocity) for a in inst.agents)
