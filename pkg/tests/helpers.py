"""Seeded instance families shared by the test modules."""
import random
from fractions import Fraction as F
from math import lcm

from fastdelivery.generate import gen_random
from fastdelivery.model import EdgePoint, LineAgent, LineInstance

REFINEMENTS = (1, 2, 4, 8, 16, 32, 64)


def small_graph(seed, uniform=False):
    """n in 2..6, k in 1..4, cycling with the seed."""
    return gen_random("graph", 2 + seed % 5, 1 + seed % 4, seed, uniform=uniform)


def random_line(rng, k_max=6):
    k = rng.randint(1, k_max)
    t = F(rng.randint(1, 20))
    vs = rng.choice([[1], [1, 2], [1, 2, 3], list(range(1, 9))])
    agents = [LineAgent(i, F(rng.randint(-16, 56), 2), F(rng.randint(0, 8)), F(rng.choice(vs)))
              for i in range(k)]
    agents.sort(key=lambda a: (a.position, a.id))
    return LineInstance(t, tuple(agents))


def line_family(k, seed=0):
    """Synthetic family for timing: positions spread over [-k/8, 4k], t = 2k."""
    rng = random.Random(seed)
    agents = [LineAgent(i, F(rng.randint(-k // 8, 4 * k)), F(rng.randint(0, 8)), F(rng.randint(1, 8)))
              for i in range(k)]
    agents.sort(key=lambda a: (a.position, a.id))
    return LineInstance(F(2 * k), tuple(agents))


def matched_refinement(instance, schedule):
    """Smallest D whose subdivision contains every interior hand-over point of the schedule."""
    D = 1
    for _, p in schedule.handovers():
        if isinstance(p, EdgePoint):
            D = lcm(D, (p.offset / instance.graph.length(p.u, p.v)).denominator)
    return D


# A three-agent line where the only optimum uses both agents beyond t: the first agent
# walks 2 and carries 1, the second walks 3 and carries 1, the third walks 4 and carries 1.
FIG6_LINE = LineInstance(F(3), (LineAgent(1, F(2), F(5), F(1)),
                                LineAgent(2, F(4), F(1), F(1)),
                                LineAgent(3, F(6), F(0), F(1))))
