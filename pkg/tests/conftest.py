from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from fastdelivery.model import NodePoint, make_instance

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def two_leg():
    """Agent 0 (w=4, v=2) walks 3 to s and carries 3 to q; agent 1 (w=2, v=3) walks 12 to q
    and carries 12 to t.  Nodes: 0 = p0, 1 = s, 2 = q, 3 = t, 4 = p1."""
    inst = make_instance(5, [(0, 1, 3), (1, 2, 3), (2, 3, 12), (4, 2, 12)],
                         [(0, 4, 2), (4, 2, 3)], source=1, target=3)
    return inst, [(0, NodePoint(2)), (1, NodePoint(3))]


@pytest.fixture
def two_leg_combined():
    """Agent 0 (w=2, v=1): approach 3, carry 3/2.  Agent 1 (w=2, v=3): approach 27/2, carry 27/2."""
    inst = make_instance(5, [(0, 1, 3), (1, 2, F(3, 2)), (2, 3, F(27, 2)), (4, 2, F(27, 2))],
                         [(0, 2, 1), (4, 2, 3)], source=1, target=3)
    return inst, [(0, NodePoint(2)), (1, NodePoint(3))]


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line, print it, then assert it."""

    def record(number, name, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else "")
        _CRITERIA.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda l: int(l.split()[1].rstrip(":").rstrip("ab"))):
            terminalreporter.write_line(line)
