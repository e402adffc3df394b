"""Upper envelopes of lines and rays, and a sliding-window lower envelope.

LineSet keeps its lines in buckets of sizes 2^j, each a static upper hull; an
insertion merges equal-sized buckets (logarithmic method), so an insert costs
O(log^2 k) amortized and a query O(log^2 k).  MinWindow answers "lowest line at x"
over a window of consecutively pushed lines using hulls cached on aligned blocks.

Tie rules, shared with the naive scans below:
  upper: largest value, then largest slope, then lowest owner
  lower: smallest value, then smallest slope, then lowest owner
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DuplicateEntry, EmptySet, EmptyWindow
from .model import INF, as_rational


@dataclass(frozen=True, order=True)
class Line:
    a: Fraction
    b: Fraction
    owner: int

    def at(self, x) -> Fraction:
        return self.a * x + self.b


@dataclass(frozen=True)
class Ray:
    """Line restricted to x >= start."""

    a: Fraction
    b: Fraction
    owner: int
    start: Fraction = Fraction(0)

    def at(self, x) -> Fraction:
        return self.a * x + self.b


def _cross(l1, l2) -> Fraction:
    return (l2.b - l1.b) / (l1.a - l2.a)


def _upper_key(line):
    return (line.a, line.b, -line.owner)


class _Hull:
    """Static upper envelope of a set of lines."""

    def __init__(self, lines: Sequence[Line]):
        self.lines = list(lines)
        hull: List[Line] = []
        for ln in sorted(lines, key=lambda l: (l.a, -l.b, l.owner)):
            if hull and hull[-1].a == ln.a:
                continue  # same slope: the first one kept is higher, or equal with lower owner
            while len(hull) >= 2 and _cross(hull[-2], ln) <= _cross(hull[-2], hull[-1]):
                hull.pop()
            hull.append(ln)
        self.hull = hull
        self.bps = [_cross(hull[i - 1], hull[i]) for i in range(1, len(hull))]

    def line_at(self, x) -> Line:
        return self.hull[bisect_right(self.bps, x)]

    def first_reach(self, m, c):
        """Smallest x > 0 with env(x) + m*x = c, given env(0) + m*0 < c; INF if none."""
        g = lambda i, x: self.hull[i].at(x) + m * x
        j = bisect_right(self.bps, 0)
        lo, hi = j, len(self.bps)
        while lo < hi:  # first breakpoint index q >= j with g(bp_q) >= c
            mid = (lo + hi) // 2
            if g(mid, self.bps[mid]) >= c:
                hi = mid
            else:
                lo = mid + 1
        ln = self.hull[lo]
        if ln.a + m <= 0:
            return INF
        return (c - ln.b) / (ln.a + m)

    def sublevel(self, m, c):
        """Interval {x >= 0 : env(x) + m*x <= c} as (lo, hi), hi may be INF; None if empty."""
        j = bisect_right(self.bps, 0)
        pieces = [(Fraction(0) if i == j else self.bps[i - 1], self.bps[i] if i < len(self.bps) else INF, self.hull[i])
                  for i in range(j, len(self.hull))]
        lo = hi = None
        for left, right, ln in pieces:
            s = ln.a + m
            # {x in [left, right]: s*x + b <= c}
            if s == 0:
                if ln.b > c:
                    continue
                a_, b_ = left, right
            else:
                r = (c - ln.b) / s
                if s > 0:
                    a_, b_ = left, min(right, r)
                else:
                    a_, b_ = max(left, r), right
            if a_ > b_:
                continue
            lo = a_ if lo is None else lo
            hi = b_
        return None if lo is None else (lo, hi)


class LineSet:
    """Insert-only set of lines with max and leftmost-intersection queries."""

    def __init__(self, lines: Sequence[Tuple] = ()):
        self._keys = set()
        self._buckets: List[_Hull] = []
        for a, b, owner in lines:
            self.insert_line(a, b, owner)

    def __len__(self):
        return len(self._keys)

    @property
    def lines(self) -> List[Line]:
        return [ln for bk in self._buckets for ln in bk.lines]

    def insert_line(self, a, b, owner: int) -> None:
        ln = Line(as_rational(a), as_rational(b), owner)
        key = (ln.a, ln.b, owner)
        if key in self._keys:
            raise DuplicateEntry(f"line {key} already stored")
        self._keys.add(key)
        carry = [ln]
        while self._buckets and len(self._buckets[-1].lines) <= len(carry):
            carry += self._buckets.pop().lines
        self._buckets.append(_Hull(carry))

    def max_at(self, x) -> Tuple[Fraction, int]:
        if not self._buckets:
            raise EmptySet("no lines stored")
        x = as_rational(x)
        best = max((bk.line_at(x) for bk in self._buckets), key=lambda l: (l.at(x), l.a, -l.owner))
        return best.at(x), best.owner

    def leftmost_intersection(self, c, m):
        """First x >= 0 where y = c - m*x meets the upper envelope: (x, y, owner) or None."""
        c, m = as_rational(c), as_rational(m)
        if m <= 0:
            raise ValueError("query slope must be negative (m > 0)")
        if not self._buckets:
            return None
        h0 = self.max_at(0)[0] - c
        if h0 < 0:
            x = min(bk.first_reach(m, c) for bk in self._buckets)
            if x == INF:
                return None
        else:
            lo, hi = Fraction(0), INF
            for bk in self._buckets:
                iv = bk.sublevel(m, c)
                if iv is None:
                    return None
                lo, hi = max(lo, iv[0]), min(hi, iv[1])
            if lo > hi:
                return None
            x = lo
        y, owner = self.max_at(x)
        return x, y, owner

    def segments(self) -> "EnvelopeSegments":
        return build_upper_envelope([Ray(l.a, l.b, l.owner, None) for l in self.lines])


@dataclass(frozen=True)
class Segment:
    owner: int
    a: Fraction
    b: Fraction
    lo: object  # Fraction, or -INF for an unbounded start
    hi: object  # Fraction or INF

    def __str__(self):
        return f"[{self.lo}, {self.hi}) owner={self.owner} y={self.a}*x+{self.b}"


@dataclass(frozen=True)
class EnvelopeSegments:
    segments: Tuple[Segment, ...]

    def at(self, x) -> Tuple[Fraction, int]:
        for sg in self.segments:
            if sg.lo <= x < sg.hi:
                return sg.a * x + sg.b, sg.owner
        raise EmptySet(f"x={x} outside the envelope range")

    def __len__(self):
        return len(self.segments)


def build_upper_envelope(rays: Sequence[Ray]) -> EnvelopeSegments:
    """Ordered segment list of the pointwise maximum of rays.

    Rays with ``start=None`` are full lines.  Between consecutive activation abscissas
    the active set is fixed, so the envelope there is a line hull clipped to the gap.
    """
    if not rays:
        return EnvelopeSegments(())
    starts = sorted({r.start for r in rays if r.start is not None})
    lo0 = -INF if any(r.start is None for r in rays) else starts[0]
    cuts = [lo0] + [x for x in starts if x > lo0] + [INF]
    out: List[Segment] = []
    for left, right in zip(cuts, cuts[1:]):
        active = [Line(r.a, r.b, r.owner) for r in rays if r.start is None or r.start <= left]
        hull = _Hull(active)
        bounds = [-INF] + hull.bps + [INF]
        for i, ln in enumerate(hull.hull):
            lo, hi = max(left, bounds[i]), min(right, bounds[i + 1])
            if lo >= hi:
                continue
            if out and out[-1].owner == ln.owner and (out[-1].a, out[-1].b) == (ln.a, ln.b) and out[-1].hi == lo:
                out[-1] = Segment(ln.owner, ln.a, ln.b, out[-1].lo, hi)
            else:
                out.append(Segment(ln.owner, ln.a, ln.b, lo, hi))
    return EnvelopeSegments(tuple(out))


class _LowerHull:
    """Static lower envelope, stored as the upper envelope of negated lines."""

    def __init__(self, lines: Sequence[Line]):
        self.up = _Hull([Line(-l.a, -l.b, l.owner) for l in lines])

    def line_at(self, x) -> Line:
        ln = self.up.line_at(x)
        return Line(-ln.a, -ln.b, ln.owner)


class MinWindow:
    """Lines pushed with non-decreasing keys; queries range over keys > the advanced bound."""

    def __init__(self):
        self._lines: List[Line] = []
        self._keys: List[Fraction] = []
        self._head = 0
        self._bound = None
        self._cache: Dict[Tuple[int, int], _LowerHull] = {}

    def __len__(self):
        return len(self._lines) - self._head

    def push(self, key, a, b, owner: int) -> None:
        key = as_rational(key)
        if self._keys and key < self._keys[-1]:
            raise ValueError("keys must be pushed in non-decreasing order")
        self._keys.append(key)
        self._lines.append(Line(as_rational(a), as_rational(b), owner))
        if self._bound is not None and key <= self._bound:
            self._head = len(self._lines)  # born outside the window, and so is everything before it

    def advance(self, bound) -> None:
        """Drop every line whose key is <= bound, including ones pushed later."""
        bound = as_rational(bound)
        if self._bound is None or bound > self._bound:
            self._bound = bound
        while self._head < len(self._keys) and self._keys[self._head] <= bound:
            self._head += 1

    def active(self) -> List[Line]:
        return self._lines[self._head:]

    def _block(self, start: int, size: int) -> _LowerHull:
        hull = self._cache.get((start, size))
        if hull is None:
            hull = _LowerHull(self._lines[start:start + size])
            self._cache[(start, size)] = hull
        return hull

    def min_at(self, x) -> Tuple[Fraction, int]:
        lo, hi = self._head, len(self._lines)
        if lo >= hi:
            raise EmptyWindow("window is empty")
        x = as_rational(x)
        best: Optional[Line] = None
        while lo < hi:  # aligned dyadic blocks covering [lo, hi)
            size = 1
            while lo % (2 * size) == 0 and lo + 2 * size <= hi:
                size *= 2
            ln = self._block(lo, size).line_at(x)
            if best is None or (ln.at(x), ln.a, ln.owner) < (best.at(x), best.a, best.owner):
                best = ln
            lo += size
        return best.at(x), best.owner


# naive references with the same tie rules


def naive_max_at(lines: Sequence[Line], x) -> Tuple[Fraction, int]:
    if not lines:
        raise EmptySet("no lines")
    best = max(lines, key=lambda l: (l.at(x), l.a, -l.owner))
    return best.at(x), best.owner


def naive_min_at(lines: Sequence[Line], x) -> Tuple[Fraction, int]:
    if not lines:
        raise EmptyWindow("no lines")
    best = min(lines, key=lambda l: (l.at(x), l.a, l.owner))
    return best.at(x), best.owner


def naive_leftmost_intersection(lines: Sequence[Line], c, m):
    """Same contract as LineSet.leftmost_intersection, by per-line case analysis."""
    if not lines:
        return None
    h = [(l.a + m, l.b - c) for l in lines]  # h_i(x) = s*x + r
    if max(r for _, r in h) < 0:
        roots = [-r / s for s, r in h if s > 0]
        if not roots:
            return None
        x = min(roots)
    else:
        lo, hi = Fraction(0), INF
        for s, r in h:  # {x >= 0 : s*x + r <= 0}
            if s == 0:
                if r > 0:
                    return None
            elif s > 0:
                if r > 0:
                    return None
                hi = min(hi, -r / s)
            else:
                lo = max(lo, -r / s)
        if lo > hi:
            return None
        x = lo
    y, owner = naive_max_at(lines, x)
    return x, y, owner
