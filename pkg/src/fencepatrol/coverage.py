"""Exact verification of patrolling schedules.

The verifier decides, with rational arithmetic only, whether every position
of the fence is covered at every instant.  A visit interval [a, b] of an
agent with weight T covers the half-open time arc (a, b + T] of the circle
of circumference P (the schedule period), so position x is covered at every
instant iff the union of these arcs over all agents is the full circle.

The decision for all x reduces to finitely many samples.  Coverage arcs at
level x have endpoints that are linear functions of x while x stays inside a
cell that contains no critical position, where the critical positions are

  - the fence ends,
  - every breakpoint position of every trajectory (crossings appear,
    disappear or merge only there), and
  - every x at which the end of one coverage arc meets the start of another
    (the solutions of t_a(x) + T_a == t_b(x) mod P over segment pairs).

Uncovered time can appear or vanish only at those positions, so the verdict
is constant on the open interval between consecutive critical positions:
checking every critical position and one midpoint per open interval is
exhaustive.

For the uncovered measure, failing cells are refined further with the
start/start and end/end coincidence positions; on the refined subcells the
uncovered measure is a linear function of x, so the midpoint value times the
subcell width integrates it exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    InvalidScheduleError,
    Schedule,
    UncoveredRegion,
    Verdict,
    as_rational,
    validate_schedule,
)

__all__ = [
    "ArcSet",
    "IdleProfile",
    "coverage_arcs",
    "critical_positions",
    "verify",
    "idle_profile",
]


@dataclass(frozen=True)
class ArcSet:
    """Union-normalized half-open arcs (start, end] on a circle.

    Starts lie in [0, period); ends satisfy start < end <= start + period.
    At most the last arc may have end > period (it wraps through the seam).
    A covering of the whole circle is canonically the full flag with no arcs.
    """

    period: Fraction
    arcs: tuple[tuple[Fraction, Fraction], ...]
    full: bool = False

    @classmethod
    def from_raw(cls, period, raw) -> "ArcSet":
        """Normalize arbitrary (start, end] arcs, merging overlap and touch."""
        period = as_rational(period)
        items = []
        for s, e in raw:
            length = e - s
            if length <= 0:
                continue
            if length >= period:
                return cls(period, (), True)
            s = s % period
            items.append([s, s + length])
        if not items:
            return cls(period, ())
        items.sort()
        merged = [items[0]]
        for s, e in items[1:]:
            if s <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], e)
            else:
                merged.append([s, e])
        # Wrap handling: a tail beyond the period swallows arcs at the front.
        while len(merged) > 1 and merged[-1][1] - period >= merged[0][0]:
            first = merged.pop(0)
            merged[-1][1] = max(merged[-1][1], first[1] + period)
            if merged[-1][1] - merged[-1][0] >= period:
                return cls(period, (), True)
        if merged[-1][1] - merged[-1][0] >= period:
            return cls(period, (), True)
        return cls(period, tuple((s, e) for s, e in merged))

    @property
    def is_full(self) -> bool:
        return self.full

    def measure(self) -> Fraction:
        if self.full:
            return self.period
        return sum((e - s for s, e in self.arcs), Fraction(0))

    def gaps(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Complement arcs, again as half-open (start, end] intervals."""
        if self.full:
            return ()
        if not self.arcs:
            return ((Fraction(0), self.period),)
        out = []
        for (s0, e0), (s1, e1) in zip(self.arcs, self.arcs[1:]):
            out.append((e0, s1))
        s_first, _ = self.arcs[0]
        s_last, e_last = self.arcs[-1]
        start = e_last % self.period
        out.append((start, start + (s_first + self.period - e_last)))
        return tuple(out)

    def largest_gap(self) -> tuple[Fraction, Fraction] | None:
        """Longest uncovered arc; ties broken by smallest start."""
        gaps = self.gaps()
        if not gaps:
            return None
        return min(gaps, key=lambda g: (-(g[1] - g[0]), g[0]))


def coverage_arcs(schedule: Schedule, x) -> ArcSet:
    """Exact set of covered instants (mod the period) at position x."""
    x = as_rational(x)
    if not (0 <= x <= schedule.fence_length):
        raise ValueError(f"position {x} outside the fence [0, {schedule.fence_length}]")
    raw = []
    for spec, traj in schedule.agents:
        for a, b in traj.crossings(x).intervals:
            raw.append((a, b + spec.weight))
    return ArcSet.from_raw(schedule.period, raw)


def _linear_segments(schedule):
    """Non-constant segments as (alpha, beta, xlo, xhi, weight).

    The crossing time of such a segment at level x is alpha + beta * x for
    x in [xlo, xhi].  Constant segments only matter at their own level,
    which is a breakpoint position and hence critical anyway.
    """
    out = []
    for spec, traj in schedule.agents:
        for t0, t1, x0, x1 in traj.segments():
            if x0 == x1:
                continue
            beta = (t1 - t0) / (x1 - x0)
            alpha = t0 - beta * x0
            out.append((alpha, beta, min(x0, x1), max(x0, x1), spec.weight))
    return out


def _congruence_positions(c0, c1, period, lo, hi):
    """Solutions of c0 + c1*x == 0 (mod period) with x in [lo, hi]."""
    if c1 == 0 or lo > hi:
        return []
    va = c0 + c1 * lo
    vb = c0 + c1 * hi
    if va > vb:
        va, vb = vb, va
    out = []
    for m in range(math.ceil(va / period), math.floor(vb / period) + 1):
        x = (m * period - c0) / c1
        if lo <= x <= hi:
            out.append(x)
    return out


def _pairwise_positions(segments, period, lo, hi, offsets_for):
    """Event positions where offset arc endpoints of two segments coincide."""
    xs = set()
    for i, (a_a, b_a, lo_a, hi_a, w_a) in enumerate(segments):
        for j, (a_b, b_b, lo_b, hi_b, w_b) in enumerate(segments):
            if j == i:
                continue
            span_lo = max(lo_a, lo_b, lo)
            span_hi = min(hi_a, hi_b, hi)
            if span_lo > span_hi:
                continue
            for delta in offsets_for(w_a, w_b):
                xs.update(
                    _congruence_positions(a_a - a_b + delta, b_a - b_b, period, span_lo, span_hi)
                )
    return xs


def critical_positions(schedule: Schedule) -> list[Fraction]:
    """Sorted positions where the coverage structure can change.

    Contains the fence ends, every trajectory breakpoint position, and every
    solution of t_a(x) + T_a == t_b(x) (mod P) over pairs of non-constant
    trajectory segments, with all wrap offsets.
    """
    l = schedule.fence_length
    xs = {Fraction(0), l}
    for _, traj in schedule.agents:
        xs.update(x for _, x in traj.breakpoints if 0 <= x <= l)
    segments = _linear_segments(schedule)
    xs.update(
        x
        for x in _pairwise_positions(
            segments, schedule.period, Fraction(0), l, lambda wa, wb: (wa,)
        )
        if 0 <= x <= l
    )
    return sorted(xs)


def _uncovered_measure(schedule, x) -> Fraction:
    return schedule.period - coverage_arcs(schedule, x).measure()


def verify(schedule: Schedule) -> Verdict:
    """Decide exactly whether the schedule patrols its fence.

    Invalid schedules are rejected with their violations.  On failure the
    verdict carries a witness (the first failing sample position, with the
    midpoint of its largest uncovered arc), the uncovered regions, and the
    exact uncovered space-time measure over one period.
    """
    violations = validate_schedule(schedule)
    if violations:
        raise InvalidScheduleError(violations)
    xs = critical_positions(schedule)
    period = schedule.period

    samples: list[tuple[Fraction, Fraction | None, Fraction | None]] = []
    for i, x in enumerate(xs):
        samples.append((x, None, None))
        if i + 1 < len(xs):
            a, b = x, xs[i + 1]
            samples.append(((a + b) / 2, a, b))

    witness = None
    failing_cells = []
    failing_corners = []
    for x, cell_lo, cell_hi in samples:
        arcs = coverage_arcs(schedule, x)
        if arcs.is_full:
            continue
        if witness is None:
            gs, ge = arcs.largest_gap()
            witness = (x, ((gs + ge) / 2) % period)
        if cell_lo is None:
            failing_corners.append((x, arcs))
        else:
            failing_cells.append((cell_lo, cell_hi, x, arcs))

    if witness is None:
        return Verdict(True, None, Fraction(0), ())

    segments = _linear_segments(schedule)
    area = Fraction(0)
    regions = []
    for x, arcs in failing_corners:
        regions.append(UncoveredRegion(x, x, x, arcs.gaps()))
    for lo, hi, mid, arcs in failing_cells:
        regions.append(UncoveredRegion(lo, hi, mid, arcs.gaps()))
        # Start/start and end/end coincidences bend the uncovered measure
        # without changing the verdict; refining by them makes the measure
        # linear on each subcell, so the midpoint rule integrates exactly.
        extra = _pairwise_positions(
            segments, period, lo, hi, lambda wa, wb: (Fraction(0), wa - wb)
        )
        cuts = [lo] + sorted(x for x in extra if lo < x < hi) + [hi]
        for a, b in zip(cuts, cuts[1:]):
            area += (b - a) * _uncovered_measure(schedule, (a + b) / 2)

    regions.sort(key=lambda r: (r.x_lo, r.x_hi))
    if area == 0:
        raise RuntimeError(
            "internal inconsistency: failing verdict with zero uncovered measure"
        )
    return Verdict(False, witness, area, tuple(regions))


def _merged_visits(schedule, x):
    """Closed visit intervals at x from all agents, merged on the circle."""
    period = schedule.period
    items = []
    for _, traj in schedule.agents:
        for a, b in traj.crossings(x).intervals:
            if b - a >= period:
                return [(Fraction(0), period)]
            items.append([a % period, a % period + (b - a)])
    if not items:
        return []
    items.sort()
    merged = [items[0]]
    for s, e in items[1:]:
        if s <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], e)
        else:
            merged.append([s, e])
    while len(merged) > 1 and merged[-1][1] - period >= merged[0][0]:
        first = merged.pop(0)
        merged[-1][1] = max(merged[-1][1], first[1] + period)
    if merged[-1][1] - merged[-1][0] >= period:
        return [(Fraction(0), period)]
    return [(s, e) for s, e in merged]


def _visit_gaps(visits, period):
    """Circular gaps (durations between consecutive visit intervals)."""
    if not visits:
        return None
    if len(visits) == 1:
        s, e = visits[0]
        if e - s >= period:
            return [Fraction(0)]
        return [s + period - e]
    out = []
    for (s0, e0), (s1, e1) in zip(visits, visits[1:]):
        out.append(s1 - e0)
    s_first = visits[0][0]
    e_last = visits[-1][1]
    out.append(s_first + period - e_last)
    return out


@dataclass(frozen=True)
class IdleProfile:
    """Largest revisit gap per fence cell, for equal-weight schedules.

    max_gap None means the cell is never visited (unbounded idle time).
    global_max is the supremum over the fence; argmax_x is the position at
    which it is attained or approached.
    """

    cells: tuple[tuple[Fraction, Fraction, Fraction | None], ...]
    global_max: Fraction | None
    argmax_x: Fraction


def idle_profile(schedule: Schedule) -> IdleProfile:
    """Per-cell maximum time between consecutive visits, exactly.

    Requires all agent weights equal (with distinct weights there is no
    single revisit deadline to compare against).  Gap lengths are linear on
    cells refined by visit-order coincidences; each gap is extrapolated
    linearly to the cell ends, where the maximum of linear functions attains
    its supremum.
    """
    weights = {spec.weight for spec, _ in schedule.agents}
    if len(weights) != 1:
        raise ValueError("idle_profile requires all agent weights to be equal")
    violations = validate_schedule(schedule)
    if violations:
        raise InvalidScheduleError(violations)

    period = schedule.period
    l = schedule.fence_length
    xs = set(critical_positions(schedule))
    segments = _linear_segments(schedule)
    xs.update(
        x
        for x in _pairwise_positions(
            segments, period, Fraction(0), l, lambda wa, wb: (Fraction(0),)
        )
        if 0 <= x <= l
    )
    grid = sorted(xs)

    cells: list[tuple[Fraction, Fraction, Fraction | None]] = []
    global_max: Fraction | None = None
    argmax_x: Fraction | None = None
    unbounded_at: Fraction | None = None
    for a, b in zip(grid, grid[1:]):
        p1 = a + (b - a) / 3
        p2 = a + 2 * (b - a) / 3
        v1 = _merged_visits(schedule, p1)
        v2 = _merged_visits(schedule, p2)
        if not v1 or not v2:
            cells.append((a, b, None))
            if unbounded_at is None:
                unbounded_at = (a + b) / 2
            continue
        g1 = _visit_gaps(v1, period)
        g2 = _visit_gaps(v2, period)
        if len(g1) != len(g2):
            raise RuntimeError("internal inconsistency: visit structure changed inside a cell")
        cell_max = None
        cell_arg = a
        for q1, q2 in zip(g1, g2):
            slope = (q2 - q1) / (p2 - p1)
            at_a = q1 + slope * (a - p1)
            at_b = q1 + slope * (b - p1)
            for value, where in ((at_a, a), (at_b, b)):
                if cell_max is None or value > cell_max:
                    cell_max, cell_arg = value, where
        cells.append((a, b, cell_max))
        if global_max is None or cell_max > global_max:
            global_max, argmax_x = cell_max, cell_arg
    if unbounded_at is not None:
        return IdleProfile(tuple(cells), None, unbounded_at)
    return IdleProfile(tuple(cells), global_max, argmax_x)
