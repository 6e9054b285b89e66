"""Periodic piecewise-linear position functions.

A trajectory is a closed polyline over one period: breakpoints (t, x) with
strictly increasing times, first time 0, last time equal to the period, and
equal first/last positions.  Between breakpoints the position interpolates
linearly; segments may be constant.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction


def _as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(
        f"expected an exact rational (int, str or Fraction), got {type(value).__name__}"
    )


@dataclass(frozen=True)
class CrossingSet:
    """Solution times of trajectory(t) == level within one period.

    Intervals are closed [start, end] with start in [0, period); a point
    crossing has start == end; a constant stretch at the level is a real
    interval.  At most the last interval may have end > period, which means
    the crossing wraps through the period seam; a crossing covering the whole
    circle is the single interval [0, period].
    """

    period: Fraction
    intervals: tuple[tuple[Fraction, Fraction], ...]

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_full(self) -> bool:
        return any(b - a >= self.period for a, b in self.intervals)

    def contains(self, t) -> bool:
        tm = _as_rational(t) % self.period
        for a, b in self.intervals:
            if a <= tm <= b:
                return True
            if b >= self.period and tm <= b - self.period:
                return True
        return False


@dataclass(frozen=True)
class Trajectory:
    period: Fraction
    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        period = _as_rational(self.period)
        if period <= 0:
            raise ValueError(f"period must be positive, got {period}")
        pts = [(_as_rational(t), _as_rational(x)) for t, x in self.breakpoints]
        if len(pts) < 2:
            raise ValueError("a trajectory needs at least two breakpoints")
        # Drop exact duplicates; equal times with different positions are a teleport.
        dedup = [pts[0]]
        for t, x in pts[1:]:
            if t == dedup[-1][0]:
                if x != dedup[-1][1]:
                    raise ValueError(f"duplicate time {t} with conflicting positions")
                continue
            dedup.append((t, x))
        pts = dedup
        times = [t for t, _ in pts]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("breakpoint times must be strictly increasing")
        if pts[0][0] != 0:
            raise ValueError("first breakpoint must be at time 0")
        if pts[-1][0] != period:
            raise ValueError(f"last breakpoint must be at time {period}")
        if pts[0][1] != pts[-1][1]:
            raise ValueError("trajectory must close: first and last positions differ")
        # Canonical form: remove interior breakpoints that are collinear with
        # their neighbours (they carry no information).
        cleaned = [pts[0]]
        for k in range(1, len(pts) - 1):
            t0, x0 = cleaned[-1]
            t1, x1 = pts[k]
            t2, x2 = pts[k + 1]
            if (x1 - x0) * (t2 - t1) == (x2 - x1) * (t1 - t0):
                continue
            cleaned.append(pts[k])
        cleaned.append(pts[-1])
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "breakpoints", tuple(cleaned))
        object.__setattr__(self, "_times", tuple(t for t, _ in cleaned))

    def evaluate(self, t) -> Fraction:
        """Exact position at time t (reduced modulo the period)."""
        tm = _as_rational(t) % self.period
        times = self._times
        i = bisect_right(times, tm) - 1
        t0, x0 = self.breakpoints[i]
        if tm == t0:
            return x0
        t1, x1 = self.breakpoints[i + 1]
        return x0 + (x1 - x0) * (tm - t0) / (t1 - t0)

    def segments(self) -> tuple[tuple[Fraction, Fraction, Fraction, Fraction], ...]:
        """Linear pieces as (t0, t1, x0, x1) tuples."""
        bp = self.breakpoints
        return tuple(
            (bp[i][0], bp[i + 1][0], bp[i][1], bp[i + 1][1]) for i in range(len(bp) - 1)
        )

    def position_range(self) -> tuple[Fraction, Fraction]:
        xs = [x for _, x in self.breakpoints]
        return min(xs), max(xs)

    def crossings(self, level) -> CrossingSet:
        """All times in one period at which the trajectory stands at level.

        Constant-at-level stretches come back as closed intervals; touching
        solutions (shared breakpoints, grazed extrema) are merged, including
        through the period seam.
        """
        level = _as_rational(level)
        raw: list[tuple[Fraction, Fraction]] = []
        for t0, t1, x0, x1 in self.segments():
            if x0 == x1:
                if x0 == level:
                    raw.append((t0, t1))
            elif min(x0, x1) <= level <= max(x0, x1):
                t = t0 + (level - x0) * (t1 - t0) / (x1 - x0)
                if t == self.period:
                    raw.append((Fraction(0), Fraction(0)))
                else:
                    raw.append((t, t))
        if not raw:
            return CrossingSet(self.period, ())
        raw.sort()
        merged = [list(raw[0])]
        for a, b in raw[1:]:
            if a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        # The circle identifies t == period with t == 0: an interval reaching
        # the period end absorbs one starting at 0 and becomes the wrapper.
        if len(merged) > 1 and merged[-1][1] == self.period and merged[0][0] == 0:
            first = merged.pop(0)
            merged[-1][1] = first[1] + self.period
        return CrossingSet(self.period, tuple((a, b) for a, b in merged))

    def time_shift(self, delta) -> "Trajectory":
        """Trajectory satisfying result(t) == self(t - delta)."""
        d = _as_rational(delta) % self.period
        if d == 0:
            return self
        shifted = sorted(((t + d) % self.period, x) for t, x in self.breakpoints[:-1])
        if shifted[0][0] != 0:
            shifted.insert(0, (Fraction(0), self.evaluate(self.period - d)))
        shifted.append((self.period, shifted[0][1]))
        return Trajectory(self.period, tuple(shifted))

    def reflect(self, fence_length) -> "Trajectory":
        """Mirror positions through the fence: x -> fence_length - x."""
        l = _as_rational(fence_length)
        lo, hi = self.position_range()
        if lo < 0 or hi > l:
            raise ValueError(f"trajectory range [{lo}, {hi}] not inside [0, {l}]")
        return Trajectory(self.period, tuple((t, l - x) for t, x in self.breakpoints))

    def retile(self, copies: int) -> "Trajectory":
        """Concatenate the motion to a period multiplied by copies."""
        if copies < 1:
            raise ValueError("copies must be >= 1")
        if copies == 1:
            return self
        pts = []
        for k in range(copies):
            off = self.period * k
            pts.extend((t + off, x) for t, x in self.breakpoints[:-1])
        pts.append((self.period * copies, self.breakpoints[0][1]))
        return Trajectory(self.period * copies, tuple(pts))


def zigzag(lo, hi, speed, phase, period) -> Trajectory:
    """Full-speed sawtooth between lo and hi, time-shifted by phase.

    The period must be an integer multiple of the round trip 2(hi-lo)/speed.
    At phase 0 the agent starts at lo and moves up.
    """
    lo = _as_rational(lo)
    hi = _as_rational(hi)
    speed = _as_rational(speed)
    phase = _as_rational(phase)
    period = _as_rational(period)
    if not (0 <= lo < hi):
        raise ValueError(f"need 0 <= lo < hi, got lo={lo}, hi={hi}")
    if speed <= 0:
        raise ValueError("speed must be positive")
    round_trip = 2 * (hi - lo) / speed
    n = period / round_trip
    if n.denominator != 1 or n < 1:
        raise ValueError(
            f"period {period} is not an integer multiple of the round trip {round_trip}"
        )
    pts: list[tuple[Fraction, Fraction]] = []
    for k in range(int(n)):
        pts.append((round_trip * k, lo))
        pts.append((round_trip * k + round_trip / 2, hi))
    pts.append((period, lo))
    return Trajectory(period, tuple(pts)).time_shift(phase)


def constant(x, period) -> Trajectory:
    """Agent standing still at x."""
    x = _as_rational(x)
    period = _as_rational(period)
    return Trajectory(period, ((Fraction(0), x), (period, x)))
