"""Exact rationals and the shared schedule data model.

Every quantity that takes part in a coverage decision is a
``fractions.Fraction``.  Floats are rejected at the construction boundary so
that verification never depends on rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .trajectory import Trajectory

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce int, string ("7/3") or Fraction to Fraction; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"expected an exact rational (int, str or Fraction), got {type(value).__name__}"
    )


def rational(num: int, den: int = 1) -> Fraction:
    """Canonical reduced fraction with positive denominator.

    Raises ZeroDivisionError for a zero denominator.
    """
    return Fraction(num, den)


def rational_lcm(a, b) -> Fraction:
    """Least positive r such that r/a and r/b are integers.

    Computed as lcm(numerators) / gcd(denominators) on canonical forms.
    Both arguments must be positive.
    """
    a = as_rational(a)
    b = as_rational(b)
    if a <= 0 or b <= 0:
        raise ValueError(f"rational_lcm needs positive arguments, got {a}, {b}")
    return Fraction(math.lcm(a.numerator, b.numerator), math.gcd(a.denominator, b.denominator))


def common_period(periods) -> Fraction:
    """rational_lcm folded over a non-empty iterable."""
    it = iter(periods)
    try:
        acc = as_rational(next(it))
    except StopIteration:
        raise ValueError("common_period of empty iterable") from None
    for p in it:
        acc = rational_lcm(acc, p)
    return acc


@dataclass(frozen=True)
class AgentSpec:
    """Maximum speed and idle allowance (weight) of one agent.

    The weight is the per-agent revisit deadline: the agent covers a
    position/time pair (x, t*) if it stands at x at some instant in
    [t* - weight, t*).  Weight 1 is the uniform setting.
    """

    speed: Fraction
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "speed", as_rational(self.speed))
        object.__setattr__(self, "weight", as_rational(self.weight))
        if self.speed <= 0:
            raise ValueError(f"speed must be positive, got {self.speed}")
        if self.weight <= 0:
            raise ValueError(f"weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class Schedule:
    """A fence [0, l], a common period P and the agents patrolling it.

    The constructor only enforces positivity of the fence length and period;
    use validate_schedule to check the full invariants (period agreement,
    range, speed feasibility).  Keeping construction permissive lets invalid
    schedules be represented and reported on.
    """

    fence_length: Fraction
    period: Fraction
    agents: tuple[tuple[AgentSpec, Trajectory], ...]

    def __post_init__(self):
        object.__setattr__(self, "fence_length", as_rational(self.fence_length))
        object.__setattr__(self, "period", as_rational(self.period))
        object.__setattr__(self, "agents", tuple((spec, traj) for spec, traj in self.agents))
        if self.fence_length <= 0:
            raise ValueError(f"fence_length must be positive, got {self.fence_length}")
        if self.period <= 0:
            raise ValueError(f"period must be positive, got {self.period}")

    @classmethod
    def assemble(cls, fence_length, agents) -> "Schedule":
        """Build a schedule from agents with possibly different periods.

        The common period is the rational lcm of the trajectory periods and
        each trajectory is tiled out to it.
        """
        agents = list(agents)
        if not agents:
            raise ValueError("a schedule needs at least one agent")
        period = common_period(traj.period for _, traj in agents)
        tiled = tuple(
            (spec, traj.retile(int(period / traj.period))) for spec, traj in agents
        )
        return cls(as_rational(fence_length), period, tiled)

    @property
    def specs(self) -> tuple[AgentSpec, ...]:
        return tuple(spec for spec, _ in self.agents)

    def weighted_speed_sum(self) -> Fraction:
        return sum((spec.speed * spec.weight for spec in self.specs), Fraction(0))

    # Geometric and parametric transforms, used heavily by the invariance tests.

    def reflected(self) -> "Schedule":
        """Mirror every trajectory through the fence midpoint."""
        return Schedule(
            self.fence_length,
            self.period,
            tuple((spec, traj.reflect(self.fence_length)) for spec, traj in self.agents),
        )

    def time_shifted(self, delta) -> "Schedule":
        delta = as_rational(delta)
        return Schedule(
            self.fence_length,
            self.period,
            tuple((spec, traj.time_shift(delta)) for spec, traj in self.agents),
        )

    def space_scaled(self, factor) -> "Schedule":
        """Multiply fence length, positions and speeds by a positive factor."""
        c = as_rational(factor)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Schedule(
            self.fence_length * c,
            self.period,
            tuple(
                (
                    AgentSpec(spec.speed * c, spec.weight),
                    Trajectory(traj.period, tuple((t, x * c) for t, x in traj.breakpoints)),
                )
                for spec, traj in self.agents
            ),
        )

    def time_scaled(self, factor) -> "Schedule":
        """Multiply period, breakpoint times and weights by c; divide speeds by c."""
        c = as_rational(factor)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Schedule(
            self.fence_length,
            self.period * c,
            tuple(
                (
                    AgentSpec(spec.speed / c, spec.weight * c),
                    Trajectory(traj.period * c, tuple((t * c, x) for t, x in traj.breakpoints)),
                )
                for spec, traj in self.agents
            ),
        )

    def with_weights(self, weights) -> "Schedule":
        weights = [as_rational(w) for w in weights]
        if len(weights) != len(self.agents):
            raise ValueError("need one weight per agent")
        return Schedule(
            self.fence_length,
            self.period,
            tuple(
                (AgentSpec(spec.speed, w), traj)
                for (spec, traj), w in zip(self.agents, weights)
            ),
        )


@dataclass(frozen=True)
class Violation:
    """One broken schedule invariant; agent/segment are indices when known."""

    agent: int | None
    segment: int | None
    kind: str
    detail: str


class InvalidScheduleError(ValueError):
    """Raised when an operation requires a valid schedule but got violations."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(v.detail for v in self.violations)
        super().__init__(f"invalid schedule: {lines}")


def validate_schedule(schedule: Schedule) -> list[Violation]:
    """Check period agreement, fence range and speed feasibility.

    Returns an empty list iff the schedule satisfies all invariants.
    Violations are data, not exceptions.
    """
    out: list[Violation] = []
    if not schedule.agents:
        out.append(Violation(None, None, "no-agents", "schedule has no agents"))
        return out
    for i, (spec, traj) in enumerate(schedule.agents):
        if traj.period != schedule.period:
            out.append(
                Violation(
                    i,
                    None,
                    "period-mismatch",
                    f"agent {i}: trajectory period {traj.period} != schedule period {schedule.period}",
                )
            )
        for j, (t, x) in enumerate(traj.breakpoints):
            if not (0 <= x <= schedule.fence_length):
                out.append(
                    Violation(
                        i,
                        j,
                        "range",
                        f"agent {i}: breakpoint {j} at x={x} outside [0, {schedule.fence_length}]",
                    )
                )
        for j, (t0, t1, x0, x1) in enumerate(traj.segments()):
            if abs(x1 - x0) > spec.speed * (t1 - t0):
                out.append(
                    Violation(
                        i,
                        j,
                        "speed",
                        f"agent {i}: segment {j} needs speed {abs(x1 - x0) / (t1 - t0)}"
                        f" > allowed {spec.speed}",
                    )
                )
    return out


@dataclass(frozen=True)
class UncoveredRegion:
    """A cell of the fence with uncovered time arcs at a sample position.

    x_lo == x_hi marks a single-position region; arcs are half-open (start,
    end] intervals of the time circle at x_sample, end may exceed the period
    to express a wrap.
    """

    x_lo: Fraction
    x_hi: Fraction
    x_sample: Fraction
    arcs: tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class Verdict:
    """Outcome of exact verification.

    patrols is True iff every position of the fence is covered at every
    instant of the time circle.  On failure, witness is an exactly uncovered
    (x, t) pair, uncovered_area is the exact space-time measure of the
    uncovered set over one period, and regions lists the uncovered cells.
    """

    patrols: bool
    witness: tuple[Fraction, Fraction] | None
    uncovered_area: Fraction
    regions: tuple[UncoveredRegion, ...]

    @property
    def status(self) -> str:
        return "PATROLS" if self.patrols else "FAILS"
