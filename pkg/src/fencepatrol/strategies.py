"""Schedule constructors and length bounds.

Provides the proportional-partition baseline, bound/ratio arithmetic, agent
replication, and three bundled schedules that beat the partition length:

  - fig1_schedule: six agents (speeds 1, 1, 1, 1, 7/3, 1/2) patrolling a
    fence of length 7/2 with period 7, beating the partition length 41/12;
  - fig2_schedule: nine agents (six of speed 5, three of speed 1) patrolling
    length 50/3 with period 10/3, beating the partition length 33/2;
  - weighted_three_schedule: three weighted agents patrolling 7/2, the
    weight-4 collapse of fig1's four unit-speed agents.

The counterexample trajectory tables are frozen rational constants; they
were derived from the coverage-window algebra spelled out in the comments
below and are re-certified by the exact verifier in the test suite and by
demos/regenerate_fixtures.py.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import AgentSpec, Schedule, as_rational, common_period
from .trajectory import Trajectory, zigzag

__all__ = [
    "BoundsReport",
    "bounds",
    "partition_schedule",
    "proportional_zigzag_schedule",
    "ratio",
    "replicate_shifted",
    "fig1_schedule",
    "fig2_schedule",
    "weighted_three_schedule",
    "extend_with_agent",
]


@dataclass(frozen=True)
class BoundsReport:
    """Length bounds implied by the weighted speeds alone.

    partition_length is what the proportional partition achieves; no
    schedule can patrol more than trivial_upper = 2 * partition_length.
    """

    partition_length: Fraction
    trivial_upper: Fraction

    def ratio_of(self, fence_length) -> Fraction:
        return as_rational(fence_length) / self.trivial_upper


def _weighted_sum(specs) -> Fraction:
    return sum((s.speed * s.weight for s in specs), Fraction(0))


def bounds(specs) -> BoundsReport:
    specs = [s if isinstance(s, AgentSpec) else AgentSpec(*s) for s in specs]
    total = _weighted_sum(specs)
    return BoundsReport(total / 2, total)


def ratio(schedule: Schedule) -> Fraction:
    """Patrolled length divided by the weighted speed sum.

    The partition baseline scores exactly 1/2; anything above 1/2 beats it.
    """
    return schedule.fence_length / schedule.weighted_speed_sum()


def proportional_zigzag_schedule(specs, fence_length) -> Schedule:
    """Tile [0, l] proportionally to the weighted speeds, one zigzag each.

    No patrolling bound is enforced: for l above the partition length the
    result is a valid schedule that fails to patrol (used to probe
    tightness).  Segment order follows the input order.
    """
    specs = [s if isinstance(s, AgentSpec) else AgentSpec(*s) for s in specs]
    if not specs:
        raise ValueError("need at least one agent")
    l = as_rational(fence_length)
    if l <= 0:
        raise ValueError("fence length must be positive")
    total = _weighted_sum(specs)
    round_trips = [2 * spec.weight * l / total for spec in specs]
    period = common_period(round_trips)
    agents = []
    cursor = Fraction(0)
    for spec, rt in zip(specs, round_trips):
        seg = spec.speed * spec.weight * l / total
        agents.append((spec, zigzag(cursor, cursor + seg, spec.speed, 0, period)))
        cursor += seg
    assert cursor == l
    return Schedule(l, period, tuple(agents))


def partition_schedule(specs, fence_length=None, sort_by_speed=False) -> Schedule:
    """The proportional-partition strategy.

    Agent i zigzags at full speed over a segment of length
    v_i * T_i * l / sum(v_j * T_j); the default fence length is the largest
    this strategy patrols, sum(v_j * T_j) / 2.  With sort_by_speed the
    segments are laid out fastest first (a canonical order for fixtures).
    """
    specs = [s if isinstance(s, AgentSpec) else AgentSpec(*s) for s in specs]
    if not specs:
        raise ValueError("need at least one agent")
    if sort_by_speed:
        specs = sorted(specs, key=lambda s: (s.speed, s.weight), reverse=True)
    report = bounds(specs)
    if fence_length is None:
        l = report.partition_length
    else:
        l = as_rational(fence_length)
        if l > report.partition_length:
            raise ValueError(
                f"fence length {l} exceeds the partition bound {report.partition_length}"
            )
    return proportional_zigzag_schedule(specs, l)


def replicate_shifted(spec: AgentSpec, traj: Trajectory, m: int):
    """Replace one agent by m parallel time-shifted copies.

    The copies carry weight T/m and time shifts j*T/m for j = 0..m-1, so the
    union of their coverage equals the original agent's coverage exactly:
    the per-copy windows [t - (j+1)T/m, t - jT/m) tile [t - T, t).
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return [(spec, traj)]
    step = spec.weight / m
    part = AgentSpec(spec.speed, step)
    return [(part, traj.time_shift(step * j)) for j in range(m)]


# ---------------------------------------------------------------------------
# Bundled counterexample schedules.
#
# fig1: four unit-speed agents run full-fence zigzags on [0, 7/2], phased one
# time unit apart, which covers all instants except two triangles:
#   left   {7/6 < x < 3/2 : (x + 4, 7 - x]}
#   right  {2   < x < 7/3 : (4 - x, x]}       (times mod 7)
# after the speed-7/3 agent spends its whole distance budget 49/3 on two
# full-speed dashes between the fence ends and double oscillations at each
# end (touching 7/2 at times 1/2, 3/2, 5/2 and 0 at times 4, 5, 6).  The
# speed-1/2 agent covers each remaining triangle with one full-speed pass
# whose visit times sit inside the single-visit windows of the triangle
# ([6 - x, 4 + x] on the left, [x - 1, 4 - x] on the right); the passes
# (4/3, 7/3) -> (2, 2) and (29/6, 7/6) -> (11/2, 3/2) satisfy the window
# constraints with equality at the triangle tips, and the connecting legs
# fit its speed with slack (it rests at 7/3 and at 2 in between).
# ---------------------------------------------------------------------------

_F = Fraction


def _fig1_fast_agent() -> tuple[AgentSpec, Trajectory]:
    pts = (
        (_F(0), _F(7, 3)),
        (_F(1, 2), _F(7, 2)),
        (_F(1), _F(7, 3)),
        (_F(3, 2), _F(7, 2)),
        (_F(2), _F(7, 3)),
        (_F(5, 2), _F(7, 2)),
        (_F(4), _F(0)),
        (_F(9, 2), _F(7, 6)),
        (_F(5), _F(0)),
        (_F(11, 2), _F(7, 6)),
        (_F(6), _F(0)),
        (_F(7), _F(7, 3)),
    )
    return AgentSpec(_F(7, 3)), Trajectory(_F(7), pts)


def _fig1_slow_agent() -> tuple[AgentSpec, Trajectory]:
    pts = (
        (_F(0), _F(5, 3)),
        (_F(4, 3), _F(7, 3)),
        (_F(2), _F(2)),
        (_F(19, 6), _F(2)),
        (_F(29, 6), _F(7, 6)),
        (_F(11, 2), _F(3, 2)),
        (_F(20, 3), _F(3, 2)),
        (_F(7), _F(5, 3)),
    )
    return AgentSpec(_F(1, 2)), Trajectory(_F(7), pts)


def fig1_schedule() -> Schedule:
    """Six agents patrolling a fence of 7/2, above their partition bound 41/12."""
    agents = [
        (AgentSpec(1), zigzag(0, _F(7, 2), 1, j, 7)) for j in range(4)
    ]
    agents.append(_fig1_fast_agent())
    agents.append(_fig1_slow_agent())
    return Schedule(_F(7, 2), _F(7), tuple(agents))


def weighted_three_schedule() -> Schedule:
    """Three weighted agents patrolling 7/2, above their partition bound 41/12.

    The weight-4 unit-speed agent is the collapse of fig1's four phased unit
    zigzags; replicate_shifted with m=4 recovers fig1_schedule exactly.
    """
    agents = (
        (AgentSpec(1, 4), zigzag(0, _F(7, 2), 1, 0, 7)),
        _fig1_fast_agent(),
        _fig1_slow_agent(),
    )
    return Schedule(_F(7, 2), _F(7), agents)


# ---------------------------------------------------------------------------
# fig2: the six speed-5 agents zigzag the two halves [0, 25/3] and
# [25/3, 50/3] in two groups of three, phased one time unit apart inside
# each group (so each group acts as one weight-3 agent).  A group covers its
# half except near the turnarounds, leaving triangles of width 5/6 and
# height up to 1/3 at 0, 25/3 and 50/3.  Phasing group B one unit behind
# group A fuses the two middle triangles into one diamond whose single-visit
# windows admit one full-speed pass of a speed-1 agent, (15/2, 1/2) ->
# (55/6, 13/6); the end triangles are each covered by one pass of the other
# two slow agents, (5/6, 13/6) -> (0, 3) and (95/6, 17/6) -> (50/3, 11/3).
# ---------------------------------------------------------------------------


def _fig2_slow_agents():
    p = _F(10, 3)
    left = Trajectory(
        p,
        (
            (_F(0), _F(0)),
            (_F(4, 3), _F(0)),
            (_F(13, 6), _F(5, 6)),
            (_F(3), _F(0)),
            (p, _F(0)),
        ),
    )
    middle = Trajectory(
        p,
        (
            (_F(0), _F(8)),
            (_F(1, 2), _F(15, 2)),
            (_F(13, 6), _F(55, 6)),
            (p, _F(8)),
        ),
    )
    right = Trajectory(
        p,
        (
            (_F(0), _F(49, 3)),
            (_F(1, 3), _F(50, 3)),
            (_F(7, 6), _F(95, 6)),
            (_F(17, 6), _F(95, 6)),
            (p, _F(49, 3)),
        ),
    )
    return [(AgentSpec(1), t) for t in (left, middle, right)]


def fig2_schedule() -> Schedule:
    """Nine agents patrolling a fence of 50/3, above their partition bound 33/2."""
    p = _F(10, 3)
    half = _F(25, 3)
    agents = [
        (AgentSpec(5), zigzag(0, half, 5, j, p)) for j in range(3)
    ]
    agents += [
        (AgentSpec(5), zigzag(half, 2 * half, 5, j - 1, p)) for j in range(3)
    ]
    agents += _fig2_slow_agents()
    return Schedule(2 * half, p, tuple(agents))


def extend_with_agent(schedule: Schedule, spec: AgentSpec) -> Schedule:
    """Lengthen the fence by v*T/2 and give the new strip to a new zigzag agent.

    The new agent's round trip equals its weight, so the extension patrols on
    its own; the common period becomes the rational lcm of the old period
    and that round trip.
    """
    if not isinstance(spec, AgentSpec):
        spec = AgentSpec(*spec)
    added = spec.speed * spec.weight / 2
    new_l = schedule.fence_length + added
    round_trip = spec.weight
    new_agent_traj = zigzag(schedule.fence_length, new_l, spec.speed, 0, round_trip)
    agents = list(schedule.agents) + [(spec, new_agent_traj)]
    return Schedule.assemble(new_l, agents)
