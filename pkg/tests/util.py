"""Random generators for property tests.

Trajectories are drawn on coarse rational grids so that exact verification
of many instances stays fast; each agent's speed is derived as the maximum
its own polyline requires, which keeps every generated schedule valid.
"""
from __future__ import annotations

import random
from fractions import Fraction

from fencepatrol.core import AgentSpec, Schedule
from fencepatrol.trajectory import Trajectory


def random_rational(rng: random.Random, max_num=8, max_den=4, positive=True) -> Fraction:
    num = rng.randint(1 if positive else -max_num, max_num)
    if num == 0:
        num = 1
    return Fraction(num, rng.randint(1, max_den))


def random_trajectory(rng: random.Random, period: Fraction, fence: Fraction, max_pts=6):
    """Closed grid polyline on [0, fence] and the minimum speed it needs."""
    denom = rng.choice([2, 3, 4, 6])
    time_slots = [period * k / (denom * 2) for k in range(denom * 2)]
    n = rng.randint(2, max_pts)
    times = sorted(rng.sample(time_slots[1:], min(n - 1, len(time_slots) - 1)))
    times = [Fraction(0)] + times
    xgrid = [fence * k / 8 for k in range(9)]
    xs = [rng.choice(xgrid) for _ in times]
    pts = list(zip(times, xs)) + [(period, xs[0])]
    traj = Trajectory(period, tuple(pts))
    speed = Fraction(0)
    for t0, t1, x0, x1 in traj.segments():
        if x1 != x0:
            speed = max(speed, abs(x1 - x0) / (t1 - t0))
    if speed == 0:
        speed = Fraction(1)
    return traj, speed


def random_schedule(rng: random.Random, max_agents=3, max_pts=6, weights=(1,)):
    period = Fraction(rng.choice([1, 2, 3])) / rng.choice([1, 2])
    fence = Fraction(rng.randint(1, 4), rng.choice([1, 2]))
    k = rng.randint(1, max_agents)
    agents = []
    for _ in range(k):
        traj, speed = random_trajectory(rng, period, fence, max_pts)
        agents.append((AgentSpec(speed, Fraction(rng.choice(weights))), traj))
    return Schedule(fence, period, tuple(agents))
