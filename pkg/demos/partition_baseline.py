"""The proportional-partition baseline and how tight it is.

Builds partition schedules, inspects their idle profiles, then stretches a
fence by 1% and lets the verifier exhibit an exactly uncovered witness.

Run from the repository root:  python demos/partition_baseline.py
"""
from fractions import Fraction as F

from fencepatrol import (
    AgentSpec,
    bounds,
    idle_profile,
    partition_schedule,
    proportional_zigzag_schedule,
    verify,
)

SPECS = [AgentSpec(v) for v in (1, 1, 1, 1, F(7, 3), F(1, 2))]


def main() -> None:
    report = bounds(SPECS)
    print(f"speeds {[str(s.speed) for s in SPECS]}")
    print(f"partition length: {report.partition_length}, trivial upper bound: {report.trivial_upper}")

    s = partition_schedule(SPECS)
    verdict = verify(s)
    print(f"\npartition at its bound {s.fence_length}: {verdict.status}")
    profile = idle_profile(s)
    print(f"idle profile: global max gap {profile.global_max} at x = {profile.argmax_x}")
    assert profile.global_max == 1  # equals the common weight: the layout is tight

    stretched = proportional_zigzag_schedule(SPECS, report.partition_length * F(101, 100))
    verdict = verify(stretched)
    print(f"\nsame layout stretched by 1% to {stretched.fence_length}: {verdict.status}")
    x, t = verdict.witness
    print(f"uncovered witness: position {x}, instant {t} (exact)")
    print(f"uncovered space-time measure per period: {verdict.uncovered_area}")
    print(f"uncovered cells: {len(verdict.regions)}")
    for region in verdict.regions[:4]:
        print(f"   x in [{region.x_lo}, {region.x_hi}] arcs {region.arcs}")


if __name__ == "__main__":
    main()
