"""Tour of the bundled schedules that beat the proportional partition.

Walks through the three counterexamples, certifies each with the exact
verifier, and prints the arithmetic that makes them interesting.

Run from the repository root:  python demos/counterexample_tour.py
"""
from fractions import Fraction as F

from fencepatrol import (
    AgentSpec,
    bounds,
    extend_with_agent,
    fig1_schedule,
    fig2_schedule,
    ratio,
    replicate_shifted,
    Schedule,
    verify,
    weighted_three_schedule,
)


def show(name, schedule):
    report = bounds(schedule.specs)
    verdict = verify(schedule)
    print(f"== {name}")
    print(f"   speeds/weights : {[(str(s.speed), str(s.weight)) for s in schedule.specs]}")
    print(f"   fence length   : {schedule.fence_length}   period: {schedule.period}")
    print(f"   partition bound: {report.partition_length}")
    print(f"   verdict        : {verdict.status}")
    print(f"   ratio l/sum(vT): {ratio(schedule)}  (partition scores 1/2 = 0.5)")
    assert verdict.patrols
    assert schedule.fence_length > report.partition_length
    print()


def main() -> None:
    # Six unit-weight agents patrol 7/2 although a proportional split of the
    # fence would cap them at 41/12.
    show("six agents, speeds 1,1,1,1,7/3,1/2", fig1_schedule())

    # Nine agents in two speed classes; the fast six work in two phased
    # groups of three, the slow three mop up the leftover triangles.
    show("nine agents, speeds 5x6 + 1x3", fig2_schedule())

    # Three agents with per-agent revisit deadlines: with weights the
    # three-agent partition optimality breaks down.
    w3 = weighted_three_schedule()
    show("three weighted agents (1,T=4), (7/3,T=1), (1/2,T=1)", w3)

    # The weight-4 agent really is four phased unit agents in one body:
    # replicating it recovers the six-agent schedule exactly.
    spec0, traj0 = w3.agents[0]
    expanded = Schedule(
        w3.fence_length, w3.period, tuple(replicate_shifted(spec0, traj0, 4)) + w3.agents[1:]
    )
    assert expanded == fig1_schedule()
    print("replicate_shifted(weight-4 agent, m=4) reproduces the six-agent schedule exactly.")

    # Appending a just-fast-enough zigzag agent extends the counterexample to
    # any larger crew, with the ratio easing back toward 1/2.
    s = fig1_schedule()
    print("\nextending the six-agent schedule one zigzag agent at a time:")
    for _ in range(3):
        s = extend_with_agent(s, AgentSpec(1))
        assert verify(s).patrols
        print(f"   k={len(s.agents)}: l={s.fence_length}, ratio={ratio(s)} ~ {float(ratio(s)):.4f}")


if __name__ == "__main__":
    main()
