import random
from fractions import Fraction as F

import pytest

from fencepatrol.core import (
    AgentSpec,
    Schedule,
    as_rational,
    common_period,
    rational,
    rational_lcm,
    validate_schedule,
)
from fencepatrol.strategies import partition_schedule
from fencepatrol.trajectory import Trajectory, zigzag


def test_rational_reduces():
    assert rational(14, 6) == F(7, 3)
    assert rational(14, 6).denominator == 3


def test_rational_sign_normalization():
    r = rational(3, -6)
    assert r == F(-1, 2)
    assert r.denominator == 2
    assert r.numerator == -1


def test_rational_zero():
    r = rational(0, 5)
    assert r == 0
    assert r.denominator == 1


def test_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rational(1, 0)


def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rational_lcm_examples():
    assert rational_lcm(7, F(10, 3)) == 70
    assert rational_lcm(1, 1) == 1
    assert rational_lcm(F(3, 2), F(1, 2)) == F(3, 2)


def test_rational_lcm_rejects_nonpositive():
    with pytest.raises(ValueError):
        rational_lcm(0, 1)
    with pytest.raises(ValueError):
        rational_lcm(F(1, 2), F(-1, 3))


def test_rational_lcm_divisible_and_minimal():
    rng = random.Random(20240811)
    for _ in range(300):
        a = F(rng.randint(1, 30), rng.randint(1, 12))
        b = F(rng.randint(1, 30), rng.randint(1, 12))
        r = rational_lcm(a, b)
        assert (r / a).denominator == 1
        assert (r / b).denominator == 1
        half = r / 2
        assert not ((half / a).denominator == 1 and (half / b).denominator == 1)


def test_rational_arithmetic_against_integer_path():
    # Cross-check Fraction against raw big-integer cross multiplication.
    rng = random.Random(77)
    for _ in range(500):
        a = F(rng.randint(-50, 50), rng.randint(1, 40))
        b = F(rng.randint(-50, 50), rng.randint(1, 40))
        c = F(rng.randint(-50, 50), rng.randint(1, 40))
        assert (a <= b) == (a.numerator * b.denominator <= b.numerator * a.denominator)
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        s = a + b
        assert s.numerator * (a.denominator * b.denominator) == (
            a.numerator * b.denominator + b.numerator * a.denominator
        ) * s.denominator


def test_agent_spec_positivity():
    with pytest.raises(ValueError):
        AgentSpec(0)
    with pytest.raises(ValueError):
        AgentSpec(1, 0)
    spec = AgentSpec("7/3")
    assert spec.speed == F(7, 3)
    assert spec.weight == 1


def test_validate_partition_is_clean():
    s = partition_schedule([AgentSpec(1), AgentSpec(2)])
    assert validate_schedule(s) == []


def test_validate_flags_speed_violation():
    # Full-fence zigzag on [0, 1] with period 1 needs speed 2, not 1.
    traj = Trajectory(1, ((0, 0), (F(1, 2), 1), (1, 0)))
    s = Schedule(1, 1, ((AgentSpec(1), traj),))
    kinds = {(v.agent, v.kind) for v in validate_schedule(s)}
    assert (0, "speed") in kinds


def test_validate_flags_range_violation():
    traj = Trajectory(1, ((0, F(-1, 2)), (F(1, 2), F(1, 4)), (1, F(-1, 2))))
    s = Schedule(1, 1, ((AgentSpec(2), traj),))
    kinds = {v.kind for v in validate_schedule(s)}
    assert "range" in kinds


def test_validate_flags_period_mismatch():
    s = Schedule(1, 2, ((AgentSpec(1), zigzag(0, F(1, 2), 1, 0, 1)),))
    kinds = {v.kind for v in validate_schedule(s)}
    assert "period-mismatch" in kinds


def test_assemble_unifies_periods():
    s = Schedule.assemble(
        F(3, 2),
        [
            (AgentSpec(1), zigzag(0, F(1, 2), 1, 0, 1)),
            (AgentSpec(3), zigzag(F(1, 2), F(3, 2), 3, 0, F(2, 3))),
        ],
    )
    assert s.period == common_period([1, F(2, 3)]) == 2
    assert all(traj.period == 2 for _, traj in s.agents)
    assert validate_schedule(s) == []


def test_schedule_requires_positive_dimensions():
    with pytest.raises(ValueError):
        Schedule(0, 1, ((AgentSpec(1), zigzag(0, F(1, 2), 1, 0, 1)),))
    with pytest.raises(ValueError):
        Schedule(1, 0, ((AgentSpec(1), zigzag(0, F(1, 2), 1, 0, 1)),))


def test_transforms_preserve_validity():
    s = partition_schedule([AgentSpec(1), AgentSpec(F(7, 3)), AgentSpec(F(1, 2))])
    for t in (
        s.reflected(),
        s.time_shifted(F(5, 7)),
        s.space_scaled(F(3, 2)),
        s.time_scaled(F(2, 5)),
    ):
        assert validate_schedule(t) == []
    assert s.reflected().reflected() == s
