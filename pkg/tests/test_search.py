from fractions import Fraction as F

import pytest

from fencepatrol.core import AgentSpec
from fencepatrol.coverage import verify
from fencepatrol.search import (
    CERTIFIED,
    EXHAUSTED,
    SearchConfig,
    falsify_bound,
    improve_ratio,
    search,
)
from fencepatrol.strategies import (
    bounds,
    fig1_schedule,
    proportional_zigzag_schedule,
    ratio,
    weighted_three_schedule,
)

TWO_UNIT = [AgentSpec(1), AgentSpec(1)]


class TestSearch:
    def test_partition_target_certifies(self):
        out = search(TWO_UNIT, F(1), SearchConfig(seed=7, budget=10_000))
        assert out.status == CERTIFIED
        assert verify(out.best_schedule).patrols
        assert out.best_schedule.fence_length == 1
        assert out.best_uncovered_area == 0

    def test_two_agents_above_bound_exhausts(self):
        out = search(TWO_UNIT, F(101, 100), SearchConfig(seed=7, budget=2_000))
        assert out.status == EXHAUSTED
        assert out.best_schedule is None
        assert out.best_uncovered_area > 0

    def test_fig1_warm_start_regression(self):
        # Recorded when the fixtures were generated: seed 11, budget 64.
        f1 = fig1_schedule()
        out = search(
            [s for s, _ in f1.agents], F(7, 2), SearchConfig(seed=11, budget=64), warm_start=f1
        )
        assert out.status == CERTIFIED
        assert ratio(out.best_schedule) == F(21, 41)

    def test_weighted_three_agent_counterexample_possible(self):
        # The weighted setting admits k=3 above-partition certification.
        w3 = weighted_three_schedule()
        out = search(
            [s for s, _ in w3.agents], F(7, 2), SearchConfig(seed=5, budget=64), warm_start=w3
        )
        assert out.status == CERTIFIED
        assert out.best_schedule.fence_length == F(7, 2) > F(41, 12)

    def test_certified_respects_trivial_upper_bound(self):
        out = search(TWO_UNIT, F(1), SearchConfig(seed=1, budget=4_000))
        assert out.status == CERTIFIED
        total = sum(s.speed * s.weight for s in TWO_UNIT)
        assert out.best_schedule.fence_length <= total

    def test_determinism_across_seeds_and_parallelism(self):
        cfg = SearchConfig(seed=42, budget=600)
        runs = [
            search([AgentSpec(1), AgentSpec(2)], F(3, 2), cfg),
            search([AgentSpec(1), AgentSpec(2)], F(3, 2), cfg),
            search(
                [AgentSpec(1), AgentSpec(2)],
                F(3, 2),
                SearchConfig(seed=42, budget=600, parallelism=8),
            ),
        ]
        assert runs[0] == runs[1] == runs[2]

    def test_warm_start_spec_mismatch_rejected(self):
        with pytest.raises(ValueError):
            search(TWO_UNIT, F(7, 2), SearchConfig(seed=0, budget=16), warm_start=fig1_schedule())

    def test_certification_firewall(self):
        # A schedule stretched by one part in 10^13 is exactly uncovered but
        # evaluates to a float objective of zero; the exact verifier must
        # reject it, so the search may not certify.
        eps = F(1, 10**13)
        stretched = proportional_zigzag_schedule(TWO_UNIT, (1 + eps))
        assert not verify(stretched).patrols
        out = search(
            TWO_UNIT,
            1 + eps,
            SearchConfig(seed=3, budget=48, period_multipliers=(1,)),
            warm_start=stretched,
        )
        assert out.status == EXHAUSTED
        assert out.best_schedule is None
        assert out.best_uncovered_area > 0


class TestFalsifyBound:
    def test_two_agents_never_beat_partition(self):
        rep = falsify_bound(2, "unit", trials=6, cfg=SearchConfig(seed=404, budget=3_000))
        assert rep.trials == 6
        assert rep.certifications == 0

    def test_three_agents_never_beat_partition(self):
        rep = falsify_bound(3, "unit", trials=6, cfg=SearchConfig(seed=404, budget=3_000))
        assert rep.certifications == 0

    def test_equal_speeds_never_beat_partition(self):
        rep = falsify_bound(
            4, "unit", trials=4, cfg=SearchConfig(seed=77, budget=3_000), equal_speeds=True
        )
        assert rep.certifications == 0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            falsify_bound(0, "unit", 1, SearchConfig())
        with pytest.raises(ValueError):
            falsify_bound(2, "sometimes", 1, SearchConfig())


class TestImproveRatio:
    def test_single_agent_is_exactly_half(self):
        out = improve_ratio(1, SearchConfig(seed=9, budget=2_000))
        assert out.best_ratio == F(1, 2)

    def test_two_agents_exactly_half(self):
        out = improve_ratio(2, SearchConfig(seed=9, budget=2_000))
        assert out.best_ratio == F(1, 2)

    def test_six_agents_reach_fig1_ratio(self):
        out = improve_ratio(6, SearchConfig(seed=9, budget=4_000))
        assert out.best_ratio >= F(21, 41)
        assert verify(out.best_schedule).patrols
        assert ratio(out.best_schedule) == out.best_ratio
