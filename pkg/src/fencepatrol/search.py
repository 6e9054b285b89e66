"""Stochastic schedule search with exact certification.

A simulated-annealing walk explores per-agent waypoint encodings, scored by
a fast floating-point estimate of the uncovered space-time measure.  The
float score only ever *proposes*: before any candidate is reported as
Certified, its breakpoints are snapped to a rational grid and the exact
verifier must accept the snapped schedule.  Exhausted outcomes never prove
nonexistence.

Runs are deterministic: all randomness flows from one seeded generator in a
fixed order, proposals are evaluated in batches whose merge rule is
(objective, proposal index), and the parallelism hint only changes how a
batch is scheduled, never its content.
"""
from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import AgentSpec, Schedule, as_rational, validate_schedule
from .coverage import verify
from .strategies import bounds, proportional_zigzag_schedule
from .trajectory import Trajectory

__all__ = [
    "CERTIFIED",
    "EXHAUSTED",
    "SearchConfig",
    "SearchOutcome",
    "FalsifyReport",
    "RatioOutcome",
    "search",
    "falsify_bound",
    "improve_ratio",
]

CERTIFIED = "certified"
EXHAUSTED = "exhausted"

_ZERO_TOL = 1e-9

_ROWS_CACHE: dict[int, "np.ndarray"] = {}


def _rows(n: int):
    rows = _ROWS_CACHE.get(n)
    if rows is None:
        rows = np.arange(n)[:, None]
        _ROWS_CACHE[n] = rows
    return rows


@dataclass(frozen=True)
class SearchConfig:
    """Reproducibility and effort knobs for the annealing search.

    grid_denominator is the snap grid: candidate breakpoints are rounded to
    multiples of 1/D before exact verification (840 = lcm(1..8) admits all
    the bundled schedules' constants).  parallelism is a scheduling hint
    only; identical (seed, budget, config) give identical outcomes at any
    worker count.
    """

    seed: int = 0
    budget: int = 10_000
    waypoints_per_agent: int = 8
    grid_denominator: int = 840
    initial_temperature: float = 1.0
    cooling: float = 0.99
    parallelism: int = 1
    batch_size: int = 8
    period_multipliers: tuple[int, ...] = (1, 2)
    max_certify_attempts: int = 16
    sample_grid: int = 25
    # Converged chains stop early: temperature below temp_floor and no
    # relative improvement of at least stale_rtol for `patience` consecutive
    # super-steps.  The budget stays a hard cap either way.
    temp_floor: float = 2e-3
    patience: int = 120
    stale_rtol: float = 1e-3


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one search run.

    best_schedule is present only for Certified outcomes and is always the
    exact, re-verified schedule.  best_uncovered_area is the smallest exact
    uncovered measure among the snapped candidates that were verified (the
    full space-time measure if none could be).
    """

    status: str
    best_schedule: Schedule | None
    best_uncovered_area: Fraction
    evaluations: int


class _Candidate:
    """Per-agent waypoint arrays; `exact` survives until the first mutation."""

    __slots__ = ("times", "xs", "exact", "_segments")

    def __init__(self, times, xs, exact=None):
        self.times = times
        self.xs = xs
        self.exact = exact
        self._segments = None

    def copy(self):
        return _Candidate([t.copy() for t in self.times], [x.copy() for x in self.xs], None)

    def segments(self, period, weights):
        """Cached flat segment arrays (t0, t1, x0, x1, weight)."""
        if self._segments is None:
            t0 = np.concatenate(self.times)
            x0 = np.concatenate(self.xs)
            t1_parts = []
            x1_parts = []
            w_parts = []
            for i, (t, x) in enumerate(zip(self.times, self.xs)):
                t1 = np.empty(len(t))
                t1[:-1] = t[1:]
                t1[-1] = period
                x1 = np.empty(len(x))
                x1[:-1] = x[1:]
                x1[-1] = x[0]
                t1_parts.append(t1)
                x1_parts.append(x1)
                w_parts.append(np.full(len(t), weights[i]))
            self._segments = (
                t0,
                np.concatenate(t1_parts),
                x0,
                np.concatenate(x1_parts),
                np.concatenate(w_parts),
            )
        return self._segments


def _encode(schedule: Schedule) -> _Candidate:
    times = []
    xs = []
    for _, traj in schedule.agents:
        pts = traj.breakpoints[:-1]
        times.append(np.array([float(t) for t, _ in pts]))
        xs.append(np.array([float(x) for _, x in pts]))
    return _Candidate(times, xs, schedule)


def _objective(cand: _Candidate, speeds, weights, period, fence, base_grid):
    """Float estimate of the uncovered measure plus a worst-gap penalty.

    Samples the fence at the base grid, every candidate waypoint position
    and all midpoints between consecutive samples, computes visit times per
    column, and measures the gaps left by the union of arcs (visit,
    visit + weight] on the time circle.  Plateau segments are ignored, which
    can only overestimate the uncovered measure (the exact verifier is the
    sole authority anyway).
    """
    t0, t1, x0, x1, w = cand.segments(period, weights)

    columns = np.sort(np.concatenate((base_grid, x0)))
    keep = np.empty(len(columns), dtype=bool)
    keep[0] = True
    np.not_equal(columns[1:], columns[:-1], out=keep[1:])
    columns = columns[keep]
    mids = (columns[1:] + columns[:-1]) * 0.5
    X = np.sort(np.concatenate((columns, mids)))

    lo = np.minimum(x0, x1)[:, None]
    hi = np.maximum(x0, x1)[:, None]
    dx = x1 - x0
    sloped = dx != 0.0
    inv = np.zeros_like(dx)
    np.divide(t1 - t0, dx, out=inv, where=sloped)
    crossing = (lo <= X[None, :]) & (X[None, :] <= hi) & sloped[:, None]
    tv = t0[:, None] + (X[None, :] - x0[:, None]) * inv[:, None]
    # Pack (visit time, weight) in one complex value: sorting by real part
    # carries the weights along in a single pass, NaNs last.
    C = np.where(crossing, tv + 1j * w[:, None], np.nan)
    C = np.sort(C, axis=0)
    Vs = C.real
    Ws = C.imag
    counts = crossing.sum(axis=0)
    rows = _rows(Vs.shape[0])
    real = rows < counts[None, :]

    first = np.where(counts > 0, Vs[0, :], 0.0)
    nxt = np.empty_like(Vs)
    nxt[:-1, :] = Vs[1:, :]
    nxt[-1, :] = np.nan
    is_last = rows == (counts - 1)[None, :]
    nxt = np.where(is_last, first[None, :] + period, nxt)
    ends = np.where(real, Vs + Ws, -np.inf)
    cummax = np.maximum.accumulate(ends, axis=0)
    # Arcs reaching past the period wrap around and shield the early gaps of
    # the circle; fold that coverage in before measuring any gap.
    wrap_in = cummax[-1, :] - period
    np.maximum(cummax, wrap_in[None, :], out=cummax)
    gaps = np.where(real, nxt - cummax, 0.0)
    np.maximum(gaps, 0.0, out=gaps)
    uncovered = gaps.sum(axis=0)
    uncovered = np.where(counts == 0, period, uncovered)
    worst = float(gaps.max()) if gaps.size else 0.0
    if np.any(counts == 0):
        worst = max(worst, period)

    area = float(np.sum((uncovered[1:] + uncovered[:-1]) * np.diff(X))) * 0.5
    return area + 0.1 * fence * worst


def _snap(cand: _Candidate, specs, period: Fraction, fence: Fraction, D: int) -> Schedule | None:
    """Round waypoints to the 1/D grid and build an exact schedule.

    Returns None when the snapped data violates the schedule invariants
    (for example a full-speed segment pushed past its speed bound).
    """
    agents = []
    for spec, t_arr, x_arr in zip(specs, cand.times, cand.xs):
        pts: list[tuple[Fraction, Fraction]] = []
        for t, x in zip(t_arr, x_arr):
            tq = Fraction(round(t * D), D)
            xq = min(max(Fraction(round(x * D), D), Fraction(0)), fence)
            if tq >= period or tq < 0:
                continue
            if pts and tq == pts[-1][0]:
                continue
            pts.append((tq, xq))
        if not pts or pts[0][0] != 0:
            return None
        pts.append((period, pts[0][1]))
        try:
            agents.append((spec, Trajectory(period, tuple(pts))))
        except ValueError:
            return None
    schedule = Schedule(fence, period, tuple(agents))
    if validate_schedule(schedule):
        return None
    return schedule


def _interp_circular(t_arr, x_arr, period, tau):
    ts = np.append(t_arr, period)
    xs = np.append(x_arr, x_arr[0])
    i = int(np.searchsorted(ts, tau, side="right")) - 1
    i = max(0, min(i, len(ts) - 2))
    if ts[i + 1] == ts[i]:
        return float(xs[i])
    lam = (tau - ts[i]) / (ts[i + 1] - ts[i])
    return float(xs[i] + (xs[i + 1] - xs[i]) * lam)


def _reach_window(cand, agent, j, speed, period, fence):
    """Feasible position window for waypoint j given its circular neighbours."""
    t = cand.times[agent]
    x = cand.xs[agent]
    n = len(t)
    jp = (j - 1) % n
    jn = (j + 1) % n
    dt_prev = t[j] - t[jp] if j > 0 else t[j] + (period - t[-1])
    dt_next = t[jn] - t[j] if j < n - 1 else (period - t[j]) + t[0]
    lo = max(0.0, x[jp] - speed * dt_prev, x[jn] - speed * dt_next)
    hi = min(fence, x[jp] + speed * dt_prev, x[jn] + speed * dt_next)
    return lo, hi


def _mutate(rng, cand: _Candidate, speeds, period, fence, temp, max_pts):
    new = cand.copy()
    agent = int(rng.integers(len(new.times)))
    speed = speeds[agent]
    t = new.times[agent]
    x = new.xs[agent]
    n = len(t)
    kind = rng.random()
    if kind < 0.70 or n < 3:
        j = int(rng.integers(n))
        lo, hi = _reach_window(new, agent, j, speed, period, fence)
        if lo > hi:
            return new
        sigma = max(1e-3, 0.15 * fence * max(temp, 0.05))
        prop = x[j] + rng.normal() * sigma
        x[j] = min(max(prop, lo), hi)
    elif kind < 0.80 and n >= 3:
        j = int(rng.integers(1, n))
        lo_t = t[j - 1]
        hi_t = t[j + 1] if j + 1 < n else period
        span = hi_t - lo_t
        prop = t[j] + rng.normal() * 0.25 * span
        eps = span * 1e-3
        t[j] = min(max(prop, lo_t + eps), hi_t - eps)
        lo, hi = _reach_window(new, agent, j, speed, period, fence)
        if lo > hi:
            x[j] = 0.5 * (lo + hi)
        else:
            x[j] = min(max(x[j], lo), hi)
    elif kind < 0.87 and n < max_pts:
        tau = float(rng.uniform(0.0, period))
        pos = int(np.searchsorted(t, tau, side="right"))
        if pos == 0 or (pos < n and abs(t[pos] - tau) < 1e-9):
            return new
        val = _interp_circular(t, x, period, tau)
        new.times[agent] = np.insert(t, pos, tau)
        new.xs[agent] = np.insert(x, pos, val)
        j = pos
        lo, hi = _reach_window(new, agent, j, speed, period, fence)
        if lo <= hi:
            jig = val + rng.normal() * 0.1 * fence
            new.xs[agent][j] = min(max(jig, lo), hi)
    elif kind < 0.94 and n > 3:
        j = int(rng.integers(1, n))
        new.times[agent] = np.delete(t, j)
        new.xs[agent] = np.delete(x, j)
    else:
        delta = float(rng.uniform(0.0, period))
        ts = (t + delta) % period
        order = np.argsort(ts, kind="stable")
        ts = ts[order]
        vs = x[order]
        if ts[0] > 1e-12:
            ts = np.insert(ts, 0, 0.0)
            vs = np.insert(vs, 0, _interp_circular(t, x, period, (0.0 - delta) % period))
        else:
            ts[0] = 0.0
        new.times[agent] = ts
        new.xs[agent] = vs
    return new


def _random_candidate(rng, specs, period, fence, waypoints):
    """Random per-agent zigzags sampled onto uniform waypoint times."""
    times = []
    xs = []
    for spec in specs:
        v = float(spec.speed)
        n_trips = int(rng.integers(1, 3))
        span_max = min(fence, v * period / (2 * n_trips))
        span = span_max * (0.3 + 0.7 * rng.random())
        lo = rng.uniform(0.0, fence - span) if fence > span else 0.0
        phase = rng.uniform(0.0, period)
        t_arr = np.linspace(0.0, period, waypoints, endpoint=False)
        half = period / (2 * n_trips)

        def zig(tv):
            u = (tv - phase) % (2 * half)
            return lo + (span * u / half if u <= half else span * (2 * half - u) / half)

        x_arr = np.array([zig(tv) for tv in t_arr])
        times.append(t_arr)
        xs.append(x_arr)
    return _Candidate(times, xs, None)


def _run_chain(specs, target_l, period, cfg, rng, budget, seeds, executor):
    """One annealing chain at a fixed period.  Returns (outcome or None, evals, best_area)."""
    speeds = [float(s.speed) for s in specs]
    weights = [float(s.weight) for s in specs]
    period_f = float(period)
    fence_f = float(target_l)
    base_grid = np.linspace(0.0, fence_f, cfg.sample_grid)
    D = cfg.grid_denominator

    evaluations = 0
    certify_attempts = 0
    attempted: set = set()
    best_area: Fraction | None = None

    def try_certify(candidate):
        nonlocal certify_attempts, best_area
        if certify_attempts >= cfg.max_certify_attempts:
            return None
        schedule = candidate.exact or _snap(candidate, specs, period, target_l, D)
        if schedule is None:
            certify_attempts += 1
            return None
        key = tuple(traj.breakpoints for _, traj in schedule.agents)
        if key in attempted:
            return None
        attempted.add(key)
        certify_attempts += 1
        if validate_schedule(schedule):
            return None
        verdict = verify(schedule)
        if best_area is None or verdict.uncovered_area < best_area:
            best_area = verdict.uncovered_area
        if verdict.patrols:
            return schedule
        return None

    current = seeds[0]
    cur_obj = _objective(current, speeds, weights, period_f, fence_f, base_grid)
    evaluations += 1
    best_cand, best_obj = current, cur_obj
    if cur_obj < _ZERO_TOL:
        found = try_certify(current)
        if found is not None:
            return SearchOutcome(CERTIFIED, found, Fraction(0), evaluations), evaluations, best_area

    pending_seeds = list(seeds[1:])
    temp = cfg.initial_temperature
    stale_steps = 0
    max_pts = 2 * cfg.waypoints_per_agent
    while evaluations < budget:
        batch = []
        for _ in range(min(cfg.batch_size, budget - evaluations)):
            if pending_seeds:
                batch.append(pending_seeds.pop(0))
            else:
                batch.append(_mutate(rng, current, speeds, period_f, fence_f, temp, max_pts))
        accept_u = rng.random()
        if executor is not None:
            objs = list(
                executor.map(
                    lambda c: _objective(c, speeds, weights, period_f, fence_f, base_grid), batch
                )
            )
        else:
            objs = [_objective(c, speeds, weights, period_f, fence_f, base_grid) for c in batch]
        evaluations += len(batch)
        idx = min(range(len(batch)), key=lambda i: (objs[i], i))
        prop, prop_obj = batch[idx], objs[idx]
        if prop_obj < best_obj:
            if prop_obj < best_obj * (1.0 - cfg.stale_rtol):
                stale_steps = 0
            else:
                stale_steps += 1
            best_cand, best_obj = prop, prop_obj
        else:
            stale_steps += 1
        if prop_obj < _ZERO_TOL:
            found = try_certify(prop)
            if found is not None:
                return SearchOutcome(CERTIFIED, found, Fraction(0), evaluations), evaluations, best_area
        if prop_obj <= cur_obj or accept_u < float(np.exp(-(prop_obj - cur_obj) / max(temp, 1e-12))):
            current, cur_obj = prop, prop_obj
        temp *= cfg.cooling
        if temp < cfg.temp_floor and stale_steps >= cfg.patience:
            break

    found = try_certify(best_cand)
    if found is not None:
        return SearchOutcome(CERTIFIED, found, Fraction(0), evaluations), evaluations, best_area
    return None, evaluations, best_area


def search(specs, target_l, cfg: SearchConfig, warm_start: Schedule | None = None) -> SearchOutcome:
    """Look for a schedule of the given agents patrolling [0, target_l].

    The annealing chain starts from the proportional-partition layout (and
    the warm_start schedule when given) and runs once per entry of
    cfg.period_multipliers, splitting the evaluation budget evenly.  A
    Certified outcome always carries an exactly verified schedule; Exhausted
    only means the budget ran out.
    """
    specs = [s if isinstance(s, AgentSpec) else AgentSpec(*s) for s in specs]
    target_l = as_rational(target_l)
    if target_l <= 0:
        raise ValueError("target length must be positive")
    rng = np.random.default_rng(cfg.seed)
    executor = ThreadPoolExecutor(max_workers=cfg.parallelism) if cfg.parallelism > 1 else None

    base = proportional_zigzag_schedule(specs, target_l)
    if warm_start is not None:
        if [s for s, _ in warm_start.agents] != specs:
            raise ValueError("warm start agents do not match the requested specs")
        periods = [warm_start.period]
    else:
        periods = [base.period * m for m in cfg.period_multipliers]

    total_evals = 0
    best_area: Fraction | None = None
    try:
        remaining = cfg.budget
        for i, period in enumerate(periods):
            budget = remaining if i == len(periods) - 1 else cfg.budget // len(periods)
            remaining -= budget
            if budget <= 0:
                continue
            seeds = []
            if warm_start is not None and period == warm_start.period:
                seeds.append(_encode(warm_start))
            if base.period == period or (period / base.period).denominator == 1:
                tiled = Schedule(
                    target_l,
                    period,
                    tuple(
                        (spec, traj.retile(int(period / base.period)))
                        for spec, traj in base.agents
                    ),
                )
                seeds.append(_encode(tiled))
            seeds.append(_random_candidate(rng, specs, float(period), float(target_l), cfg.waypoints_per_agent))
            outcome, evals, area = _run_chain(
                specs, target_l, period, cfg, rng, budget, seeds, executor
            )
            total_evals += evals
            if area is not None and (best_area is None or area < best_area):
                best_area = area
            if outcome is not None:
                assert outcome.best_schedule.fence_length <= sum(
                    (s.speed * s.weight for s in specs), Fraction(0)
                ), "certified schedule violates the trivial upper bound"
                return dataclasses.replace(outcome, evaluations=total_evals)
    finally:
        if executor is not None:
            executor.shutdown()
    if best_area is None:
        best_area = target_l * periods[0]
    return SearchOutcome(EXHAUSTED, None, best_area, total_evals)


@dataclass(frozen=True)
class FalsifyReport:
    """Tally of certification attempts against a stated optimality bound."""

    k: int
    weight_mode: str
    trials: int
    certifications: int
    certified_specs: tuple[tuple[AgentSpec, ...], ...]


def falsify_bound(
    k: int,
    weight_mode: str = "unit",
    trials: int = 100,
    cfg: SearchConfig = SearchConfig(),
    equal_speeds: bool = False,
) -> FalsifyReport:
    """Try to beat the partition length by 1% on random agent tuples.

    Draws random speed tuples (equal_speeds forces one shared speed) and,
    when weight_mode is "random", random weights; each trial searches at
    target 101/100 of the partition length.  Any certification is an exact
    counterexample to partition optimality for that tuple.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if weight_mode not in ("unit", "random"):
        raise ValueError("weight_mode must be 'unit' or 'random'")
    rng = np.random.default_rng(cfg.seed)
    weight_pool = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
    certified = []
    for trial in range(trials):
        if equal_speeds:
            v = Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 4)))
            speeds = [v] * k
        else:
            speeds = [Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 4))) for _ in range(k)]
        if weight_mode == "random":
            weights = [weight_pool[int(rng.integers(len(weight_pool)))] for _ in range(k)]
        else:
            weights = [Fraction(1)] * k
        specs = [AgentSpec(v, w) for v, w in zip(speeds, weights)]
        target = bounds(specs).partition_length * Fraction(101, 100)
        trial_cfg = dataclasses.replace(cfg, seed=int(rng.integers(2**63)))
        outcome = search(specs, target, trial_cfg)
        if outcome.status == CERTIFIED:
            certified.append(tuple(specs))
    return FalsifyReport(k, weight_mode, trials, len(certified), tuple(certified))


@dataclass(frozen=True)
class RatioOutcome:
    """Best exact patrolled-length ratio found, with its certified schedule."""

    best_ratio: Fraction
    best_schedule: Schedule
    evaluations: int


def improve_ratio(k_max: int, cfg: SearchConfig = SearchConfig()) -> RatioOutcome:
    """Maximize fence_length / sum(v_i T_i) over speed tuples and schedules.

    The proportional partition pins the floor at exactly 1/2 (and for one or
    two agents that floor is optimal, so no search is spent there).  From
    six agents up, the bundled six-agent schedule is used as a warm start and
    yields at least 21/41; random tuples get small search budgets on top.
    """
    from .strategies import fig1_schedule, partition_schedule, ratio

    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    baseline = partition_schedule([AgentSpec(1)] * k_max)
    best = RatioOutcome(Fraction(1, 2), baseline, 0)
    if k_max < 3:
        return best
    evaluations = 0
    if k_max >= 6:
        f1 = fig1_schedule()
        outcome = search(
            [s for s, _ in f1.agents],
            f1.fence_length,
            dataclasses.replace(cfg, budget=max(64, cfg.budget // 20)),
            warm_start=f1,
        )
        evaluations += outcome.evaluations
        if outcome.status == CERTIFIED:
            r = ratio(outcome.best_schedule)
            if r > best.best_ratio:
                best = RatioOutcome(r, outcome.best_schedule, evaluations)
    rng = np.random.default_rng(cfg.seed + 1)
    trials = max(1, cfg.budget // 2000)
    for _ in range(trials):
        k = int(rng.integers(3, k_max + 1))
        speeds = [Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 4))) for _ in range(k)]
        specs = [AgentSpec(v) for v in speeds]
        b = bounds(specs)
        target = b.partition_length * Fraction(102, 100)
        outcome = search(specs, target, dataclasses.replace(cfg, seed=int(rng.integers(2**63)), budget=2000))
        evaluations += outcome.evaluations
        if outcome.status == CERTIFIED:
            r = target / b.trivial_upper
            if r > best.best_ratio:
                best = RatioOutcome(r, outcome.best_schedule, evaluations)
    return dataclasses.replace(best, evaluations=evaluations)
