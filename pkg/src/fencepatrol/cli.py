"""Command-line interface: verify | build | search | render | bounds.

Exit codes: 0 success (schedule patrols / document emitted), 1 a well-formed
schedule fails (or the search is exhausted), 2 invalid input.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .core import AgentSpec, InvalidScheduleError
from .coverage import idle_profile, verify
from .document import (
    DocumentError,
    ScheduleDocument,
    emit_document,
    format_rational,
    parse_document,
    parse_rational,
)
from .render import RenderOptions, render_svg
from .search import CERTIFIED, SearchConfig, search
from .strategies import bounds, fig1_schedule, fig2_schedule, partition_schedule, ratio, weighted_three_schedule


def _parse_rational_arg(text: str, what: str) -> Fraction:
    try:
        return parse_rational(text, what)
    except DocumentError as exc:
        raise SystemExit(_fail2(str(exc)))


def _parse_list(text: str, what: str) -> list[Fraction]:
    return [_parse_rational_arg(part.strip(), what) for part in text.split(",") if part.strip()]


def _fail2(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _specs_from_args(args) -> list[AgentSpec]:
    speeds = _parse_list(args.speeds, "--speeds")
    if not speeds:
        raise SystemExit(_fail2("--speeds must list at least one rational"))
    if args.weights:
        weights = _parse_list(args.weights, "--weights")
        if len(weights) != len(speeds):
            raise SystemExit(_fail2("--weights must match --speeds in length"))
    else:
        weights = [Fraction(1)] * len(speeds)
    try:
        return [AgentSpec(v, w) for v, w in zip(speeds, weights)]
    except ValueError as exc:
        raise SystemExit(_fail2(str(exc)))


def _load_document(path: str) -> ScheduleDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SystemExit(_fail2(f"{path}: {exc.strerror or exc}"))
    try:
        return parse_document(text, path)
    except DocumentError as exc:
        raise SystemExit(_fail2(str(exc)))


def cmd_verify(args) -> int:
    doc = _load_document(args.path)
    schedule = doc.schedule
    try:
        verdict = verify(schedule)
    except InvalidScheduleError as exc:
        for v in exc.violations:
            print(f"invalid: {v.detail}", file=sys.stderr)
        return 2
    if verdict.patrols:
        print(
            f"PATROLS l={format_rational(schedule.fence_length)} "
            f"ratio={format_rational(ratio(schedule))}"
        )
        if len({spec.weight for spec, _ in schedule.agents}) == 1:
            profile = idle_profile(schedule)
            gap = "unbounded" if profile.global_max is None else format_rational(profile.global_max)
            print(f"idle max_gap={gap} at x={format_rational(profile.argmax_x)}")
        return 0
    x, t = verdict.witness
    print(
        f"FAILS witness=(x={format_rational(x)}, t={format_rational(t)}) "
        f"uncovered_area={format_rational(verdict.uncovered_area)} "
        f"regions={len(verdict.regions)}"
    )
    return 1


def cmd_build(args) -> int:
    if args.kind == "partition":
        if not args.speeds:
            return _fail2("build partition requires --speeds")
        specs = _specs_from_args(args)
        length = _parse_rational_arg(args.length, "--length") if args.length else None
        try:
            schedule = partition_schedule(specs, length)
        except ValueError as exc:
            return _fail2(str(exc))
    else:
        builder = {
            "fig1": fig1_schedule,
            "fig2": fig2_schedule,
            "weighted3": weighted_three_schedule,
        }[args.kind]
        schedule = builder()
    verdict = verify(schedule)
    if not verdict.patrols:
        return _fail2(f"refusing to emit an uncertified schedule (witness {verdict.witness})")
    sys.stdout.write(emit_document(ScheduleDocument(schedule, {"name": args.kind})))
    return 0


def cmd_search(args) -> int:
    specs = _specs_from_args(args)
    target = _parse_rational_arg(args.length, "--length")
    cfg = SearchConfig(
        seed=args.seed,
        budget=args.budget,
        waypoints_per_agent=args.waypoints,
        grid_denominator=args.grid_denominator,
        parallelism=args.parallel,
    )
    warm = _load_document(args.warm_start).schedule if args.warm_start else None
    try:
        outcome = search(specs, target, cfg, warm_start=warm)
    except ValueError as exc:
        return _fail2(str(exc))
    if outcome.status == CERTIFIED:
        metadata = {
            "name": "search-result",
            "provenance": (
                f"search seed={cfg.seed} budget={cfg.budget} grid=1/{cfg.grid_denominator} "
                f"waypoints={cfg.waypoints_per_agent} evaluations={outcome.evaluations}"
            ),
            "seed": cfg.seed,
        }
        sys.stdout.write(emit_document(ScheduleDocument(outcome.best_schedule, metadata)))
        return 0
    print(
        f"EXHAUSTED evaluations={outcome.evaluations} "
        f"best_uncovered_area={format_rational(outcome.best_uncovered_area)}"
    )
    return 1


def cmd_render(args) -> int:
    doc = _load_document(args.path)
    opts = RenderOptions(
        periods_shown=args.periods,
        px_per_space=_parse_rational_arg(args.px_space, "--px-space"),
        px_per_time=_parse_rational_arg(args.px_time, "--px-time"),
        band_opacity=_parse_rational_arg(args.opacity, "--opacity"),
        show_dotted_union=args.dotted,
    )
    try:
        svg = render_svg(doc.schedule, opts)
    except ValueError as exc:
        return _fail2(str(exc))
    try:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(svg)
    except OSError as exc:
        return _fail2(f"{args.out}: {exc.strerror or exc}")
    print(f"wrote {args.out}")
    return 0


def cmd_bounds(args) -> int:
    specs = _specs_from_args(args)
    report = bounds(specs)

    def dec(q: Fraction) -> str:
        return f"{q.numerator / q.denominator:.6f}"

    print(f"partition_length={format_rational(report.partition_length)} ({dec(report.partition_length)})")
    print(f"trivial_upper={format_rational(report.trivial_upper)} ({dec(report.trivial_upper)})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fencepatrol",
        description="Exact construction, verification, search and rendering of fence-patrolling schedules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a schedule document")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", help="emit a bundled or partition schedule")
    p.add_argument("kind", choices=["partition", "fig1", "fig2", "weighted3"])
    p.add_argument("--speeds", help="comma-separated rationals, e.g. 1,1,7/3")
    p.add_argument("--weights", help="comma-separated rationals, defaults to all 1")
    p.add_argument("--length", help="fence length (partition only; defaults to the bound)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="anneal for a schedule and certify exactly")
    p.add_argument("--speeds", required=True)
    p.add_argument("--weights")
    p.add_argument("--length", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--waypoints", type=int, default=8)
    p.add_argument("--grid-denominator", type=int, default=840)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--warm-start", help="schedule document to seed the chain")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="write a space-time SVG diagram")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--periods", type=int, default=2)
    p.add_argument("--px-space", default="60")
    p.add_argument("--px-time", default="40")
    p.add_argument("--opacity", default="11/20")
    p.add_argument("--dotted", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bounds", help="print partition and trivial length bounds")
    p.add_argument("--speeds", required=True)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_bounds)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
