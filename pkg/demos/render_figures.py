"""Render the bundled schedules as space-time SVG diagrams.

Writes out/fig1.svg, out/fig2.svg and out/weighted3.svg: position runs
horizontally, time upward, and each agent's shaded band is its motion swept
up by its weight.

Run from the repository root:  python demos/render_figures.py
"""
from pathlib import Path

from fencepatrol import (
    RenderOptions,
    fig1_schedule,
    fig2_schedule,
    render_svg,
    weighted_three_schedule,
)

OUT = Path(__file__).parent.parent / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    jobs = [
        ("fig1", fig1_schedule(), RenderOptions(periods_shown=2, show_dotted_union=True)),
        ("fig2", fig2_schedule(), RenderOptions(periods_shown=3, px_per_space=30)),
        ("weighted3", weighted_three_schedule(), RenderOptions(periods_shown=2)),
    ]
    for name, schedule, opts in jobs:
        path = OUT / f"{name}.svg"
        path.write_text(render_svg(schedule, opts), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
