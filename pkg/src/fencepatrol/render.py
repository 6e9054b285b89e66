"""Space-time diagrams of schedules as SVG.

The fence runs horizontally, time flows upward.  Each agent contributes one
shaded band per displayed period: its trajectory polyline swept upward by
its weight (the band's lower edge is the motion itself).  All geometry is
computed with rationals and printed at a fixed six-decimal precision, so the
output text is deterministic; coordinates are display-only and never flow
back into verification.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Schedule, as_rational

__all__ = ["RenderOptions", "render_svg"]

_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#59a14f",
    "#e15759",
    "#b07aa1",
    "#76b7b2",
    "#edc948",
    "#9c755f",
    "#bab0ac",
)


@dataclass(frozen=True)
class RenderOptions:
    periods_shown: int = 2
    px_per_space: Fraction = Fraction(60)
    px_per_time: Fraction = Fraction(40)
    band_opacity: Fraction = Fraction(11, 20)
    palette: tuple[str, ...] = _PALETTE
    show_dotted_union: bool = False
    margin: Fraction = Fraction(10)

    def __post_init__(self):
        if self.periods_shown < 1:
            raise ValueError("periods_shown must be >= 1")
        object.__setattr__(self, "px_per_space", as_rational(self.px_per_space))
        object.__setattr__(self, "px_per_time", as_rational(self.px_per_time))
        object.__setattr__(self, "band_opacity", as_rational(self.band_opacity))
        object.__setattr__(self, "margin", as_rational(self.margin))


def _decimal(value: Fraction, places: int = 6) -> str:
    """Fixed-point decimal string computed with integer arithmetic."""
    value = Fraction(value)
    scale = 10**places
    scaled = value * scale
    units = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator - units * scaled.denominator) >= scaled.denominator:
        units += 1
    sign = "-" if units < 0 else ""
    units = abs(units)
    whole, frac = divmod(units, scale)
    text = f"{sign}{whole}.{frac:0{places}d}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def _clip_polygon(points, t_lo, t_hi):
    """Clip a polygon to the horizontal strip t_lo <= t <= t_hi, exactly."""

    def clip(pts, keep, boundary):
        out = []
        n = len(pts)
        for i in range(n):
            cur = pts[i]
            nxt = pts[(i + 1) % n]
            cur_in = keep(cur)
            nxt_in = keep(nxt)
            if cur_in:
                out.append(cur)
            if cur_in != nxt_in:
                (x0, t0), (x1, t1) = cur, nxt
                if t1 != t0:
                    lam = (boundary - t0) / (t1 - t0)
                    out.append((x0 + (x1 - x0) * lam, boundary))
        return out

    pts = clip(points, lambda p: p[1] >= t_lo, t_lo)
    if pts:
        pts = clip(pts, lambda p: p[1] <= t_hi, t_hi)
    return pts


def _dedupe_ring(points):
    out = []
    for p in points:
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def render_svg(schedule: Schedule, opts: RenderOptions | None = None) -> str:
    """Deterministic SVG 1.1 document for the schedule's space-time diagram."""
    opts = opts or RenderOptions()
    period = schedule.period
    l = schedule.fence_length
    t_top = period * opts.periods_shown
    width = l * opts.px_per_space + 2 * opts.margin
    height = t_top * opts.px_per_time + 2 * opts.margin

    def to_px(x, t):
        # Horizontal axis is position, vertical is time growing upward.
        px = opts.margin + x * opts.px_per_space
        py = opts.margin + (t_top - t) * opts.px_per_time
        return f"{_decimal(px)},{_decimal(py)}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_decimal(width)}" height="{_decimal(height)}" '
        f'viewBox="0 0 {_decimal(width)} {_decimal(height)}">',
        f'<rect x="{_decimal(opts.margin)}" y="{_decimal(opts.margin)}" '
        f'width="{_decimal(l * opts.px_per_space)}" height="{_decimal(t_top * opts.px_per_time)}" '
        'fill="white" stroke="#333333" stroke-width="1"/>',
    ]
    for idx, (spec, traj) in enumerate(schedule.agents):
        color = opts.palette[idx % len(opts.palette)]
        parts.append(f'<g id="agent-{idx}" fill="{color}" fill-opacity="{_decimal(opts.band_opacity)}">')
        # One band per displayed period, plus the copy from the period below
        # whose swept top pokes into the displayed window.  Each band is
        # emitted as one parallelogram per trajectory segment: a single
        # polygon would self-intersect wherever the motion doubles back and
        # the fill rules would punch holes into the overlap.  Bands are
        # clipped to the window by explicit polygon splitting.
        for copy in range(-1, opts.periods_shown):
            offset = period * copy
            for t0, t1, x0, x1 in traj.segments():
                if x0 == x1:
                    # A standing agent covers a zero-width column; nothing to fill.
                    continue
                quad = [
                    (x0, t0 + offset),
                    (x1, t1 + offset),
                    (x1, t1 + offset + spec.weight),
                    (x0, t0 + offset + spec.weight),
                ]
                clipped = _dedupe_ring(_clip_polygon(quad, Fraction(0), t_top))
                if len(clipped) < 3:
                    continue
                pts = " ".join(to_px(x, t) for x, t in clipped)
                parts.append(f'<polygon points="{pts}"/>')
        if opts.show_dotted_union:
            for copy in range(opts.periods_shown):
                offset = period * copy
                pts = " ".join(to_px(x, t + offset) for t, x in traj.breakpoints)
                parts.append(
                    f'<polyline points="{pts}" fill="none" stroke="{color}" '
                    'stroke-width="1" stroke-dasharray="3,3"/>'
                )
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
