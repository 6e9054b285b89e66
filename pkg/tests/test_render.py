import xml.etree.ElementTree as ET
from fractions import Fraction as F

from fencepatrol.core import AgentSpec, Schedule
from fencepatrol.render import RenderOptions, render_svg
from fencepatrol.strategies import fig1_schedule
from fencepatrol.trajectory import zigzag

NS = "{http://www.w3.org/2000/svg}"


def band_groups(svg_text):
    root = ET.fromstring(svg_text)
    return [g for g in root.iter(f"{NS}g") if g.get("id", "").startswith("agent-")]


def test_fig1_has_six_band_groups():
    svg = render_svg(fig1_schedule())
    groups = band_groups(svg)
    assert len(groups) == 6
    assert all(len(g.findall(f"{NS}polygon")) >= 1 for g in groups)


def test_single_zigzag_parses_one_band():
    s = Schedule(F(1, 2), 1, ((AgentSpec(1), zigzag(0, F(1, 2), 1, 0, 1)),))
    svg = render_svg(s, RenderOptions(periods_shown=1))
    assert len(band_groups(svg)) == 1
    ET.fromstring(svg)


def test_byte_determinism():
    a = render_svg(fig1_schedule())
    b = render_svg(fig1_schedule())
    assert a == b


def test_height_scales_with_periods():
    s = fig1_schedule()
    one = ET.fromstring(render_svg(s, RenderOptions(periods_shown=1)))
    two = ET.fromstring(render_svg(s, RenderOptions(periods_shown=2)))
    margin = 10.0
    h1 = float(one.get("height")) - 2 * margin
    h2 = float(two.get("height")) - 2 * margin
    assert abs(h2 - 2 * h1) < 1e-6


def test_band_lower_edge_interpolates_breakpoints():
    s = Schedule(F(1, 2), 1, ((AgentSpec(1), zigzag(0, F(1, 2), 1, 0, 1)),))
    opts = RenderOptions(periods_shown=1, px_per_space=F(100), px_per_time=F(100), margin=F(0))
    svg = render_svg(s, opts)
    group = band_groups(svg)[0]
    polygon_points = {
        tuple(pt.split(","))
        for poly in group.findall(f"{NS}polygon")
        for pt in poly.get("points").split()
    }
    # Breakpoint (t=1/2, x=1/2) maps to px x=50, y=(1 - 1/2)*100 = 50.
    assert ("50", "50") in polygon_points
    # Breakpoint (t=0, x=0) maps to (0, 100).
    assert ("0", "100") in polygon_points


def test_dotted_overlay_flag():
    svg = render_svg(fig1_schedule(), RenderOptions(show_dotted_union=True))
    assert "stroke-dasharray" in svg
    assert "stroke-dasharray" not in render_svg(fig1_schedule())


def _point_in_polygon(px, py, ring):
    inside = False
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        if (y1 > py) != (y2 > py):
            t = (py - y1) / (y2 - y1)
            if px < x1 + (x2 - x1) * t:
                inside = not inside
    return inside


def test_bands_cover_diagram_above_warmup():
    # For a certified schedule the union of bands covers the drawing window
    # minus the bottom warm-up strip of height max weight.
    s = fig1_schedule()
    opts = RenderOptions(periods_shown=2, px_per_space=F(40), px_per_time=F(40), margin=F(0))
    svg = render_svg(s, opts)
    root = ET.fromstring(svg)
    rings = []
    for g in root.iter(f"{NS}g"):
        if not g.get("id", "").startswith("agent-"):
            continue
        for poly in g.findall(f"{NS}polygon"):
            ring = [tuple(map(float, pt.split(","))) for pt in poly.get("points").split()]
            rings.append(ring)
    width = float(root.get("width"))
    height = float(root.get("height"))
    warmup_px = 1 * 40.0  # max weight is 1
    misses = 0
    samples = 0
    for i in range(1, 14):
        for j in range(1, 14):
            px = width * i / 14
            py = (height - warmup_px) * j / 14  # strictly above the warm-up strip
            samples += 1
            if not any(_point_in_polygon(px, py, ring) for ring in rings):
                misses += 1
    assert samples == 169
    assert misses == 0
