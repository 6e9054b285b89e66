"""JSON interchange format for schedules.

Rationals travel as strings ("7/3"), never as JSON numbers, so documents
round-trip losslessly.  Parsing is strict: unknown fields, malformed
rationals and version mismatches are rejected with the location of the
first error, keeping certification trustworthy.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .core import AgentSpec, Schedule
from .trajectory import Trajectory

FORMAT_VERSION = 1

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

_ALLOWED_TOP = {"format_version", "fence_length", "period", "agents", "metadata"}
_ALLOWED_AGENT = {"speed", "weight", "breakpoints"}
_ALLOWED_METADATA = {"name", "provenance", "seed"}


class DocumentError(ValueError):
    """Parse or validation failure, tagged with the JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ScheduleDocument:
    """A schedule plus optional metadata (name, provenance, seed)."""

    schedule: Schedule
    metadata: dict = field(default_factory=dict)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text, path: str = "value") -> Fraction:
    if not isinstance(text, str):
        raise DocumentError(path, f"expected a rational string, got {type(text).__name__}")
    if not _RATIONAL_RE.match(text):
        raise DocumentError(path, f"malformed rational {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise DocumentError(path, f"zero denominator in {text!r}") from None


def document_to_dict(doc: ScheduleDocument) -> dict:
    s = doc.schedule
    out = {
        "format_version": FORMAT_VERSION,
        "fence_length": format_rational(s.fence_length),
        "period": format_rational(s.period),
        "agents": [
            {
                "speed": format_rational(spec.speed),
                "weight": format_rational(spec.weight),
                "breakpoints": [
                    [format_rational(t), format_rational(x)] for t, x in traj.breakpoints
                ],
            }
            for spec, traj in s.agents
        ],
    }
    if doc.metadata:
        unknown = set(doc.metadata) - _ALLOWED_METADATA
        if unknown:
            raise DocumentError("metadata", f"unknown metadata fields {sorted(unknown)}")
        out["metadata"] = {k: doc.metadata[k] for k in sorted(doc.metadata)}
    return out


def dict_to_document(data, path: str = "$") -> ScheduleDocument:
    if not isinstance(data, dict):
        raise DocumentError(path, "expected a JSON object")
    unknown = set(data) - _ALLOWED_TOP
    if unknown:
        raise DocumentError(path, f"unknown fields {sorted(unknown)}")
    for key in ("format_version", "fence_length", "period", "agents"):
        if key not in data:
            raise DocumentError(path, f"missing field {key!r}")
    if data["format_version"] != FORMAT_VERSION:
        raise DocumentError(
            f"{path}.format_version",
            f"unsupported version {data['format_version']!r} (expected {FORMAT_VERSION})",
        )
    fence = parse_rational(data["fence_length"], f"{path}.fence_length")
    period = parse_rational(data["period"], f"{path}.period")
    if not isinstance(data["agents"], list) or not data["agents"]:
        raise DocumentError(f"{path}.agents", "expected a non-empty list")
    agents = []
    for i, entry in enumerate(data["agents"]):
        apath = f"{path}.agents[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(apath, "expected a JSON object")
        unknown = set(entry) - _ALLOWED_AGENT
        if unknown:
            raise DocumentError(apath, f"unknown fields {sorted(unknown)}")
        for key in _ALLOWED_AGENT:
            if key not in entry:
                raise DocumentError(apath, f"missing field {key!r}")
        speed = parse_rational(entry["speed"], f"{apath}.speed")
        weight = parse_rational(entry["weight"], f"{apath}.weight")
        bps = entry["breakpoints"]
        if not isinstance(bps, list) or len(bps) < 2:
            raise DocumentError(f"{apath}.breakpoints", "expected a list of at least two [t, x] pairs")
        pts = []
        for j, pair in enumerate(bps):
            bpath = f"{apath}.breakpoints[{j}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise DocumentError(bpath, "expected a [t, x] pair")
            pts.append(
                (parse_rational(pair[0], f"{bpath}[0]"), parse_rational(pair[1], f"{bpath}[1]"))
            )
        try:
            spec = AgentSpec(speed, weight)
            traj = Trajectory(period, tuple(pts))
        except ValueError as exc:
            raise DocumentError(apath, str(exc)) from None
        agents.append((spec, traj))
    metadata = {}
    if "metadata" in data:
        meta = data["metadata"]
        if not isinstance(meta, dict):
            raise DocumentError(f"{path}.metadata", "expected a JSON object")
        unknown = set(meta) - _ALLOWED_METADATA
        if unknown:
            raise DocumentError(f"{path}.metadata", f"unknown fields {sorted(unknown)}")
        metadata = dict(meta)
    try:
        schedule = Schedule(fence, period, tuple(agents))
    except ValueError as exc:
        raise DocumentError(path, str(exc)) from None
    return ScheduleDocument(schedule, metadata)


def emit_document(doc: ScheduleDocument) -> str:
    """Canonical, byte-deterministic JSON text."""
    return json.dumps(document_to_dict(doc), indent=2, sort_keys=True) + "\n"


def parse_document(text: str, path: str = "$") -> ScheduleDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(path, f"invalid JSON: {exc}") from None
    return dict_to_document(data, path)
