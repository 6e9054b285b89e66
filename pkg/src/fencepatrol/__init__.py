"""Exact toolkit for periodic multi-agent fence-patrolling schedules."""

from .core import (
    AgentSpec,
    InvalidScheduleError,
    Rational,
    Schedule,
    UncoveredRegion,
    Verdict,
    Violation,
    as_rational,
    common_period,
    rational,
    rational_lcm,
    validate_schedule,
)
from .coverage import ArcSet, IdleProfile, coverage_arcs, critical_positions, idle_profile, verify
from .document import DocumentError, ScheduleDocument, emit_document, parse_document
from .render import RenderOptions, render_svg
from .search import (
    CERTIFIED,
    EXHAUSTED,
    FalsifyReport,
    RatioOutcome,
    SearchConfig,
    SearchOutcome,
    falsify_bound,
    improve_ratio,
    search,
)
from .strategies import (
    BoundsReport,
    bounds,
    extend_with_agent,
    fig1_schedule,
    fig2_schedule,
    partition_schedule,
    proportional_zigzag_schedule,
    ratio,
    replicate_shifted,
    weighted_three_schedule,
)
from .trajectory import CrossingSet, Trajectory, constant, zigzag

__version__ = "0.1.0"

__all__ = [
    "AgentSpec",
    "ArcSet",
    "BoundsReport",
    "CERTIFIED",
    "CrossingSet",
    "DocumentError",
    "EXHAUSTED",
    "FalsifyReport",
    "IdleProfile",
    "InvalidScheduleError",
    "Rational",
    "RatioOutcome",
    "RenderOptions",
    "Schedule",
    "ScheduleDocument",
    "SearchConfig",
    "SearchOutcome",
    "Trajectory",
    "UncoveredRegion",
    "Verdict",
    "Violation",
    "as_rational",
    "bounds",
    "common_period",
    "constant",
    "coverage_arcs",
    "critical_positions",
    "emit_document",
    "extend_with_agent",
    "falsify_bound",
    "fig1_schedule",
    "fig2_schedule",
    "idle_profile",
    "improve_ratio",
    "parse_document",
    "partition_schedule",
    "proportional_zigzag_schedule",
    "ratio",
    "rational",
    "rational_lcm",
    "render_svg",
    "replicate_shifted",
    "search",
    "validate_schedule",
    "verify",
    "weighted_three_schedule",
    "zigzag",
]
