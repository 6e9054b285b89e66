import json
import random
from fractions import Fraction as F

import pytest

from fencepatrol.document import (
    DocumentError,
    ScheduleDocument,
    emit_document,
    format_rational,
    parse_document,
    parse_rational,
)
from fencepatrol.strategies import fig1_schedule, fig2_schedule, partition_schedule, weighted_three_schedule

from util import random_schedule


def test_rational_string_round_trip():
    for text in ("7/3", "-1/2", "0", "41"):
        assert format_rational(parse_rational(text)) == text


def test_parse_rational_rejections():
    for bad in ("7/0", "1.5", "a/b", "1/-2", ""):
        with pytest.raises(DocumentError):
            parse_rational(bad)


def test_document_round_trip_fixtures():
    for builder in (fig1_schedule, fig2_schedule, weighted_three_schedule):
        doc = ScheduleDocument(builder(), {"name": "x"})
        text = emit_document(doc)
        back = parse_document(text)
        assert back.schedule == doc.schedule
        assert back.metadata == doc.metadata
        assert emit_document(back) == text


def test_document_round_trip_random():
    rng = random.Random(11)
    for _ in range(25):
        s = random_schedule(rng)
        text = emit_document(ScheduleDocument(s))
        back = parse_document(text)
        assert back.schedule == s
        assert emit_document(back) == text


def test_unknown_top_level_field_rejected():
    data = json.loads(emit_document(ScheduleDocument(partition_schedule([(1, 1)]))))
    data["surprise"] = 1
    with pytest.raises(DocumentError, match="unknown fields"):
        parse_document(json.dumps(data))


def test_unknown_agent_field_rejected():
    data = json.loads(emit_document(ScheduleDocument(partition_schedule([(1, 1)]))))
    data["agents"][0]["color"] = "red"
    with pytest.raises(DocumentError, match="agents\\[0\\]"):
        parse_document(json.dumps(data))


def test_version_gate():
    data = json.loads(emit_document(ScheduleDocument(partition_schedule([(1, 1)]))))
    data["format_version"] = 2
    with pytest.raises(DocumentError, match="version"):
        parse_document(json.dumps(data))


def test_zero_denominator_reports_location():
    data = json.loads(emit_document(ScheduleDocument(partition_schedule([(1, 1)]))))
    data["fence_length"] = "7/0"
    with pytest.raises(DocumentError, match="fence_length"):
        parse_document(json.dumps(data))


def test_rationals_never_serialized_as_numbers():
    text = emit_document(ScheduleDocument(fig1_schedule()))
    data = json.loads(text)
    assert isinstance(data["fence_length"], str)
    assert all(
        isinstance(t, str) and isinstance(x, str)
        for agent in data["agents"]
        for t, x in agent["breakpoints"]
    )


def test_teleporting_breakpoints_rejected():
    data = json.loads(emit_document(ScheduleDocument(partition_schedule([(1, 1)]))))
    data["agents"][0]["breakpoints"] = [["0", "0"], ["0", "1/2"], ["1", "0"]]
    with pytest.raises(DocumentError):
        parse_document(json.dumps(data))
