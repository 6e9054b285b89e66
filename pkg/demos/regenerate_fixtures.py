"""Rebuild the golden schedule fixtures and re-certify them exactly.

The bundled counterexample schedules live in code as frozen rational
constants; this script re-runs the exact verifier over each of them and
rewrites fixtures/*.json only when certification succeeds, so a stale or
hand-edited fixture can never ship uncertified.

Run from the repository root:  python demos/regenerate_fixtures.py
"""
from pathlib import Path

from fencepatrol import (
    ScheduleDocument,
    emit_document,
    fig1_schedule,
    fig2_schedule,
    ratio,
    verify,
    weighted_three_schedule,
)

FIXTURES = Path(__file__).parent.parent / "fixtures"

BUILDERS = {
    "fig1": (
        fig1_schedule,
        "six agents (speeds 1,1,1,1,7/3,1/2) on fence 7/2, period 7; exceeds the partition bound 41/12",
    ),
    "fig2": (
        fig2_schedule,
        "nine agents (speeds 5x6, 1x3) on fence 50/3, period 10/3; exceeds the partition bound 33/2",
    ),
    "weighted3": (
        weighted_three_schedule,
        "weighted agents (1,T=4), (7/3,T=1), (1/2,T=1) on fence 7/2; exceeds the weighted partition bound 41/12",
    ),
}


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    for name, (builder, provenance) in BUILDERS.items():
        schedule = builder()
        verdict = verify(schedule)
        if not verdict.patrols:
            raise SystemExit(f"{name}: NOT certified (witness {verdict.witness}), fixture left untouched")
        text = emit_document(
            ScheduleDocument(schedule, {"name": name, "provenance": provenance})
        )
        path = FIXTURES / f"{name}.json"
        path.write_text(text, encoding="utf-8")
        print(
            f"{name}: certified PATROLS at l={schedule.fence_length} "
            f"(ratio {ratio(schedule)}), wrote {path}"
        )


if __name__ == "__main__":
    main()
