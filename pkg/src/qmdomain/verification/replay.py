"""Re-execution of stored check records."""
from __future__ import annotations

from dataclasses import dataclass

from .. import io
from ..monadics import NonConvergence
from .checks import CHECKS, run_check


class RecordSchemaError(ValueError):
    pass


@dataclass(frozen=True)
class ReplayOutcome:
    check: str
    reproduced: bool
    status: str
    recorded: dict | None
    fresh: dict | None


def _validate(rec) -> None:
    if not isinstance(rec, dict):
        raise RecordSchemaError("record must be an object")
    for key in ("check", "input"):
        if key not in rec:
            raise RecordSchemaError(f"record is missing {key!r}")
    if rec["check"] not in CHECKS:
        raise RecordSchemaError(f"unknown check {rec['check']!r}")
    if "verdict" not in rec and rec.get("error") != "non-convergence":
        raise RecordSchemaError("record needs a 'verdict' (or a non-convergence error)")


def replay_record(rec: dict) -> ReplayOutcome:
    """Re-run ``rec['check']`` on ``rec['input']`` and compare byte-exactly."""
    _validate(rec)
    try:
        fresh = run_check(rec["check"], rec["input"]).to_dict()
    except NonConvergence:
        ok = rec.get("error") == "non-convergence"
        return ReplayOutcome(rec["check"], ok, "non-convergence", rec.get("verdict"), None)
    recorded = rec.get("verdict")
    ok = recorded is not None and io.canonical(recorded) == io.canonical(fresh)
    return ReplayOutcome(rec["check"], ok, fresh["status"], recorded, fresh)


def records_of(doc) -> list[dict]:
    """A single record, a list of records, or a suite report (its witnesses)."""
    if isinstance(doc, list):
        return doc
    if isinstance(doc, dict) and "suite" in doc and "witnesses" in doc:
        recs = list(doc["witnesses"])
        if "non_convergence" in doc:
            recs.append(doc["non_convergence"])
        return recs
    return [doc]
