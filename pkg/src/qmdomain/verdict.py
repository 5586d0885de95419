"""Three-valued verdicts shared by the checking modules.

``proven`` is reserved for statements that were decided exhaustively on a finite
carrier; anything quantifying over an infinite set is at best ``battery_passed``.
Streamed spaces add ``refuted_at_horizon``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PROVEN = "proven"
REFUTED = "refuted"
BATTERY_PASSED = "battery_passed"
REFUTED_AT_HORIZON = "refuted_at_horizon"
PASSED_AT_HORIZON = "passed_at_horizon"

STATUSES = (PROVEN, REFUTED, BATTERY_PASSED, REFUTED_AT_HORIZON, PASSED_AT_HORIZON)


@dataclass
class Verdict:
    check: str
    status: str
    witness: Any = None
    battery: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown verdict status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status in (PROVEN, BATTERY_PASSED, PASSED_AT_HORIZON)

    @property
    def refuted(self) -> bool:
        return not self.passed

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status,
                "witness": self.witness, "battery": self.battery}


def passing(check: str, exhaustive: bool, **battery) -> Verdict:
    return Verdict(check, PROVEN if exhaustive else BATTERY_PASSED, None, battery)


def failing(check: str, witness, **battery) -> Verdict:
    status = REFUTED_AT_HORIZON if battery.get("horizon") is not None else REFUTED
    return Verdict(check, status, witness, battery)
