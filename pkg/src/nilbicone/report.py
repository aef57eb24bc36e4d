"""Structured verification outcomes and their JSON form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
BUDGET_EXCEEDED = "budget-exceeded"
STATUSES = (PASS, FAIL, INCONCLUSIVE, BUDGET_EXCEEDED)
PROVENANCES = ("PAPER", "TRIVIAL", "DERIVED")


def _jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class Report:
    """One verified claim.

    ``status == "pass"`` is only ever set by :meth:`compare` or by a caller
    that has already established ``computed == expected``.
    """

    claim_id: str
    status: str
    computed: Any = None
    expected: Any = None
    provenance: str = "DERIVED"
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @classmethod
    def compare(cls, claim_id, computed, expected, provenance="DERIVED", **details) -> "Report":
        status = PASS if computed == expected else FAIL
        return cls(claim_id, status, computed, expected, provenance, details=details)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        d = asdict(self)
        d["computed"] = _jsonable(d["computed"])
        d["expected"] = _jsonable(d["expected"])
        d["details"] = _jsonable(d["details"])
        d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(**d)


def dumps(reports: list[Report], timings: bool = True) -> str:
    items = []
    for r in sorted(reports, key=lambda r: r.claim_id):
        d = r.to_dict()
        if not timings:
            d["elapsed_ms"] = 0.0
        items.append(d)
    return json.dumps({"schema": SCHEMA_VERSION, "reports": items}, indent=2, sort_keys=True)


def loads(text: str) -> list[Report]:
    data = json.loads(text)
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    return [Report.from_dict(d) for d in data["reports"]]


def exit_code(reports: list[Report]) -> int:
    return 1 if any(r.status == FAIL for r in reports) else 0
