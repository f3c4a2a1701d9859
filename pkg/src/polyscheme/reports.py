"""Structured pass/fail evidence for theorem checks.

Reports are plain data: JSON-serializable, with a fixed emission format so
that emit -> parse -> emit is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"

_STATUSES = frozenset({PASS, FAIL, INCONCLUSIVE, HYPOTHESIS_NOT_MET})


@dataclass
class TheoremReport:
    """Outcome of one check on one subject.

    evidence is a JSON-compatible dict; failing reports must identify a
    witness, and any recorded deviation is a nonnegative magnitude.
    """

    subject: str
    theorem: str
    status: str
    tolerance: float | None = None
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and "witness" not in self.evidence:
            raise ValueError("fail reports must carry a witness in evidence")
        for key, value in self.evidence.items():
            if key.endswith("deviation") and isinstance(value, (int, float)):
                if value < 0:
                    raise ValueError(f"negative deviation under {key!r}")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        """One-line human-readable form."""
        summary = self.evidence.get("summary", "")
        tail = f": {summary}" if summary else ""
        return f"[{self.status}] {self.theorem} ({self.subject}){tail}"

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "theorem": self.theorem,
            "status": self.status,
            "tolerance": self.tolerance,
            "evidence": self.evidence,
        }

    @staticmethod
    def from_dict(d: dict) -> "TheoremReport":
        return TheoremReport(
            subject=d["subject"],
            theorem=d["theorem"],
            status=d["status"],
            tolerance=d.get("tolerance"),
            evidence=d.get("evidence", {}),
        )


def reports_to_json(reports, **meta) -> str:
    """Serialize reports plus metadata; stable key order, trailing newline."""
    payload = dict(meta)
    payload["reports"] = [r.to_dict() for r in reports]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def reports_from_json(text: str):
    """Inverse of reports_to_json; returns (reports, meta)."""
    payload = json.loads(text)
    reports = [TheoremReport.from_dict(d) for d in payload.pop("reports")]
    return reports, payload


def any_failed(reports) -> bool:
    return any(r.status == FAIL for r in reports)
