"""Verdict vocabulary shared by all checks and reports."""

from __future__ import annotations

from dataclasses import dataclass

VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive-at-bound"

CERTIFIED = "certified"
EVIDENCE = "evidence-at-bound"
UNDECIDED = "inconclusive"


@dataclass
class Check:
    name: str
    verdict: str
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.verdict == VERIFIED

    def to_dict(self) -> dict:
        d = {"check": self.name, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def summarize(checks) -> dict:
    checks = list(checks)
    out = {VERIFIED: 0, FAILED: 0, INCONCLUSIVE: 0}
    for c in checks:
        out[c.verdict] += 1
    out["total"] = len(checks)
    return out


def overall(checks) -> str:
    checks = list(checks)
    if any(c.verdict == FAILED for c in checks):
        return FAILED
    if any(c.verdict == INCONCLUSIVE for c in checks):
        return INCONCLUSIVE
    return VERIFIED
