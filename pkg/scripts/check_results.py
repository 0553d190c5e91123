#!/usr/bin/env python3
"""Check records shared by every verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable


PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


@dataclass
class CheckResult:
    id: str
    anchor: str
    verdict: str
    message: str
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "verdict": self.verdict,
            "message": self.message,
            "details": self.details,
        }


def check(
    id: str, anchor: str, passed: bool, message: str, **details: Any
) -> CheckResult:
    return CheckResult(id, anchor, PASS if passed else FAIL, message, details)


def skipped(id: str, anchor: str, message: str, **details: Any) -> CheckResult:
    return CheckResult(id, anchor, SKIP, message, details)


def overall_status(results: Iterable[CheckResult]) -> str:
    verdicts = [result.verdict for result in results]
    if FAIL in verdicts:
        return FAIL
    return PASS


def count_verdicts(results: Iterable[CheckResult]) -> dict[str, int]:
    counts = {"passed": 0, "failed": 0, "skipped": 0}
    for result in results:
        if result.verdict == PASS:
            counts["passed"] += 1
        elif result.verdict == FAIL:
            counts["failed"] += 1
        else:
            counts["skipped"] += 1
    return counts
