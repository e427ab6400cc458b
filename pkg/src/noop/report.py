"""Line-oriented verification reports: ``PASS|FAIL property subject detail``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List


class CounterexampleFound(AssertionError):
    def __init__(self, check: "Check"):
        super().__init__(check.line())
        self.check = check


class BudgetExceeded(RuntimeError):
    def __init__(self, limit: int, what: str = "objects"):
        super().__init__(f"BudgetExceeded: more than {limit} {what}")
        self.limit = limit


@dataclass(frozen=True)
class Check:
    prop: str
    subject: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        parts = ["PASS" if self.passed else "FAIL", self.prop, self.subject or "-"]
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)

    def add(self, prop: str, subject: str, passed: bool, detail: str = "") -> Check:
        c = Check(prop, subject, bool(passed), detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> List[str]:
        return [c.line() for c in self.checks]

    def raise_for_failures(self) -> None:
        if self.failures:
            raise CounterexampleFound(self.failures[0])

    def __str__(self):
        return "\n".join(self.lines())
