"""Structured pass/fail reports shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


class PreconditionError(ValueError):
    """Parameters outside the domain of a verification routine."""


@dataclass
class Report:
    name: str
    ok: bool = True
    max_deviation: float = 0.0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def record(self, label: str, passed: bool, deviation: float = 0.0) -> bool:
        self.checks[label] = bool(passed)
        self.max_deviation = max(self.max_deviation, float(deviation))
        if not passed:
            self.ok = False
            self.failures.append(label)
        return passed

    def merge(self, other: "Report", prefix: str = "") -> None:
        for label, passed in other.checks.items():
            self.checks[prefix + label] = passed
        self.failures.extend(prefix + f for f in other.failures)
        self.notes.extend(other.notes)
        self.max_deviation = max(self.max_deviation, other.max_deviation)
        self.ok = self.ok and other.ok

    def lines(self) -> list:
        out = [f"check: {self.name}", f"status: {'pass' if self.ok else 'fail'}",
               f"max_deviation: {self.max_deviation!r}"]
        out += [f"ok: {k}" if v else f"FAILED: {k}" for k, v in self.checks.items()]
        out += [f"note: {n}" for n in self.notes]
        return out

    def __str__(self):
        return "\n".join(self.lines())
