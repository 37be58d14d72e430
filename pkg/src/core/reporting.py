"""
src/core/reporting.py

Outcome records returned by verification operations.
A failed identity is reported, never raised, so suites can keep counting.
"""

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Result of one verification suite."""

    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def record_failure(self, message):
        """Store a failure message (the first one is the counterexample)."""
        self.failures.append(message)

    def merge(self, other):
        """Fold another report into this one."""
        self.trials += other.trials
        self.failures.extend(other.failures)
        self.details.update(other.details)
        return self

    def summary_line(self):
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.trials} trials, {len(self.failures)} failures"
        if self.failures:
            line += f"; first: {self.failures[0]}"
        return line
