"""Structured results for identity checks and verification suites."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ResidualReport:
    """Outcome of one identity/verification suite.

    max_residual is the worst float residual for tolerance-based suites; for
    exact (rational) suites it is 0.0 on success and the number of failing
    trials otherwise.
    """

    suite: str
    trials: int
    seed: int
    max_residual: float
    worst_state: dict | None
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "max_residual": self.max_residual,
            "worst_state": self.worst_state,
            "pass": self.passed,
        }
        if self.details:
            doc["details"] = self.details
        return doc
