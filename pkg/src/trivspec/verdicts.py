"""Shared verdict values for verification operations.

The lattice, strongest first: certified > certified_probabilistic >
certified_by_alternator > probable > unknown > refuted.  Theorem suites only
assert conclusions on instances whose hypotheses are themselves certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field


CERTIFIED = "Certified"
CERTIFIED_PROBABILISTIC = "CertifiedProbabilistic"
CERTIFIED_BY_ALTERNATOR = "CertifiedByAlternator"
PROBABLE = "Probable"
UNKNOWN = "Unknown"
REFUTED = "Refuted"
BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class Verdict:
    kind: str
    reason: str = ""
    witness: object = None
    checked: int = 0
    failure_bound: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def is_certified(self):
        return self.kind in (CERTIFIED, CERTIFIED_PROBABILISTIC, CERTIFIED_BY_ALTERNATOR)

    @property
    def is_refuted(self):
        return self.kind == REFUTED

    def to_json(self):
        out = {"kind": self.kind}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        if self.checked:
            out["checked"] = self.checked
        if self.failure_bound:
            out["failure_bound"] = self.failure_bound
        if self.extras:
            out["extras"] = self.extras
        return out

    def __repr__(self):
        bits = [self.kind]
        if self.reason:
            bits.append(self.reason)
        return f"Verdict({', '.join(bits)})"


class Budget:
    """Meter for exhaustive checks, counted in predicted element checks."""

    def __init__(self, limit=2**22):
        self.limit = int(limit)
        self.spent = 0

    def affords(self, n):
        return self.spent + n <= self.limit

    def charge(self, n):
        self.spent += n

    def remaining(self):
        return max(0, self.limit - self.spent)
