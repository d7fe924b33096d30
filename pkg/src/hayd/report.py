"""Structured pass/fail verdicts with the first violating basis tuple."""

from __future__ import annotations

from dataclasses import dataclass

from .tensor import Tensor


@dataclass
class Report:
    """Outcome of one exhaustive check.

    ``witness`` is the lexicographically first violating basis multi-index, and
    ``lhs``/``rhs`` hold both sides of the identity evaluated there.  For the
    antipode-invertibility check the witness carries the rank found instead.
    """

    passed: bool
    axiom: str
    witness: tuple | None = None
    lhs: Tensor | None = None
    rhs: Tensor | None = None

    @staticmethod
    def ok(axiom: str) -> "Report":
        return Report(True, axiom)

    @staticmethod
    def fail(axiom: str, witness, lhs=None, rhs=None) -> "Report":
        return Report(False, axiom, tuple(witness), lhs, rhs)

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self):
        if self.passed:
            return f"{self.axiom}: pass"
        return f"{self.axiom}: FAIL at {self.witness} (lhs={self.lhs}, rhs={self.rhs})"
