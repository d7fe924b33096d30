"""Exception hierarchy shared by all hayd modules."""

from __future__ import annotations


class HaydError(Exception):
    """Base class for every error raised by this package."""


class FieldError(HaydError):
    """Invalid scalar arithmetic: division by zero, bad characteristic, bad literal."""


class ShapeError(HaydError):
    """Tensor shapes or index ranges are inconsistent."""


class SingularMatrixError(HaydError):
    """A square matrix that was expected to be invertible is not.

    Carries the rank actually found.
    """

    def __init__(self, message: str, rank: int):
        super().__init__(f"{message} (rank {rank})")
        self.rank = rank


class InputError(HaydError):
    """User-supplied data violates a precondition (CLI exit code 2)."""


class GuardError(InputError):
    """An enumeration guard was exceeded; the message says what to do instead."""


class NotGaloisError(InputError):
    """The canonical map is not bijective, so Galois-only operations are unavailable."""


class CheckFailedError(HaydError):
    """A structural check that an operation asserts did not pass.

    Carries the failing Report so callers can surface the witness.
    """

    def __init__(self, report):
        super().__init__(f"check '{report.axiom}' failed at witness {report.witness}")
        self.report = report


class InternalConsistencyError(HaydError):
    """A verification that is a theorem failed: indicates a transcription bug, abort."""


class SchemaError(InputError):
    """A JSON document failed validation; carries (json_pointer, message) pairs."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"{ptr}: {msg}" for ptr, msg in self.violations)
        super().__init__(f"invalid document: {lines}")
