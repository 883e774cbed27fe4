"""
Exception hierarchy for the decision engine.

PURPOSE:
- One base class (MaBisimError) so the CLI can map every engine failure to exit code 2.
- Parse/semantic errors carry their source position for diagnostics.

CONTEXT:
- Raised by the model layer, the algorithms and the `.ma` parser; rendered by
  src.report_io.error_to_string.
"""

from __future__ import annotations

from typing import Optional


class MaBisimError(Exception):
    """Base class for all engine errors."""


class MassOverflow(MaBisimError):
    """A subdistribution operation would exceed total mass 1."""


class NotInSupport(MaBisimError):
    """A state was removed from a subdistribution that does not carry it."""


class MassMismatch(MaBisimError):
    """Two distributions compared for equivalence have different total mass."""


class DimensionMismatch(MaBisimError):
    """Vectors or convex sets of different dimension were combined."""


class ModelError(MaBisimError):
    """An automaton (or settings object) violates a structural invariant."""


class IllFormedScheduler(MaBisimError):
    """A scheduler choice violates the label discipline of a weak transition."""


class SchedulerLimitExceeded(MaBisimError):
    """Scheduler enumeration went past the configured cap."""


class TooLarge(MaBisimError):
    """An exhaustive oracle was asked for an instance above its bound."""


class ParseError(MaBisimError):
    """
    Syntax error in a `.ma` file.

    attributes:
    - line: int – 1-based line number
    - column: int – 1-based column number
    """

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"line {self.line}:{self.column}: {self.message}"


class SemanticError(MaBisimError):
    """Well-formed `.ma` text describing an invalid automaton."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}: {self.message}"


__all__ = [
    "MaBisimError",
    "MassOverflow",
    "NotInSupport",
    "MassMismatch",
    "DimensionMismatch",
    "ModelError",
    "IllFormedScheduler",
    "SchedulerLimitExceeded",
    "TooLarge",
    "ParseError",
    "SemanticError",
]
