"""Error taxonomy shared by the library and the CLI.

Every failure mode the pipeline can report maps to one of these classes;
the CLI translates them into exit codes (see cli.py).
"""

from __future__ import annotations


class SpectralForgeError(Exception):
    """Base class; carries an optional structured detail dict."""

    exit_code = 5

    def __init__(self, message, detail=None, **extra):
        super().__init__(message)
        self.detail = dict(detail or {})
        self.detail.update(extra)

    def to_jsonable(self) -> dict:
        return {
            "type": type(self).__name__,
            "message": str(self),
            "detail": self.detail,
            "exit_code": self.exit_code,
        }


class ValidationError(SpectralForgeError):
    """Malformed input: parse errors, schema violations, inconsistent data."""

    exit_code = 2


class AssumptionError(SpectralForgeError):
    """The leading-coefficient assumption fails in both orientations,
    or a normalization / branch-point precondition is violated."""

    exit_code = 3


class NonGenericError(AssumptionError):
    """Supplied points collide in a way the residue bookkeeping forbids
    (repeated y-values, repeated x-values, or E_y vanishing)."""


class BranchPointError(AssumptionError):
    """A point where E_y = 0 was used in an operation requiring a smooth
    non-branch point."""


class SpecialDivisorError(SpectralForgeError):
    """The divisor's interpolation matrix is singular (special or
    degenerate divisor)."""

    exit_code = 4


class DegenerateInputError(ValidationError):
    """Operation received degenerate operands (e.g. resultant of two zero
    polynomials)."""
