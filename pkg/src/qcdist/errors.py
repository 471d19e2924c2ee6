"""Exception hierarchy shared across the package.

The CLI maps these classes onto distinct exit codes, so library code
should raise the most specific class that applies.
"""

from __future__ import annotations


class QcError(Exception):
    """Base class for all errors raised by this package."""


class ModulusMismatchError(QcError, ValueError):
    """Operands belong to quotient rings with different modulus degrees."""


class ShapeError(QcError, ValueError):
    """Matrix or vector dimensions do not fit the requested operation."""


class DomainError(QcError, ValueError):
    """Argument lies outside the domain of the operation."""


class PreconditionError(QcError, ValueError):
    """A documented precondition of an operation was violated."""


class CapacityError(QcError, ValueError):
    """The instance exceeds a hard enumeration budget; refusing to degrade."""


class ConformanceError(QcError, ValueError):
    """A shift assignment does not conform to its protomatrix."""


class CancellationError(ConformanceError):
    """A lift cell repeats an exponent, which would cancel over GF(2)."""


class ParseError(QcError, ValueError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
