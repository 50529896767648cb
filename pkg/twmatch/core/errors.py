"""Exception types raised by twmatch."""

from typing import Optional


class TwMatchError(ValueError):
    """Base class for input and parameter errors."""


class GraphFormatError(TwMatchError):
    """Raised when a graph or decomposition file cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DecompositionError(TwMatchError):
    """Raised for decompositions that are not trees or fail validation."""


class ParameterError(TwMatchError):
    """Raised when ell, c, k or similar arguments are out of range."""


class OracleLimitError(TwMatchError):
    """Raised when an instance is too large for exhaustive search."""


class ReductionInputError(TwMatchError):
    """Raised when a hitting-set family violates the row constraint."""


class CertificateError(RuntimeError):
    """Raised when certificate extraction exhausts its retries."""


class BenchmarkMismatchError(RuntimeError):
    """Raised when two join modes disagree on the same instance."""


class OracleMismatchError(RuntimeError):
    """Raised when a solver disagrees with the brute-force oracle."""
