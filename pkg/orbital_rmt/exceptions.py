"""
Custom exceptions for orbital-rmt.

Following Pythonic design principles with multiple inheritance from built-in
exception types for better integration with standard Python error handling.
"""

from typing import Any, Iterable, List, Optional, Sequence


class OrbitalRMTError(Exception):
    """Base exception for all orbital-rmt errors."""
    pass


class InvalidArgumentError(OrbitalRMTError, ValueError):
    """
    Exception raised for invalid input parameters.

    Inherits from both OrbitalRMTError and ValueError, so it can be caught
    as either exception type.
    """
    pass


class SingularityError(OrbitalRMTError, ArithmeticError):
    """
    Exception raised when H - lambda cannot be inverted reliably.

    Attributes:
        energy: The spectral parameter at which the inversion failed
        walk_prefix: For the walk expansion, the sites removed before the
            offending depleted restriction
    """

    def __init__(
        self,
        message: str,
        energy: Optional[float] = None,
        walk_prefix: Optional[Sequence[Any]] = None,
    ):
        super().__init__(message)
        self.energy = energy
        self.walk_prefix = tuple(walk_prefix) if walk_prefix is not None else None

    def __str__(self) -> str:
        parts = [super().__str__()]
        if self.energy is not None:
            parts.append(f"at lambda={self.energy:.6g}")
        if self.walk_prefix is not None:
            parts.append(f"walk prefix {list(self.walk_prefix)}")
        return " ".join(parts)


class AccuracyError(OrbitalRMTError, ArithmeticError):
    """
    Exception raised when a quadrature cannot meet its tolerance.

    Attributes:
        achieved: The best accuracy estimate reached
        tolerance: The requested tolerance
    """

    def __init__(self, message: str, achieved: Optional[float] = None, tolerance: Optional[float] = None):
        self.achieved = achieved
        self.tolerance = tolerance
        detail = ""
        if achieved is not None and tolerance is not None:
            detail = f" (achieved {achieved:.3g}, required {tolerance:.3g})"
        super().__init__(f"{message}{detail}")


class ConfigValidationError(OrbitalRMTError, ValueError):
    """
    Exception raised when an experiment config fails validation.

    Collects every problem found instead of stopping at the first one.
    """

    def __init__(self, errors: Iterable[str]):
        self.errors: List[str] = list(errors)
        super().__init__(self._format())

    def _format(self) -> str:
        if len(self.errors) == 1:
            return f"Invalid config: {self.errors[0]}"
        lines = "\n".join(f"  - {error}" for error in self.errors)
        return f"Invalid config ({len(self.errors)} errors):\n{lines}"


class ResultWriteError(OrbitalRMTError, OSError):
    """
    Exception raised when result files cannot be written.

    Inherits from both OrbitalRMTError and OSError for standard
    Python I/O error handling patterns.
    """

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        location = f" ({path})" if path else ""
        super().__init__(f"{message}{location}")
