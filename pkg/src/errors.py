"""
Exception hierarchy for the solver.
Every error raised by the package derives from SolverError so callers
(the CLI in particular) can map failures to exit codes.
"""

from typing import Optional


class SolverError(Exception):
    """Base class for all solver errors."""


class DomainError(SolverError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoBoundStateError(DomainError):
    """The potential binds nothing (zero strength or no well)."""


class ConfigurationError(SolverError, ValueError):
    """A discretization layout cannot be built from the given parameters."""


class ProfileFormatError(ConfigurationError):
    """Tabulated potential data is malformed."""

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class CaseSelectionError(SolverError):
    """A region basis is singular outside the linear-case band."""


class StaleEnergyError(SolverError):
    """An energy handed to the eigenfunction builder is not a root."""

    def __init__(self, energy: float, determinant: float):
        self.energy = energy
        self.determinant = determinant
        super().__init__(
            f"E={energy!r} is not a root of the bound determinant "
            f"(value {determinant:.3e})"
        )


class PoleProximityError(SolverError):
    """The dressed Green's function denominator is numerically zero."""

    def __init__(self, s: complex, magnitude: float):
        self.s = s
        self.magnitude = magnitude
        super().__init__(f"|D(s)| = {magnitude:.3e} at s={s!r}")


class AccuracyError(SolverError):
    """A numerical procedure did not reach its requested accuracy."""

    def __init__(self, message: str, estimate: float):
        self.estimate = estimate
        super().__init__(f"{message} (achieved estimate {estimate:.3e})")


class NumericalFailure(SolverError):
    """A computation failed at a specific energy."""

    def __init__(self, energy: float, reason: str):
        self.energy = energy
        super().__init__(f"numerical failure at E={energy!r}: {reason}")


class ConfigError(SolverError):
    """A run configuration entry is missing, unknown or invalid."""

    def __init__(self, key: str, message: str,
                 source: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.source = source
        self.line = line
        location = ""
        if source is not None:
            location = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(f"{location}{key}: {message}")
