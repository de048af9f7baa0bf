"""
Workbench Exceptions and Error Classification.

Every module raises a subclass of UnitRootError so callers can catch the whole
family at once. Capabilities turn exceptions into an ErrorClassification, and
the CLI turns the severity into an exit code.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict


class UnitRootError(Exception):
    """Base exception for the workbench."""
    pass


# ============================================================================
# Algebra layer
# ============================================================================

class InvalidPrimeContext(UnitRootError, ValueError):
    """Raised when p, M or N violate the PrimeContext invariants."""
    pass


class SupersingularInput(UnitRootError, ValueError):
    """Raised when a unit root is requested for a trace divisible by p."""
    pass


class NonUnitNegativePower(UnitRootError, ValueError):
    """Raised when a non-unit residue is raised to a negative power."""
    pass


class DivisionByZero(UnitRootError, ZeroDivisionError):
    """Raised when inverting zero in a finite field."""
    pass


class DegenerateFiber(UnitRootError, ValueError):
    """Raised for the singular fibers lambda = 0 and lambda = 1."""
    pass


class HasseDisagreement(UnitRootError):
    """Raised when the trace test and the Hasse polynomial disagree."""
    pass


class FeatureDisabled(UnitRootError, NotImplementedError):
    """Raised when a feature-gated path is called while switched off."""
    pass


# ============================================================================
# Series and engine
# ============================================================================

class PrecisionMismatch(UnitRootError, ValueError):
    """Raised when two series do not share (p, M, N)."""
    pass


class NonUnitConstantTerm(UnitRootError, ValueError):
    """Raised for series whose constant term is not 1."""
    pass


class CacheMissing(UnitRootError):
    """Raised when a trace table is absent and computing it is disabled."""
    pass


class CorruptCache(UnitRootError):
    """Raised when a cache file has a bad header or malformed rows."""
    pass


class StaleCache(UnitRootError):
    """Raised when a cache file was written for other canonical moduli."""
    pass


class NotCongruentWeights(UnitRootError, ValueError):
    """Raised when k1 and k2 are not congruent mod (p-1)p^m."""
    pass


class MissingParameter(UnitRootError, ValueError):
    """Raised when a command runs without one of its required flags."""
    pass


# ============================================================================
# Slope analytics
# ============================================================================

class InsufficientCertification(UnitRootError):
    """Raised when a slope is requested beyond the certified bound."""
    pass


class ProvenIdentityViolation(UnitRootError):
    """Raised when a proven identity fails on computed data.

    This is a bug in the pipeline (or a disproof of a theorem), never a
    probe finding.
    """
    pass


# ============================================================================
# Classification
# ============================================================================

class ErrorSeverity(Enum):
    """How the CLI should react to an error."""
    USAGE = "usage"
    DATA = "data"
    CRITICAL = "critical"


@dataclass
class ErrorClassification:
    """Severity plus a user-facing message for one exception."""
    severity: ErrorSeverity
    user_message: str
    metadata: Dict[str, Any] = field(default_factory=dict)


def classify_error(exc: Exception) -> ErrorClassification:
    """Default classification shared by all capabilities."""

    if isinstance(exc, (CacheMissing, CorruptCache, StaleCache)):
        return ErrorClassification(
            severity=ErrorSeverity.DATA,
            user_message=f"Trace cache problem: {exc}",
            metadata={"type": type(exc).__name__},
        )
    elif isinstance(exc, (ProvenIdentityViolation, HasseDisagreement)):
        return ErrorClassification(
            severity=ErrorSeverity.CRITICAL,
            user_message=f"Identity violated: {exc}",
            metadata={"type": type(exc).__name__},
        )
    elif isinstance(exc, UnitRootError):
        return ErrorClassification(
            severity=ErrorSeverity.USAGE,
            user_message=f"{type(exc).__name__}: {exc}",
            metadata={"type": type(exc).__name__},
        )
    else:
        return ErrorClassification(
            severity=ErrorSeverity.CRITICAL,
            user_message=f"Unexpected error: {exc}",
            metadata={"type": "unknown_error"},
        )
