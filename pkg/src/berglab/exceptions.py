"""Exception types shared across the package."""

from __future__ import annotations


class BerglabError(Exception):
    """Base class for all package-specific errors."""


class MoebiusPoleError(BerglabError, ZeroDivisionError):
    """A Moebius map was evaluated at (or too close to) its pole."""


class PoleInsideDomainError(BerglabError, ValueError):
    """A pole sits inside (or on the boundary of) a region that requires it outside."""


class EvaluationOutsideDomainError(BerglabError, ValueError):
    """A holomorphic function was evaluated outside its domain of definition."""


class KernelUnavailableError(BerglabError, NotImplementedError):
    """No reproducing-kernel closed form is available for this domain."""


class ReflectionUnavailableError(BerglabError, NotImplementedError):
    """No boundary reflection is implemented for this domain."""


class PointInsideDomainError(BerglabError, ValueError):
    """A transform/section point was required to lie outside the closed domain."""


class DegeneratePointsError(BerglabError, ValueError):
    """A point configuration is degenerate (coincident or nearly coincident)."""


class DegeneratePairError(BerglabError, ValueError):
    """A boundary pair is too close together for a stable three-point ratio."""


class NonIntegrableTailError(BerglabError, ArithmeticError):
    """Tail estimates of an improper integral failed to decay under truncation doubling."""


class ConfigError(BerglabError, ValueError):
    """Bad user-facing configuration (CLI flags, descriptor files, ...)."""
