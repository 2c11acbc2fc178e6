"""Exception hierarchy shared across hyperbisect modules."""

from __future__ import annotations


class HyperbisectError(Exception):
    """Base class for library-level failures."""


class DimensionMismatchError(HyperbisectError, ValueError):
    """Raised when points, hyperplanes or measures disagree on the ambient dimension."""


class PreconditionError(HyperbisectError, ValueError):
    """Raised when an operation is called outside its documented domain."""


class EnumerationLimitError(PreconditionError):
    """Raised when an enumeration would exceed its configured bound."""


class SeparationError(PreconditionError):
    """Raised when a solver requires a well-separated family and does not get one."""


class DegenerateSpanError(HyperbisectError):
    """Raised when points do not determine a unique hyperplane."""


class NoBisectingCutError(HyperbisectError):
    """Raised when an exhaustive search finds no verified bisecting hyperplane."""


class DocumentError(HyperbisectError, ValueError):
    """Raised when a JSON document cannot be read or fails validation."""
