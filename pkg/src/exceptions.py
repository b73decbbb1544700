"""Custom exceptions for the Mackey workbench."""

from typing import Optional, Sequence


class MackeyError(Exception):
    """Base class for every error raised by the workbench."""
    pass


class ConfigurationError(MackeyError):
    """Raised when an environment setting cannot be parsed."""
    pass


class DimensionMismatchError(MackeyError):
    """Raised when matrix or vector shapes do not fit together."""
    pass


class GroupValidationError(MackeyError):
    """Raised when a Cayley table fails the group axioms.

    The offending elements (a triple for associativity, a single element for
    inverses) are kept on the exception so callers can report them.
    """

    def __init__(self, message: str, witness: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.witness = tuple(witness) if witness is not None else None


class OrderBoundExceededError(MackeyError):
    """Raised when a group is larger than the configured order bound."""
    pass


class SubgroupError(MackeyError):
    """Raised when a subset is not a subgroup or containments fail."""
    pass


class GroupMismatchError(MackeyError):
    """Raised when objects over different groups are combined."""
    pass


class GSetValidationError(MackeyError):
    """Raised when an action array is not a group action."""
    pass


class EquivarianceError(MackeyError):
    """Raised when a map of G-sets does not commute with the action."""
    pass


class SpanMismatchError(MackeyError):
    """Raised when spans with incompatible endpoints are combined."""
    pass


class FunctorFormatError(MackeyError):
    """Raised when functor data is incomplete or has the wrong shape."""
    pass


class CrossedMonoidError(MackeyError):
    """Raised when a crossed G-set or its monoid structure is invalid."""
    pass


class CertificateError(MackeyError):
    """Raised when a canonical map expected to be invertible is not."""
    pass


class WorkspaceError(MackeyError):
    """Raised when a definition file cannot be loaded or names clash."""
    pass


class RepresentationError(MackeyError):
    """Raised when matrices do not define a representation."""
    pass


class UsageError(MackeyError):
    """Raised when command-line arguments are missing or inconsistent."""
    pass
