"""Exception hierarchy shared by every facenum module."""


class FaceNumError(Exception):
    """Base class for all facenum errors."""


class MalformedInputError(FaceNumError, ValueError):
    """Raised for input faces or facet files that cannot be parsed."""


class DomainError(FaceNumError, ValueError):
    """Raised when an operation's precondition does not hold for its input."""


class DegenerateGluingError(DomainError):
    """Raised when an identification of vertices would double a facet."""


class NotEulerianError(DomainError):
    """Raised when a palindromic h-vector is required but not given."""


class ResourceCapError(FaceNumError):
    """Raised when an exponential computation would exceed a configured cap."""

    def __init__(self, message, cap=None, size=None):
        super().__init__(message)
        self.cap = cap
        self.size = size


class UnluckyFieldError(FaceNumError):
    """Raised when random linear forms keep failing the l.s.o.p. criterion."""


class InternalConsistencyError(FaceNumError, AssertionError):
    """Raised when two independent computations of one quantity disagree."""
