"""Exception types shared across the package."""


class LocalInvError(Exception):
    """Base class for all package errors."""


class ValidationError(LocalInvError):
    """Malformed input data (bad permutation, dimension mismatch, ...)."""


class SizeGuardError(LocalInvError):
    """A size guard was exceeded; the message says how to shrink the request."""


class ReconstructionInconclusive(LocalInvError):
    """No linear recurrence within the degree cap fits the series.

    Raised instead of returning a best-effort (possibly wrong) rational
    function.
    """
