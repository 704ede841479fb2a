class PathDepthError(Exception):
    """Base class of every error raised by pathdepth."""

    exit_code = 5


class ImproperlyConfigured(PathDepthError):
    """Engine settings are missing, unknown or out of range."""

    exit_code = 2


class MalformedInputError(PathDepthError, ValueError):
    """Exponent vectors of the wrong length, negative exponents or unparsable ideal text."""

    exit_code = 2


class ParameterError(PathDepthError, ValueError):
    """Parameters outside the range a family or identity is stated for.

    :param message: what went wrong
    :param precondition: the precondition text of the family or lemma, if any
    """

    def __init__(self, message, precondition=None):
        self.precondition = precondition
        if precondition:
            message = f"{message} (requires {precondition})"
        super().__init__(message)


class DomainError(PathDepthError, ValueError):
    """The ideal is the zero or unit ideal where a proper nonzero one is needed."""


class ExponentOverflowError(PathDepthError, OverflowError):
    """An exponent reached 2^31."""


class ResourceLimitError(PathDepthError):
    """A configured cap was exceeded; the computation is refused rather than truncated."""

    exit_code = 3

    def __init__(self, cap_name, cap, actual=None):
        self.cap_name = cap_name
        self.cap = cap
        self.actual = actual
        msg = f"resource cap {cap_name}={cap} exceeded"
        if actual is not None:
            msg += f" (needed {actual})"
        super().__init__(msg)


class SearchTimeout(PathDepthError):
    """The wall-clock budget of a search ran out; the result is unknown."""

    exit_code = 4

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"search exceeded the time budget of {budget} s")


class InconsistentResultError(PathDepthError):
    """An internal cross-check (Euler characteristic, certificate re-check) disagreed with a computed value."""
