"""Exception hierarchy shared across the package.

DomainError covers mathematically meaningful failures (exit code 1 in the
CLI); ParseError covers malformed user input (exit code 2).
"""


class DomainError(ValueError):
    """A well-formed request that the mathematics rejects."""


class ScaleError(DomainError):
    """Request exceeds the scale bound of a brute-force oracle."""


class CompatibilityError(DomainError):
    """A sequence or prefix fails the compatibility equations."""


class StabilizationError(DomainError):
    """A stabilization witness is violated at a probed index.

    ``reason`` is "missing" when a label has no preimage at the next index
    and "ambiguous" when it has more than one.
    """

    def __init__(self, message, index=None, label=None, reason=None):
        super().__init__(message)
        self.index = index
        self.label = label
        self.reason = reason


class ParseError(ValueError):
    """Malformed textual or JSON input."""
