"""
Error classes for failures that callers must be able to tell apart.

All of them derive from ValueError, so code that only cares about
invalid input can keep catching ValueError.
"""


class CapExceededError(ValueError):
    """Input is larger than the exhaustive search or enumeration cap."""


class VerificationError(ValueError):
    """A compression scheme that must verify does not."""


class InfeasibleCopiesError(ValueError):
    """The counting inequality for copy schemes does not hold."""
