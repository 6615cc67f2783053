"""Shared exception types."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; results cannot be trusted."""
