"""Shared exception types."""


class UsageError(ValueError):
    """Bad user-supplied input (CLI exit code 1)."""


class IntegrityError(RuntimeError):
    """An exact-arithmetic self-check failed; indicates a bug, never bad input
    (CLI exit code 2)."""
