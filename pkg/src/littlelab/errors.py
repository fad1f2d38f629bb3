"""Shared error types."""


class PropertyViolation(AssertionError):
    """A theorem-derived internal check failed; the CLI maps this to exit 2."""


class NotRealizableError(ValueError):
    """An operation requiring a realizable sample was given an unrealizable one."""


class InstanceTooLargeError(ValueError):
    """A brute-force oracle was asked to run above its size caps."""
