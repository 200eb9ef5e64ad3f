"""Exception hierarchy shared by every module (and mapped to CLI exit codes)."""


class PuiseuxError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PuiseuxError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(PuiseuxError):
    """A configurable search or enumeration cap was exceeded."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class StateError(PuiseuxError):
    """A staged object has not been materialized far enough."""


class InternalError(PuiseuxError, AssertionError):
    """A post hoc audit of a construction failed."""
