"""Errors raised across holodense"""


class HolodenseError(Exception):
    """Base class for every error the library raises on purpose."""


class InputError(HolodenseError, ValueError):
    """Malformed or out-of-domain input."""


class GuardLimitExceeded(HolodenseError):
    """An enumeration guard refused the requested amount of work."""

    def __init__(self, what: str, required: int, limit: int):
        self.what = what
        self.required = required
        self.limit = limit
        super().__init__(f"{what}: {required} exceeds guard limit {limit}")


class InconsistentCounts(HolodenseError):
    """Point counts that do not come from a curve (negative or fractional place counts)."""


class OracleDisagreement(HolodenseError):
    def __init__(self, message: str, sample=None):
        self.sample = sample
        super().__init__(message)


class EnclosureViolation(HolodenseError):
    """Exact density fell outside [truncated - tail, truncated]."""
