"""Typed errors raised by the economy, dynamics and analysis packages."""

from typing import Any, Dict, Optional


class TatonnementError(Exception):
    """Base error with a type tag and a structured payload."""

    type: str = "TatonnementError"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"type": self.type, "message": self.message}


class DomainError(TatonnementError):
    """A price left the positive orthant.

    `last_valid` is the last admissible price vector; runners attach the
    partial trajectory so callers can still export it.
    """

    type = "DomainError"

    def __init__(self, message: str, last_valid=None, trajectory=None, details=None):
        super().__init__(message, details)
        self.last_valid = last_valid
        self.trajectory = trajectory


class DimensionMismatch(TatonnementError):
    type = "DimensionMismatch"


class DegenerateVector(TatonnementError):
    type = "DegenerateVector"


class NoConvergence(TatonnementError):
    """Iterative solver ran out of iterations; `last_iterate` holds where it stopped."""

    type = "NoConvergence"

    def __init__(self, message: str, last_iterate=None, details=None):
        super().__init__(message, details)
        self.last_iterate = last_iterate


class NotAnEquilibrium(TatonnementError):
    type = "NotAnEquilibrium"


class NotConverging(TatonnementError):
    type = "NotConverging"


class ConfigError(TatonnementError):
    type = "ConfigError"
