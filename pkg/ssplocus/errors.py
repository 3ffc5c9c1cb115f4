"""Errors raised by ssplocus."""
from typing import Optional


class DomainError(ValueError):
    """Error for an input outside the domain of an operation."""

    def __init__(self, message: str, code: Optional[str] = None) -> None:
        super().__init__(message)
        self.code = code


class InconclusiveError(DomainError):
    """Error for a brute-force search too shallow to certify its answer."""


class NotFoundError(DomainError):
    """Error for a bounded search which ran out of candidates."""


class ConsistencyError(RuntimeError):
    """Error for a computed value which contradicts a known invariant."""


class ResourceError(RuntimeError):
    """Error for an enumeration larger than the configured desk-scale caps."""
