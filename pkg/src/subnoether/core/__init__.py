"""Core exceptions, constants and report models."""

from .exceptions import SubNoetherError

__all__ = ["SubNoetherError"]
