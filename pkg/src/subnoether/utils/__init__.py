"""Utility modules."""

from .logging import setup_logging
from .suggest import suggest
from .text import json_dumps, truncate

__all__ = ["setup_logging", "suggest", "json_dumps", "truncate"]
