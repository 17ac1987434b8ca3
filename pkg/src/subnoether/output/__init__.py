"""Output generation."""

from .report import render_json, render_text

__all__ = ["render_text", "render_json"]
