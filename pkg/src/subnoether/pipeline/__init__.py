"""Check pipeline."""

from .check import CheckConfig, CheckPipeline, CheckResult, CheckStats, run_document

__all__ = ["CheckConfig", "CheckPipeline", "CheckResult", "CheckStats", "run_document"]
