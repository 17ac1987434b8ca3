"""Catalog of worked examples shipped as ``.pde`` documents."""

from . import cases  # noqa: F401  registers the built-in cases
from .base import CaseRegistry, CaseRun, CatalogCase, ExtraCheck, case_source, resolve_case, run_all, run_case

__all__ = ["CaseRegistry", "CaseRun", "CatalogCase", "ExtraCheck", "case_source", "resolve_case", "run_case", "run_all"]
