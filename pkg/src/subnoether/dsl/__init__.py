"""The ``.pde`` document language."""

from .document import CHECK_KINDS, Directive, Document
from .parser import load_document, parse_document, parse_expression
from .printer import format_document

__all__ = [
    "CHECK_KINDS",
    "Directive",
    "Document",
    "parse_document",
    "load_document",
    "parse_expression",
    "format_document",
]
