"""Canonical normal form, atom derivatives and substitution."""

import logging
from collections.abc import Mapping

import sympy

from subnoether.core.exceptions import ExpressionError, UnsupportedRadical

from .atoms import FnAtom

logger = logging.getLogger(__name__)

Expr = sympy.Expr


def _check_supported(expr: Expr) -> None:
    """Reject floats, transcendental heads and nested or symbolic powers."""
    for node in sympy.preorder_traversal(expr):
        if isinstance(node, sympy.Float):
            raise ExpressionError(f"floating-point constant in exact kernel: {node}")
        if isinstance(node, sympy.Pow):
            exponent = node.exp
            if exponent.is_Integer:
                continue
            if not exponent.is_Rational:
                raise UnsupportedRadical(node, "non-rational exponent")
            if any(isinstance(p, sympy.Pow) and not p.exp.is_Integer for p in sympy.preorder_traversal(node.base)):
                raise UnsupportedRadical(node, "nested radical")
        elif isinstance(node, sympy.Function) and not isinstance(node, FnAtom):
            raise ExpressionError(f"unsupported function '{node.func}' in exact kernel")
        elif isinstance(node, (sympy.Integral, sympy.Derivative, sympy.Subs)):
            raise ExpressionError(f"unevaluated {type(node).__name__} in exact kernel")


def _normalize_fn_args(expr: Expr) -> Expr:
    return expr.replace(
        lambda node: isinstance(node, FnAtom),
        lambda node: node.func(*[sympy.cancel(arg) for arg in node.args]),
    )


def normalize(expr: Expr | int) -> Expr:
    """Reduced ratio of polynomials over the rationals in the atoms of ``expr``.

    Function-atom arguments are normalized first, so two applications of the
    same function compare equal exactly when their arguments normalize equal.
    Idempotent: ``normalize(normalize(e)) == normalize(e)``.
    """
    expr = sympy.sympify(expr)
    _check_supported(expr)
    if expr.has(FnAtom):
        expr = _normalize_fn_args(expr)
    return sympy.cancel(expr)


def is_zero(expr: Expr | int) -> bool:
    """Exact zero test through the normal form."""
    return normalize(expr) == 0


def diff_atom(expr: Expr, atom: Expr) -> Expr:
    """Partial derivative treating every other atom as independent.

    ``atom`` may be a symbol or an applied function atom; occurrences of a
    symbol inside function arguments differentiate by the chain rule.
    """
    if isinstance(atom, FnAtom):
        placeholder = sympy.Dummy("fn")
        swapped = expr.xreplace({atom: placeholder})
        return sympy.diff(swapped, placeholder).xreplace({placeholder: atom})
    return sympy.diff(expr, atom)


def substitute(expr: Expr, bindings: Mapping[Expr, Expr | int]) -> Expr:
    """Simultaneous replacement of atoms followed by normalization."""
    return normalize(expr.xreplace({k: sympy.sympify(v) for k, v in bindings.items()}))


def free_atoms(expr: Expr) -> list[sympy.Symbol]:
    """Free symbols sorted by name, for deterministic iteration."""
    return sorted(expr.free_symbols, key=lambda s: s.name)


__all__ = ["Expr", "normalize", "is_zero", "diff_atom", "substitute", "free_atoms"]
