"""Expression serialization: canonical infix text and JSON trees."""

from typing import Any

import sympy

from .atoms import FnAtom, fn_class
from .kernel import Expr


def to_text(expr: Expr) -> str:
    """Canonical infix text; parseable by the document language."""
    return sympy.sstr(expr)


def to_json_tree(expr: Expr) -> dict[str, Any]:
    """Nested JSON-compatible form of an expression."""
    if isinstance(expr, FnAtom):
        return {"fn": expr.fn_name, "orders": list(expr.orders), "args": [to_json_tree(a) for a in expr.args]}
    if expr.is_Symbol:
        return {"atom": expr.name}
    if expr.is_Rational:
        return {"num": str(expr)}
    if expr.is_Add:
        return {"op": "add", "args": [to_json_tree(a) for a in expr.as_ordered_terms()]}
    if expr.is_Mul:
        return {"op": "mul", "args": [to_json_tree(a) for a in expr.as_ordered_factors()]}
    if expr.is_Pow:
        return {"op": "pow", "args": [to_json_tree(expr.base), to_json_tree(expr.exp)]}
    raise TypeError(f"cannot serialize {type(expr).__name__}: {expr}")


def from_json_tree(tree: dict[str, Any]) -> Expr:
    """Inverse of :func:`to_json_tree`."""
    if "fn" in tree:
        args = [from_json_tree(a) for a in tree["args"]]
        return fn_class(tree["fn"], tuple(tree["orders"]))(*args)
    if "atom" in tree:
        return sympy.Symbol(tree["atom"])
    if "num" in tree:
        return sympy.Rational(tree["num"])
    args = [from_json_tree(a) for a in tree["args"]]
    op = tree["op"]
    if op == "add":
        return sympy.Add(*args)
    if op == "mul":
        return sympy.Mul(*args)
    if op == "pow":
        return sympy.Pow(*args)
    raise ValueError(f"unknown operator '{op}'")


__all__ = ["to_text", "to_json_tree", "from_json_tree"]
