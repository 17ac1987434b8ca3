"""Atoms of the expression kernel.

Independent variables, parameters, jet coordinates and field atoms are plain
``sympy.Symbol`` instances; the jet context decides which is which. Jet
coordinates follow the naming scheme ``u1`` (bare dependent variable) and
``u1_{t,x1}`` (sorted multi-index).

Arbitrary functions are ``FnAtom`` subclasses created per (name, derivative
orders) pair, so ``f``, ``f'`` and ``diff(f,1,0)`` are distinct, cached
function classes and sympy's chain rule raises the orders.
"""

import re
from dataclasses import dataclass, field
from threading import Lock

import sympy

_JET_NAME = re.compile(r"^(?P<dep>[A-Za-z][A-Za-z0-9]*)(?:_\{(?P<index>[A-Za-z0-9, ]*)\})?$")


def jet_name(dep: str, index: tuple[str, ...] = ()) -> str:
    """Symbol name of the jet coordinate ``dep_{index}``."""
    if not index:
        return dep
    return f"{dep}_{{{','.join(index)}}}"


def split_jet_name(name: str) -> tuple[str, tuple[str, ...]] | None:
    """Split ``u1_{t,x1}`` into ``("u1", ("t", "x1"))``; None for other names."""
    match = _JET_NAME.match(name)
    if match is None:
        return None
    raw = match.group("index")
    if raw is None:
        return match.group("dep"), ()
    parts = tuple(p.strip() for p in raw.split(",") if p.strip())
    return match.group("dep"), parts


class FnAtom(sympy.Function):
    """Opaque arbitrary function with per-argument derivative counters."""

    fn_name: str = ""
    orders: tuple[int, ...] = ()

    @classmethod
    def eval(cls, *args):
        return None

    def fdiff(self, argindex=1):
        orders = list(self.orders)
        orders[argindex - 1] += 1
        return fn_class(self.fn_name, tuple(orders))(*self.args)


_FN_CLASSES: dict[tuple[str, tuple[int, ...]], type[FnAtom]] = {}
_FN_LOCK = Lock()


def fn_display_name(name: str, orders: tuple[int, ...]) -> str:
    """Printed head of a function atom: ``f``, ``f'``, ``f''`` or ``diff(f,1,0)``."""
    if not any(orders):
        return name
    if len(orders) == 1:
        return name + "'" * orders[0]
    return f"diff({name},{','.join(str(k) for k in orders)})"


def fn_class(name: str, orders: tuple[int, ...]) -> type[FnAtom]:
    """Return the cached function class for ``name`` with the given derivative orders."""
    key = (name, tuple(orders))
    with _FN_LOCK:
        cls = _FN_CLASSES.get(key)
        if cls is None:
            cls = type(FnAtom)(
                fn_display_name(name, key[1]),
                (FnAtom,),
                {"fn_name": name, "orders": key[1], "nargs": len(key[1])},
            )
            _FN_CLASSES[key] = cls
    return cls


def fn_apply(name: str, *args: sympy.Expr, orders: tuple[int, ...] | None = None) -> sympy.Expr:
    """Build ``f(args)`` or one of its derivatives."""
    return fn_class(name, orders or (0,) * len(args))(*args)


def fn_atoms(expr: sympy.Expr) -> set[FnAtom]:
    """All function atoms occurring in an expression, nested ones included."""
    return {a for a in sympy.preorder_traversal(expr) if isinstance(a, FnAtom)}


@dataclass(frozen=True)
class FieldAtom:
    """A scalar field of some independent variables with closed-form derivative rules."""

    name: str
    args: tuple[str, ...]
    rules: dict[str, sympy.Expr] = field(default_factory=dict, compare=False, hash=False)

    @property
    def symbol(self) -> sympy.Symbol:
        return sympy.Symbol(self.name)


__all__ = [
    "jet_name",
    "split_jet_name",
    "FnAtom",
    "fn_class",
    "fn_apply",
    "fn_atoms",
    "fn_display_name",
    "FieldAtom",
]
