"""Three-component vector calculus expanded to scalar jet expressions."""

from collections.abc import Sequence

import sympy

from subnoether.expr.kernel import Expr
from subnoether.jet.calculus import total_derivative
from subnoether.jet.context import JetContext

Vector = tuple[Expr, Expr, Expr]


def levi_civita(i: int, j: int, k: int) -> int:
    """``eps^{ijk}`` over indices 0..2 with ``eps^{012} = +1``."""
    return int(sympy.LeviCivita(i, j, k))


def vector(components: Sequence[Expr]) -> Vector:
    if len(components) != 3:
        raise ValueError(f"expected 3 components, got {len(components)}")
    return tuple(sympy.sympify(c) for c in components)


def dot(a: Sequence[Expr], b: Sequence[Expr]) -> Expr:
    return sympy.Add(*(x * y for x, y in zip(a, b)))


def cross(a: Sequence[Expr], b: Sequence[Expr]) -> Vector:
    return tuple(
        sympy.Add(*(levi_civita(i, j, k) * a[j] * b[k] for j in range(3) for k in range(3))) for i in range(3)
    )


def scale(factor: Expr, a: Sequence[Expr]) -> Vector:
    return tuple(factor * x for x in a)


def gradient(ctx: JetContext, expr: Expr, directions: Sequence[str]) -> Vector:
    return tuple(total_derivative(ctx, expr, d) for d in directions)


def divergence(ctx: JetContext, a: Sequence[Expr], directions: Sequence[str]) -> Expr:
    return sympy.Add(*(total_derivative(ctx, x, d) for x, d in zip(a, directions)))


def curl(ctx: JetContext, a: Sequence[Expr], directions: Sequence[str]) -> Vector:
    """``(curl a)^i = eps^{ijk} D_j a^k``."""
    return tuple(
        sympy.Add(
            *(
                levi_civita(i, j, k) * total_derivative(ctx, a[k], directions[j])
                for j in range(3)
                for k in range(3)
                if levi_civita(i, j, k)
            )
        )
        for i in range(3)
    )


__all__ = ["Vector", "levi_civita", "vector", "dot", "cross", "scale", "gradient", "divergence", "curl"]
