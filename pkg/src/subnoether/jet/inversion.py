"""Heuristic divergence inversion.

Deliberately weak: peels off the highest-ranked derivative atom when the
expression is linear in it, integrating its coefficient with respect to the
atom one order lower. Anything else returns ``NotFound`` instead of guessing.
"""

import logging

import sympy

from subnoether.core.constants import MAX_INVERSION_STEPS
from subnoether.core.exceptions import ExpressionError, NotFound
from subnoether.expr.kernel import Expr, normalize

from .calculus import Flux, divergence_verify, euler_op, total_derivative
from .context import JetContext

logger = logging.getLogger(__name__)


def _antiderivative(expr: Expr, symbol: sympy.Symbol) -> Expr:
    result = sympy.integrate(expr, symbol)
    if result.has(sympy.Integral):
        raise NotFound(f"cannot integrate {expr} with respect to {symbol}")
    try:
        return normalize(result)
    except ExpressionError as exc:
        raise NotFound(f"antiderivative of {expr} leaves the rational kernel") from exc


def invert_divergence(ctx: JetContext, expr: Expr, max_steps: int = MAX_INVERSION_STEPS) -> Flux:
    """Find a flat flux ``K`` with ``D_i K^i = expr``.

    Raises:
        NotFound: ``expr`` is not a divergence, or the heuristic cannot build ``K``.
    """
    original = normalize(expr)
    for dep in ctx.dependents:
        if normalize(euler_op(ctx, original, dep)) != 0:
            raise NotFound(f"Euler operator for '{dep}' does not annihilate the expression")

    flux = {d: sympy.Integer(0) for d in ctx.independents}
    remainder = original
    for step in range(max_steps):
        if remainder == 0:
            break
        derivatives = [s for s in ctx.jet_atoms(remainder) if ctx.jet_key(s).order > 0]
        if not derivatives:
            # Only x and undifferentiated atoms left: integrate in the first direction.
            direction = ctx.independents[0]
            if ctx.jet_atoms(remainder):
                raise NotFound(f"remainder {remainder} has no derivative atom to peel")
            flux[direction] = flux[direction] + _antiderivative(remainder, ctx.x(direction))
            remainder = normalize(original - sum(total_derivative(ctx, flux[d], d) for d in ctx.independents))
            continue

        top = derivatives[0]
        key = ctx.jet_key(top)
        coefficient = normalize(sympy.diff(remainder, top))
        top_order = key.order
        if any(ctx.jet_key(s).order >= top_order for s in ctx.jet_atoms(coefficient)):
            raise NotFound(f"expression is not linear in its highest derivatives (at {top})")

        direction = key.index[0]
        lower = ctx.jet(key.dep, key.index[1:])
        potential = _antiderivative(coefficient, lower)
        flux[direction] = normalize(flux[direction] + potential)
        remainder = normalize(remainder - total_derivative(ctx, potential, direction))
        logger.debug("inversion step %d: peeled %s along %s", step + 1, top, direction)
    else:
        raise NotFound(f"no convergence after {max_steps} steps")

    result = tuple(flux[d] for d in ctx.independents)
    if not divergence_verify(ctx, original, result, flat=True):
        raise NotFound("constructed flux does not reproduce the expression")
    return result


__all__ = ["invert_divergence"]
