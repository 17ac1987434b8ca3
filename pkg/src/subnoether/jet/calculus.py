"""Total derivatives, prolongations, Euler operators and the Noether R operator."""

import logging
from collections.abc import Iterable, Sequence
from functools import lru_cache

import sympy

from subnoether.core.constants import DERIVATIVE_CACHE_SIZE
from subnoether.core.exceptions import MissingDerivativeRule
from subnoether.expr.kernel import Expr, diff_atom, normalize

from .context import JetContext
from .fields import EvolutionaryField, GeneralField

logger = logging.getLogger(__name__)

Flux = tuple[Expr, ...]


def total_derivative(ctx: JetContext, expr: Expr, direction: str) -> Expr:
    """``D_i expr = d_i expr + u_{J+i} d/du_J expr + (field rules)``.

    Function atoms follow the chain rule; field atoms use their registered
    rules and are constant in directions outside their arguments.

    Raises:
        MissingDerivativeRule: a field atom depends on ``direction`` without a rule.
    """
    return _total_derivative(ctx, sympy.sympify(expr), direction)


@lru_cache(maxsize=DERIVATIVE_CACHE_SIZE)
def _total_derivative(ctx: JetContext, expr: Expr, direction: str) -> Expr:
    x = ctx.x(direction)
    terms = [sympy.diff(expr, x)]
    for symbol in sorted(expr.free_symbols, key=lambda s: s.name):
        key = ctx.jet_key(symbol)
        if key is not None:
            partial = sympy.diff(expr, symbol)
            if partial != 0:
                terms.append(ctx.jet(key.dep, (*key.index, direction)) * partial)
            continue
        field_atom = ctx.field_of(symbol)
        if field_atom is None or direction not in field_atom.args:
            continue
        rule = field_atom.rules.get(direction)
        if rule is None:
            raise MissingDerivativeRule(field_atom.name, direction)
        partial = sympy.diff(expr, symbol)
        if partial != 0:
            terms.append(rule * partial)
    return sympy.Add(*terms)


def total_derivative_multi(ctx: JetContext, expr: Expr, index: Iterable[str]) -> Expr:
    """``D_J expr`` for a multi-index ``J`` (empty index returns ``expr``)."""
    result = sympy.sympify(expr)
    for direction in index:
        result = total_derivative(ctx, result, direction)
    return result


def _minus_total_derivative_multi(ctx: JetContext, expr: Expr, index: Sequence[str]) -> Expr:
    """``(-D)_J expr``."""
    sign = -1 if len(index) % 2 else 1
    return sign * total_derivative_multi(ctx, expr, index)


def prolong_apply(ctx: JetContext, field: EvolutionaryField, expr: Expr) -> Expr:
    """Prolonged action ``sum_{a,J} D_J(phi^a) d/du^a_J expr``."""
    expr = sympy.sympify(expr)
    terms = []
    for symbol in ctx.jet_atoms(expr):
        key = ctx.jet_key(symbol)
        phi = field.characteristic(key.dep)
        if phi == 0:
            continue
        terms.append(total_derivative_multi(ctx, phi, key.index) * diff_atom(expr, symbol))
    return sympy.Add(*terms)


def euler_op(ctx: JetContext, expr: Expr, dep: str) -> Expr:
    """Euler operator ``E_a = sum_J (-D)_J d/du^a_J``."""
    expr = sympy.sympify(expr)
    terms = []
    for symbol in ctx.jet_atoms(expr):
        key = ctx.jet_key(symbol)
        if key.dep != dep:
            continue
        terms.append(_minus_total_derivative_multi(ctx, diff_atom(expr, symbol), key.index))
    return sympy.Add(*terms)


def noether_R(ctx: JetContext, field: EvolutionaryField, expr: Expr) -> Flux:
    """Components ``R^i`` of the Noether operator identity ``X = phi^a E_a + D_i R^i``.

    For an atom ``u^a_M`` with ordered index ``M = (m_1..m_k)`` and
    ``P = d expr / du^a_M`` the contribution to ``R^{m_j}`` is
    ``D_{m_{j+1}..m_k}(phi^a) * (-D)_{m_1..m_{j-1}} P``; the sum over ``j``
    telescopes to ``D_M(phi^a) P - phi^a (-D)_M P``. ``R`` is unique only up
    to divergence-free tuples.
    """
    expr = sympy.sympify(expr)
    components: dict[str, list[Expr]] = {d: [] for d in ctx.independents}
    for symbol in ctx.jet_atoms(expr):
        key = ctx.jet_key(symbol)
        phi = field.characteristic(key.dep)
        if phi == 0 or not key.index:
            continue
        partial = diff_atom(expr, symbol)
        index = key.index
        for j, direction in enumerate(index):
            left = total_derivative_multi(ctx, phi, index[j + 1 :])
            right = _minus_total_derivative_multi(ctx, partial, index[:j])
            components[direction].append(left * right)
    return tuple(normalize(sympy.Add(*components[d])) for d in ctx.independents)


def canonicalize_field(ctx: JetContext, field: GeneralField) -> EvolutionaryField:
    """Evolutionary representative ``phi^a - u^a_i xi^i``."""
    phi = {}
    for dep in ctx.dependents:
        value = field.phi.get(dep, sympy.Integer(0))
        for direction in ctx.independents:
            xi = field.xi.get(direction, sympy.Integer(0))
            if xi != 0:
                value -= ctx.jet(dep, (direction,)) * xi
        value = normalize(value)
        if value != 0:
            phi[dep] = value
    return EvolutionaryField(phi=phi, name=field.name)


def divergence(ctx: JetContext, flux: Sequence[Expr], flat: bool = False) -> Expr:
    """``sum_i s_i D_i(m_i K^i)`` with the context weights, or the flat divergence."""
    if len(flux) != len(ctx.independents):
        raise ValueError(f"flux has {len(flux)} components, expected {len(ctx.independents)}")
    terms = []
    for direction, component in zip(ctx.independents, flux):
        if flat:
            terms.append(total_derivative(ctx, component, direction))
            continue
        weight = ctx.weight(direction)
        terms.append(weight.outer * total_derivative(ctx, weight.inner * component, direction))
    return sympy.Add(*terms)


def divergence_verify(ctx: JetContext, expr: Expr, flux: Sequence[Expr], flat: bool = False) -> bool:
    """Whether ``expr - divergence(flux)`` normalizes to zero."""
    return normalize(expr - divergence(ctx, flux, flat=flat)) == 0


__all__ = [
    "Flux",
    "total_derivative",
    "total_derivative_multi",
    "prolong_apply",
    "euler_op",
    "noether_R",
    "canonicalize_field",
    "divergence",
    "divergence_verify",
]
