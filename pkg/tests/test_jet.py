import itertools
import random

import pytest
import sympy

from subnoether.core.constants import DERIVATIVE_CACHE_SIZE
from subnoether.core.exceptions import ContextError, MissingDerivativeRule, NotFound
from subnoether.expr import FieldAtom, fn_apply, normalize
from subnoether.jet import (
    EvolutionaryField,
    GeneralField,
    JetContext,
    Weight,
    canonicalize_field,
    divergence,
    divergence_verify,
    euler_op,
    invert_divergence,
    noether_R,
    prolong_apply,
    total_derivative,
    total_derivative_multi,
)
from subnoether.jet.calculus import _total_derivative


def _atoms(ctx: JetContext, max_order: int) -> list[sympy.Expr]:
    indices = [(), ("t",), ("x",), ("x", "x"), ("t", "x"), ("x", "x", "x"), ("t", "t", "x")]
    return [ctx.jet("u", index) for index in indices if len(index) <= max_order] + [sympy.Symbol("x")]


SHAPES = [(p, q) for p in (1, 2, 3) for q in (1, 2, 3)]


def _context(p: int, q: int) -> JetContext:
    return JetContext(["x1", "x2", "x3"][:p], ["u", "v", "w"][:q])


def _jet_atoms(ctx: JetContext, max_order: int) -> list[sympy.Expr]:
    """Every jet coordinate up to ``max_order``, mixed indices included, and the coordinates."""
    atoms: list[sympy.Expr] = [sympy.Symbol(x) for x in ctx.independents]
    for order in range(max_order + 1):
        for index in itertools.combinations_with_replacement(ctx.independents, order):
            atoms.extend(ctx.jet(dep, index) for dep in ctx.dependents)
    return atoms


def _random_polynomial(atoms: list[sympy.Expr], rng: random.Random, max_degree: int) -> sympy.Expr:
    """Small polynomial in ``atoms`` with rational coefficients."""
    terms = []
    for _ in range(rng.randint(1, 3)):
        coefficient = sympy.Rational(rng.randint(-4, 4) or 1, rng.randint(1, 3))
        factors = [rng.choice(atoms) for _ in range(rng.randint(1, max_degree))]
        terms.append(coefficient * sympy.Mul(*factors))
    return sympy.Add(*terms)


def _random_expr(ctx: JetContext, rng: random.Random, max_order: int = 3, max_degree: int = 3) -> sympy.Expr:
    return _random_polynomial(_atoms(ctx, max_order), rng, max_degree)


def _random_jet_expr(ctx: JetContext, rng: random.Random, max_order: int = 3, max_degree: int = 3) -> sympy.Expr:
    return _random_polynomial(_jet_atoms(ctx, max_order), rng, max_degree)


def test_jet_symbols_use_sorted_index(wave_ctx):
    assert wave_ctx.jet("u", ("x", "t")).name == "u_{t,x}"
    assert wave_ctx.jet_key(sympy.Symbol("u_{x,t}")) is None


def test_context_rejects_duplicate_names():
    with pytest.raises(ContextError):
        JetContext(["t", "x"], ["x"])


def test_ranking_prefers_order_then_time(wave_ctx):
    ctx = wave_ctx
    assert ctx.rank_key(ctx.jet("u", ("x", "x"))) > ctx.rank_key(ctx.jet("u", ("t",)))
    assert ctx.rank_key(ctx.jet("u", ("t", "x"))) > ctx.rank_key(ctx.jet("u", ("x", "x")))


def test_total_derivative_product_rule(wave_ctx):
    ctx = wave_ctx
    u, ux, uxx = ctx.jet("u"), ctx.jet("u", ("x",)), ctx.jet("u", ("x", "x"))
    assert normalize(total_derivative(ctx, u * ux, "x") - (u * uxx + ux**2)) == 0


def test_total_derivative_of_explicit_coordinate(wave_ctx):
    ctx = wave_ctx
    x, u = sympy.Symbol("x"), ctx.jet("u")
    assert normalize(total_derivative(ctx, x * u, "x") - (u + x * ctx.jet("u", ("x",)))) == 0


def test_total_derivatives_commute(wave_ctx, rng):
    for _ in range(20):
        expr = _random_expr(wave_ctx, rng)
        tx = total_derivative_multi(wave_ctx, expr, ("t", "x"))
        xt = total_derivative_multi(wave_ctx, expr, ("x", "t"))
        assert normalize(tx - xt) == 0


def test_total_derivative_cache_is_bounded(wave_ctx):
    ctx = wave_ctx
    expr = ctx.jet("u") ** 3 * ctx.jet("u", ("x",))
    first = total_derivative(ctx, expr, "x")
    hits = _total_derivative.cache_info().hits
    assert total_derivative(ctx, expr, "x") is first
    assert _total_derivative.cache_info().hits == hits + 1
    assert _total_derivative.cache_info().maxsize == DERIVATIVE_CACHE_SIZE


def test_chain_rule_through_function_atom(wave_ctx):
    ctx = wave_ctx
    u = ctx.jet("u")
    expr = fn_apply("f", u**2)
    expected = 2 * u * ctx.jet("u", ("x",)) * fn_apply("f", u**2, orders=(1,))
    assert normalize(total_derivative(ctx, expr, "x") - expected) == 0


def test_field_atom_uses_registered_rule():
    r, b = sympy.symbols("r b")
    B = sympy.Symbol("B")
    ctx = JetContext(["t", "r"], ["v"], parameters=["b"], fields=[FieldAtom("B", ("r",), {"r": b**2 * B**3 / r**3})])
    assert normalize(total_derivative(ctx, B**2, "r") - 2 * b**2 * B**4 / r**3) == 0
    assert total_derivative(ctx, B, "t") == 0


def test_field_atom_without_rule_raises():
    ctx = JetContext(["r", "s"], ["v"], fields=[FieldAtom("B", ("r", "s"), {"r": sympy.Integer(1)})])
    with pytest.raises(MissingDerivativeRule):
        total_derivative(ctx, sympy.Symbol("B"), "s")


def test_prolonged_action_on_derivative(wave_ctx):
    ctx = wave_ctx
    field = EvolutionaryField({"u": ctx.jet("u") ** 2})
    ux = ctx.jet("u", ("x",))
    assert normalize(prolong_apply(ctx, field, ux**2) - 4 * ctx.jet("u") * ux**2) == 0


def test_euler_operator_of_wave_lagrangian(wave_ctx):
    ctx = wave_ctx
    lagrangian = ctx.jet("u", ("t",)) ** 2 / 2 - ctx.jet("u", ("x",)) ** 2 / 2
    expected = ctx.jet("u", ("x", "x")) - ctx.jet("u", ("t", "t"))
    assert normalize(euler_op(ctx, lagrangian, "u") - expected) == 0


@pytest.mark.slow
@pytest.mark.parametrize("p, q", SHAPES)
def test_noether_identity_holds_for_random_expressions(p, q):
    ctx = _context(p, q)
    rng = random.Random(100 * p + q)
    for _ in range(30):
        expr = _random_jet_expr(ctx, rng, max_order=3, max_degree=3)
        field = EvolutionaryField(
            {dep: _random_jet_expr(ctx, rng, max_order=1, max_degree=2) for dep in ctx.dependents}
        )
        flux = noether_R(ctx, field, expr)
        characteristic_part = sympy.Add(
            *(field.characteristic(dep) * euler_op(ctx, expr, dep) for dep in ctx.dependents)
        )
        identity = prolong_apply(ctx, field, expr) - characteristic_part - divergence(ctx, flux, flat=True)
        assert normalize(identity) == 0, expr


@pytest.mark.slow
@pytest.mark.parametrize("p, q", SHAPES)
def test_euler_operator_annihilates_divergences(p, q):
    ctx = _context(p, q)
    rng = random.Random(200 + 10 * p + q)
    for _ in range(25):
        flux = tuple(_random_jet_expr(ctx, rng, max_order=2) for _ in ctx.independents)
        div = divergence(ctx, flux, flat=True)
        for dep in ctx.dependents:
            assert normalize(euler_op(ctx, div, dep)) == 0, flux


@pytest.mark.slow
@pytest.mark.parametrize("p, q", SHAPES)
def test_prolongation_commutes_with_total_derivatives(p, q):
    ctx = _context(p, q)
    rng = random.Random(300 + 10 * p + q)
    for _ in range(15):
        expr = _random_jet_expr(ctx, rng, max_order=2)
        field = EvolutionaryField(
            {dep: _random_jet_expr(ctx, rng, max_order=1, max_degree=2) for dep in ctx.dependents}
        )
        for direction in ctx.independents:
            left = prolong_apply(ctx, field, total_derivative(ctx, expr, direction))
            right = total_derivative(ctx, prolong_apply(ctx, field, expr), direction)
            assert normalize(left - right) == 0, (expr, direction)


@pytest.mark.parametrize("p, q", SHAPES)
def test_total_derivatives_commute_in_every_shape(p, q):
    ctx = _context(p, q)
    rng = random.Random(400 + 10 * p + q)
    for _ in range(5):
        expr = _random_jet_expr(ctx, rng, max_order=2)
        for i, j in itertools.combinations(ctx.independents, 2):
            ij = total_derivative_multi(ctx, expr, (i, j))
            ji = total_derivative_multi(ctx, expr, (j, i))
            assert normalize(ij - ji) == 0


def test_canonicalize_time_translation(wave_ctx):
    field = canonicalize_field(wave_ctx, GeneralField(xi={"t": sympy.Integer(1)}))
    assert field.phi == {"u": -wave_ctx.jet("u", ("t",))}


def test_canonicalize_keeps_vertical_part(wave_ctx):
    ctx = wave_ctx
    x = sympy.Symbol("x")
    field = canonicalize_field(ctx, GeneralField(xi={"x": x}, phi={"u": ctx.jet("u")}))
    assert normalize(field.characteristic("u") - (ctx.jet("u") - x * ctx.jet("u", ("x",)))) == 0


def test_weighted_divergence():
    r = sympy.Symbol("r")
    ctx = JetContext(["t", "r"], ["v"], weights={"r": Weight(outer=1 / r, inner=r)})
    v = ctx.jet("v")
    expected = ctx.jet("v", ("t",)) + v / r + ctx.jet("v", ("r",))
    assert divergence_verify(ctx, expected, (v, v))
    assert not divergence_verify(ctx, expected, (v, v), flat=True)


def test_invert_divergence_builds_flux(wave_ctx):
    ctx = wave_ctx
    u, ut, ux, uxx = ctx.jet("u"), ctx.jet("u", ("t",)), ctx.jet("u", ("x",)), ctx.jet("u", ("x", "x"))
    flux = invert_divergence(ctx, u * ut + ux**2 + u * uxx)
    assert normalize(flux[0] - u**2 / 2) == 0
    assert normalize(flux[1] - u * ux) == 0


def test_invert_divergence_rejects_non_divergence(wave_ctx):
    ctx = wave_ctx
    with pytest.raises(NotFound):
        invert_divergence(ctx, ctx.jet("u") * ctx.jet("u", ("x",)) ** 2)
