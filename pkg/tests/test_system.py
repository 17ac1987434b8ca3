import pytest
import sympy

from subnoether.core.exceptions import (
    CertificateMismatch,
    InvalidSolvedForm,
    InvalidSyzygy,
    NonTerminatingRanking,
    NoSolvedForm,
    Undecided,
)
from subnoether.expr import fn_apply, normalize
from subnoether.system import (
    Certificate,
    DifferentialSystem,
    characteristic_residual,
    euler_lagrange_system,
    ibp_characteristic,
    on_solutions_zero,
    reduce,
    verify_certificate,
)


def _heat_equation(ctx):
    return ctx.jet("u", ("t",)) - ctx.jet("u", ("x", "x"))


def test_solved_form_right_hand_side(heat_system, wave_ctx):
    (solved,) = heat_system.solved_forms
    assert solved.rhs == wave_ctx.jet("u", ("t",))
    assert solved.coefficient == -1


def test_non_constant_coefficient_is_rejected(wave_ctx):
    ctx = wave_ctx
    equation = ctx.jet("u") * ctx.jet("u", ("t",)) - ctx.jet("u", ("x", "x"))
    with pytest.raises(InvalidSolvedForm):
        DifferentialSystem(ctx, [("D1", equation)], [("D1", ctx.jet("u", ("t",)))])


def test_solving_for_lower_ranked_atom_does_not_terminate(wave_ctx):
    ctx = wave_ctx
    with pytest.raises(NonTerminatingRanking):
        DifferentialSystem(ctx, [("D1", _heat_equation(ctx))], [("D1", ctx.jet("u", ("t",)))])


def test_reduce_leading_atom(heat_system, wave_ctx):
    reduction = reduce(heat_system, wave_ctx.jet("u", ("x", "x")))
    assert reduction.normal_form == wave_ctx.jet("u", ("t",))
    assert reduction.certificate.entries == {("D1", ()): -1}


def test_reduce_prolonged_atom(heat_system, wave_ctx):
    ctx = wave_ctx
    reduction = reduce(heat_system, ctx.jet("u", ("t", "x", "x")))
    assert reduction.normal_form == ctx.jet("u", ("t", "t"))
    assert reduction.certificate.entries == {("D1", ("t",)): -1}


def test_reduction_certificate_reproduces_difference(heat_system, wave_ctx):
    ctx = wave_ctx
    expr = ctx.jet("u") * ctx.jet("u", ("x", "x", "x")) + ctx.jet("u", ("x", "x")) ** 2
    reduction = reduce(heat_system, expr)
    assert normalize(expr - reduction.normal_form - heat_system.combination(reduction.certificate)) == 0


def test_unsolved_principal_atom_is_reported(wave_ctx):
    ctx = wave_ctx
    system = DifferentialSystem(ctx, [("D1", _heat_equation(ctx))])
    with pytest.raises(NoSolvedForm):
        reduce(system, ctx.jet("u", ("x", "x", "x")))


def test_on_solutions_by_reduction(heat_system, wave_ctx):
    ctx = wave_ctx
    verdict = on_solutions_zero(heat_system, ctx.jet("u", ("x", "x")) - ctx.jet("u", ("t",)))
    assert verdict.zero
    assert verdict.mode == "reduction"
    assert verdict.oracle.failures == 0


def test_certificate_mismatch(heat_system, wave_ctx):
    with pytest.raises(CertificateMismatch):
        verify_certificate(heat_system, wave_ctx.jet("u", ("x", "x")), Certificate.on(D1=1))


def test_invalid_syzygy(wave_ctx):
    ctx = wave_ctx
    with pytest.raises(InvalidSyzygy):
        DifferentialSystem(ctx, [("D1", _heat_equation(ctx))], syzygies={"S": Certificate.on(D1=1)})


def test_certificate_merges_and_drops_zero_entries():
    cert = Certificate.of([(("D1", ()), 1), (("D1", ()), -1), (("D2", ("x",)), 2)])
    assert cert.entries == {("D2", ("x",)): 2}
    assert cert.to_dict() == {"D2[x]": "2"}


def test_certificates_sort_labels_naturally():
    cert = Certificate.on(D10=1, D2=1)
    assert [label for (label, _), _ in cert.items()] == ["D2", "D10"]


def test_integration_by_parts(heat_system, wave_ctx):
    ctx = wave_ctx
    cert = Certificate.of([(("D1", ("x",)), ctx.jet("u"))])
    form = ibp_characteristic(heat_system, cert)
    assert form.characteristics == {"D1": -ctx.jet("u", ("x",))}
    assert characteristic_residual(heat_system, form) == 0


def test_euler_lagrange_system(wave_ctx):
    ctx = wave_ctx
    lagrangian = ctx.jet("u", ("t",)) ** 2 / 2 - ctx.jet("u", ("x",)) ** 2 / 2
    system = euler_lagrange_system(ctx, lagrangian)
    assert system.labels == ("ELu",)
    expected = ctx.jet("u", ("x", "x")) - ctx.jet("u", ("t", "t"))
    assert normalize(system.equation("ELu").expr - expected) == 0
    assert not system.has_solved_forms
    assert isinstance(system.equation("ELu").expr, sympy.Expr)


def _vorticity(ctx):
    return ctx.jet("u2", ("x1",)) - ctx.jet("u1", ("x2",))


def _jet_free_denominators(system, certificate):
    ctx = system.ctx
    return all(not ctx.jet_atoms(sympy.fraction(mu)[1]) for mu in certificate.entries.values())


def test_reduce_leaves_function_arguments_alone(vort2d):
    system = vort2d.system
    ctx = system.ctx
    f_w = fn_apply("f", ctx.jet("w"))
    reduction = reduce(system, f_w)
    assert reduction.normal_form == f_w
    assert reduction.certificate.entries == {}
    assert reduction.evaluated == normalize(fn_apply("f", _vorticity(ctx)))


def test_reduce_outside_function_arguments(vort2d):
    system = vort2d.system
    ctx = system.ctx
    f_w = fn_apply("f", ctx.jet("w"))
    reduction = reduce(system, ctx.jet("w") * f_w)
    assert reduction.certificate.entries == {("D5", ()): f_w}
    assert normalize(reduction.normal_form - _vorticity(ctx) * f_w) == 0
    assert _jet_free_denominators(system, reduction.certificate)


def test_vanishing_inside_function_arguments_is_undecided(vort2d):
    system = vort2d.system
    ctx = system.ctx
    expr = fn_apply("f", ctx.jet("w")) - fn_apply("f", _vorticity(ctx))
    assert reduce(system, expr).vanishes
    with pytest.raises(Undecided):
        on_solutions_zero(system, expr)
