import pytest
import sympy

from subnoether.core.exceptions import NotADivergence, NotVariationalSymmetry, SubSymmetryError
from subnoether.expr import normalize
from subnoether.jet import EvolutionaryField
from subnoether.subsym import (
    VERDICT_NONTRIVIAL,
    Multiplier,
    Refutation,
    SubSymmetry,
    deform_claw,
    first_noether,
    generate_claw,
    laws_equivalent,
    noether_system,
    probe,
    quasi_noether_check,
    subsymmetry_check,
    triviality_classify,
)
from subnoether.system import Certificate, ConservationLaw


def _symbols(*names):
    return [sympy.Symbol(n) for n in names]


def test_mass_combination_is_quasi_noether(nls):
    quasi = quasi_noether_check(nls.system, nls.multipliers["G"])
    assert quasi.holds
    assert all(gamma.is_empty for gamma in quasi.gammas.values())


def test_dilatation_is_certified_sub_symmetry(nls):
    u, v = _symbols("u", "v")
    certificate = Certificate.on(D1=-2 * v, D2=2 * u)
    sub = subsymmetry_check(nls.system, nls.fields["dilatation"], nls.multipliers["G"], certificate)
    assert isinstance(sub, SubSymmetry)
    assert sub.mode == "certificate"
    assert sub.oracle.failures == 0


def test_dilatation_is_sub_symmetry_by_reduction(nls):
    sub = subsymmetry_check(nls.system, nls.fields["dilatation"], nls.multipliers["G"])
    assert isinstance(sub, SubSymmetry)
    assert sub.mode == "reduction"


def test_dilatation_is_not_a_symmetry_of_first_equation(nls):
    u, v, k = _symbols("u", "v", "k")
    unit = Multiplier({("D1", ()): sympy.Integer(1)}, "D1")
    result = subsymmetry_check(nls.system, nls.fields["dilatation"], unit)
    assert isinstance(result, Refutation)
    assert normalize(result.normal_form + 2 * k * u * (u**2 + v**2)) == 0
    assert result.oracle.failures == 0


def test_probe_reduces_on_solutions(nls):
    u, v, k = _symbols("u", "v", "k")
    reduced = probe(nls.system, nls.fields["dilatation"], "D1")
    assert normalize(reduced + 2 * k * u * (u**2 + v**2)) == 0


def test_generated_flux_is_twice_the_continuity_flux(nls):
    u, v = _symbols("u", "v")
    ux, vx = _symbols("u_{x}", "v_{x}")
    sub = subsymmetry_check(
        nls.system, nls.fields["dilatation"], nls.multipliers["G"], Certificate.on(D1=-2 * v, D2=2 * u)
    )
    law = generate_claw(nls.system, sub)
    assert normalize(law.flux[0] - (u**2 + v**2)) == 0
    assert normalize(law.flux[1] - 2 * (u * vx - v * ux)) == 0


def test_mass_is_nontrivial(nls):
    u, v = _symbols("u", "v")
    classification = triviality_classify(nls.system, nls.laws["mass"])
    assert classification.verdict == VERDICT_NONTRIVIAL
    assert classification.characteristics == {"D1": -v, "D2": u}


def test_law_is_not_equivalent_to_its_double(nls):
    mass = nls.laws["mass"]
    doubled = ConservationLaw(
        flux=tuple(2 * c for c in mass.flux),
        certificate=mass.certificate.scaled(2),
    )
    assert not laws_equivalent(nls.system, mass, doubled).holds
    assert laws_equivalent(nls.system, mass, mass).kind == "exact"


def test_time_translation_gives_energy(wave):
    ctx = wave.ctx
    ut, ux = ctx.jet("u", ("t",)), ctx.jet("u", ("x",))
    lagrangian = wave.lagrangians["L"]
    law = first_noether(ctx, lagrangian, wave.fields["T"], (-lagrangian, sympy.Integer(0)), wave.system)
    assert normalize(law.flux[0] - (ut**2 + ux**2) / 2) == 0
    assert normalize(law.flux[1] + ut * ux) == 0
    assert law.certificate.entries == {("D1", ()): -ut}


def test_scaling_is_not_variational(wave):
    ctx = wave.ctx
    field = EvolutionaryField({"u": ctx.jet("u")})
    with pytest.raises(NotVariationalSymmetry):
        first_noether(ctx, wave.lagrangians["L"], field, (sympy.Integer(0), sympy.Integer(0)))


def test_multiplier_needs_a_nonzero_entry():
    with pytest.raises(SubSymmetryError):
        Multiplier({("D1", ()): sympy.Integer(0)}, "empty")


def test_vector_multiplier_length_must_match(nls):
    with pytest.raises(SubSymmetryError):
        Multiplier.from_vector(nls.system, [sympy.Integer(1)], "short")


def test_claw_needs_function_valued_multiplier(nls):
    operator = Multiplier({("D1", ("x",)): sympy.Integer(1)}, "Dx")
    sub = SubSymmetry(nls.fields["dilatation"], operator, sympy.Integer(0), Certificate(), "identical")
    with pytest.raises(SubSymmetryError):
        generate_claw(nls.system, sub)


def test_deform_continuity_flux_by_dilatation(nls):
    u, v, u_x, v_x = _symbols("u", "v", "u_x", "v_x")
    certificate = Certificate.on(D1=-2 * v, D2=2 * u)
    law = deform_claw(
        nls.system, nls.fields["dilatation"], nls.fluxes["continuity"], nls.multipliers["G"], certificate
    )
    assert normalize(law.flux[0] - (u**2 + v**2)) == 0
    assert normalize(law.flux[1] - 2 * (u * v_x - v * u_x)) == 0


def test_deform_rejects_flux_of_another_combination(nls):
    u, v, u_x, v_x = _symbols("u", "v", "u_x", "v_x")
    doubled = (u**2 + v**2, 2 * (u * v_x - v * u_x))
    with pytest.raises(NotADivergence):
        deform_claw(nls.system, nls.fields["dilatation"], doubled, nls.multipliers["G"])


def test_casimir_reduction_certificate_has_no_singular_entries(vort2d):
    system = vort2d.system
    sub = subsymmetry_check(system, vort2d.fields["X"], vort2d.multipliers["casimir"])
    assert isinstance(sub, SubSymmetry)
    assert sub.mode == "reduction"
    for mu in sub.certificate.entries.values():
        assert not system.ctx.jet_atoms(sympy.fraction(mu)[1])


def test_casimir_field_is_not_a_symmetry_of_vorticity_definition(vort2d):
    system = vort2d.system
    unit = Multiplier({("D5", ()): sympy.Integer(1)}, "D5")
    result = subsymmetry_check(system, vort2d.fields["X"], unit)
    assert isinstance(result, Refutation)
    assert str(result.normal_form) == "f(w)"


def test_noether_law_on_euler_lagrange_system(wave):
    ctx = wave.ctx
    ut = ctx.jet("u", ("t",))
    lagrangian = wave.lagrangians["L"]
    law = first_noether(ctx, lagrangian, wave.fields["T"], (-lagrangian, sympy.Integer(0)))
    system = noether_system(ctx, lagrangian)
    assert system.labels == ("ELu",)
    assert law.certificate.entries == {("ELu", ()): -ut}
    assert noether_system(ctx, lagrangian, wave.system) is wave.system
