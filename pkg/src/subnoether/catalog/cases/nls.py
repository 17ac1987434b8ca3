"""Nonlinear Schroedinger equation: the dilatation and mass conservation."""

from subnoether.catalog.base import CaseRegistry, CaseRun, CatalogCase, ExtraCheck, characteristics_fields, identity_fields
from subnoether.subsym import triviality_classify


def _mass_characteristics(run: CaseRun) -> dict:
    system = run.system()
    classification = triviality_classify(system, run.law("mass"))
    expected = {"D1": run.expr("-v"), "D2": run.expr("u")}
    return characteristics_fields(system, classification.characteristics, expected)


def _claw_doubles_mass(run: CaseRun) -> dict:
    mass = run.law("mass").flux
    claw = run.law("mass_claw").flux
    return identity_fields(run, "claw_doubles_mass", [c - 2 * m for c, m in zip(claw, mass)])


@CaseRegistry.register
class NlsCase(CatalogCase):
    name = "nls"
    title = "Nonlinear Schroedinger equation: dilatation sub-symmetry and mass"
    documents = ("nls.pde",)

    def extras(self) -> list[ExtraCheck]:
        return [
            ExtraCheck(
                "mass_characteristics",
                "characteristics",
                "the mass law has characteristics (-v, u)",
                _mass_characteristics,
            ),
            ExtraCheck(
                "claw_doubles_mass",
                "identity",
                "the generated flux is twice the continuity flux",
                _claw_doubles_mass,
            ),
        ]
