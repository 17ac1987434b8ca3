"""Helicity of ideal flow from a sub-symmetry of the energy combination."""

from subnoether.catalog.base import CaseRegistry, CaseRun, CatalogCase, ExtraCheck, identity_fields
from subnoether.catalog.vectors import curl, divergence, scale

DIRECTIONS = ("x1", "x2", "x3")


def _energy_curl(run: CaseRun):
    ctx = run.document().ctx
    u = [run.expr(dep) for dep in ("u1", "u2", "u3")]
    return ctx, curl(ctx, scale(run.let("E"), u), DIRECTIONS)


def _curl_difference(run: CaseRun) -> dict:
    """The deformed flux exceeds the printed one by (0, curl(E u))."""
    deformed = run.law("helicity").flux
    printed = run.document().fluxes["printed"]
    _, rotation = _energy_curl(run)
    expected = (0, *rotation)
    return identity_fields(run, "curl_difference", [d - p - e for d, p, e in zip(deformed, printed, expected)])


def _curl_divergence_free(run: CaseRun) -> dict:
    ctx, rotation = _energy_curl(run)
    return identity_fields(run, "curl_divergence_free", divergence(ctx, rotation, DIRECTIONS))


@CaseRegistry.register
class HelicityCase(CatalogCase):
    name = "helicity"
    title = "Helicity from a sub-symmetry of the energy combination"
    documents = ("helicity.pde",)

    def extras(self) -> list[ExtraCheck]:
        return [
            ExtraCheck(
                "curl_difference",
                "identity",
                "the deformed flux and u x grad E + (w x u) x u differ by (0, curl(E u))",
                _curl_difference,
            ),
            ExtraCheck(
                "curl_divergence_free",
                "identity",
                "curl(E u) is divergence-free, so the difference is a trivial flux",
                _curl_divergence_free,
            ),
        ]
