"""Helical flows: the two-component case and the three-component stretch entry."""

from subnoether.catalog.base import CaseRegistry, CaseRun, CatalogCase, ExtraCheck, identity_fields


def _flat_form(run: CaseRun) -> dict:
    """Multiplying the weighted divergence by r flattens it: (r K^t, r K^r, (r/B) K^xi)."""
    weighted = run.law("casimir").flux
    flat = run.law("casimir_flat").flux
    factors = [run.expr("r"), run.expr("r"), run.expr("r/B")]
    return identity_fields(run, "flat_form", [g - m * k for g, m, k in zip(flat, factors, weighted)])


@CaseRegistry.register
class Helical2Case(CatalogCase):
    name = "helical-2comp"
    title = "Two-component helical flow: weighted Casimir laws"
    documents = ("helical-2comp.pde",)

    def extras(self) -> list[ExtraCheck]:
        return [
            ExtraCheck(
                "flat_form",
                "identity",
                "the flat law is the weighted law scaled by (r, r, r/B)",
                _flat_form,
            ),
        ]


@CaseRegistry.register
class Helical3Case(CatalogCase):
    name = "helical-3comp"
    title = "Three-component helical flow"
    skip_reason = "the additional helical constraints of the three-component system are not specified"
