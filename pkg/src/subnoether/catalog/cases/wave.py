"""Linear wave equation: Noether's theorem against the sub-symmetry route."""

from subnoether.catalog.base import CaseRegistry, CatalogCase


@CaseRegistry.register
class WaveCase(CatalogCase):
    name = "wave-lagrangian"
    title = "Wave equation: energy from time translation"
    documents = ("wave.pde",)
