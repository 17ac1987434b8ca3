"""Incompressible Euler equations with constraints along a = alpha + beta x r."""

from subnoether.catalog.base import CaseRegistry, CaseRun, CatalogCase, ExtraCheck, identity_fields
from subnoether.catalog.vectors import cross, dot, vector


def _b_from_vectors(run: CaseRun) -> dict:
    a = vector([run.let(f"a{i}") for i in (1, 2, 3)])
    beta = vector([run.expr(f"beta{i}") for i in (1, 2, 3)])
    gamma = vector([run.expr(f"gammaT{i}") for i in (1, 2, 3)])
    built = [x / dot(a, a) + c for x, c in zip(a, cross(a, cross(beta, gamma)))]
    declared = [run.let(f"b{i}") for i in (1, 2, 3)]
    return identity_fields(run, "b_from_vectors", [x - y for x, y in zip(built, declared)])


@CaseRegistry.register
class ConstrainedEulerCase(CatalogCase):
    name = "euler3d-constrained"
    title = "Euler equations with the constraints a.grad p = 0 and b.grad(a.u) = 0"
    documents = ("euler3d-constrained.pde",)

    def extras(self) -> list[ExtraCheck]:
        return [
            ExtraCheck(
                "b_from_vectors",
                "identity",
                "the components of b agree with a/|a|^2 + a x (beta x gamma(t))",
                _b_from_vectors,
            ),
        ]


@CaseRegistry.register
class LessConstrainedEulerCase(CatalogCase):
    name = "euler3d-less-constrained"
    title = "Euler equations with the single constraint a.grad p = 0"
    documents = ("euler3d-less-constrained.pde",)
