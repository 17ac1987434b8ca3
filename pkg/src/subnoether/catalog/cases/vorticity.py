"""Ideal flow in vorticity form: Casimirs in two and three dimensions."""

from subnoether.catalog.base import (
    CaseRegistry,
    CaseRun,
    CatalogCase,
    ExtraCheck,
    characteristics_fields,
    identity_fields,
)
from subnoether.jet.calculus import prolong_apply
from subnoether.subsym import combination, triviality_classify
from subnoether.system.certificate import Certificate

VORT3D = "vort3d.pde"
VORT3D_GAMMA0 = "vort3d-gamma0.pde"


@CaseRegistry.register
class Vorticity2dCase(CatalogCase):
    name = "vort2d"
    title = "Two-dimensional ideal flow: Casimirs from f(w) d/dw"
    documents = ("vort2d.pde",)


def _printed_certificate(run: CaseRun) -> dict:
    """The certificate with f(w) on D4 instead of D8 misses by f(w)(D8 - D4)."""
    document = run.document(VORT3D)
    system = run.system(VORT3D)
    f = run.expr("f(w)", VORT3D)
    exact = document.certificates["action"]
    printed = exact + Certificate.on(D4=f, D8=-f)
    applied = prolong_apply(system.ctx, document.fields["X"], combination(system, document.multipliers["G"]))
    gap = system.combination(Certificate.on(D8=f, D4=-f))
    fields = identity_fields(run, "printed_certificate", applied - system.combination(printed) - gap)
    fields["certificate"] = printed.to_dict()
    fields["message"] = "differs from X(G) by f(w) (D8 - D4)"
    return fields


def _rewritten_characteristics(run: CaseRun) -> dict:
    system = run.system(VORT3D)
    rewrite = ("S", run.expr("-phi(x1, x2, x3)*f'(w)", VORT3D))
    classification = triviality_classify(system, run.law("casimir", VORT3D), [rewrite])
    expected = {
        "D1": run.expr("-phi(x1, x2, x3)*D_x1(f'(w))", VORT3D),
        "D2": run.expr("-phi(x1, x2, x3)*D_x2(f'(w))", VORT3D),
        "D3": run.expr("-phi(x1, x2, x3)*D_x3(f'(w))", VORT3D),
        "D4": run.expr("gamma0*f'(w) + phi(x1, x2, x3)*D_t(f'(w))", VORT3D),
        "D8": run.expr("f(w) - w*f'(w)", VORT3D),
        "D12": run.expr("-(w1*D_x1(f'(w)) + w2*D_x2(f'(w)) + w3*D_x3(f'(w)))", VORT3D),
    }
    f_prime = run.expr("f'(w)", VORT3D)
    corrections = {"D4": Certificate.on(D12=f_prime), "D12": Certificate.on(D4=-f_prime)}
    return characteristics_fields(system, classification.characteristics, expected, corrections)


@CaseRegistry.register
class Vorticity3dCase(CatalogCase):
    name = "vort3d-constrained"
    title = "Three-dimensional ideal flow with the constraint grad(phi).u = gamma0"
    documents = (VORT3D, VORT3D_GAMMA0)

    def extras(self) -> list[ExtraCheck]:
        return [
            ExtraCheck(
                "printed_certificate",
                "identity",
                "attaching f(w) to D4 instead of D8 leaves the residual f(w)(D8 - D4)",
                _printed_certificate,
            ),
            ExtraCheck(
                "rewritten_characteristics",
                "characteristics",
                "after the syzygy rewrite the characteristics are -phi D_i f', gamma0 f' + phi D_t f', "
                "f - w f' and -w^j D_j f'",
                _rewritten_characteristics,
            ),
        ]
