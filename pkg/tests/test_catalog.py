import pytest
import sympy

from subnoether.catalog import CaseRegistry, resolve_case, run_case
from subnoether.catalog.base import load_case_document
from subnoether.core.constants import VERDICT_FAIL, VERDICT_SKIPPED
from subnoether.core.exceptions import UnknownCase
from subnoether.expr import fn_apply, normalize
from subnoether.jet import total_derivative
from subnoether.pipeline import CheckConfig

RUNNABLE = [name for name, case in CaseRegistry.all_cases().items() if case.skip_reason is None]


def test_registry_lists_every_case():
    assert {
        "nls",
        "vort2d",
        "vort3d-constrained",
        "euler3d-constrained",
        "euler3d-less-constrained",
        "helical-2comp",
        "helical-3comp",
        "helicity",
        "wave-lagrangian",
    } <= set(CaseRegistry.names())


def test_unknown_case_suggests_a_name():
    with pytest.raises(UnknownCase) as exc_info:
        resolve_case("helicty")
    assert exc_info.value.suggestion == "helicity"


def test_stretch_entry_is_skipped():
    report = run_case("helical-3comp", CheckConfig(seed=0, oracle_points=2))
    assert [r.verdict for r in report.records] == [VERDICT_SKIPPED]
    assert report.ok


@pytest.mark.slow
@pytest.mark.parametrize("name", RUNNABLE)
def test_case_passes(name):
    report = run_case(name, CheckConfig(seed=0, oracle_points=3))
    failures = [(r.name, r.message, r.residual) for r in report.records if r.verdict == VERDICT_FAIL]
    assert failures == []
    assert report.records


def test_nls_extra_checks_pass():
    report = run_case("nls", CheckConfig(seed=1, oracle_points=3))
    names = {r.name: r.verdict for r in report.records}
    assert names["mass_characteristics"] == "PASS"
    assert names["claw_doubles_mass"] == "PASS"


def test_multi_document_records_are_prefixed():
    report = run_case("vort3d-constrained", CheckConfig(seed=0, oracle_points=2))
    assert any(r.name.startswith("vort3d-gamma0.") for r in report.records)


def test_constrained_euler_gamma_is_a_field_of_time():
    document = load_case_document("euler3d-constrained.pde")
    ctx = document.ctx
    t = sympy.Symbol("t")
    assert ctx.fields["gammaT1"].args == ("t",)
    gamma = sympy.Symbol("gammaT1")
    assert normalize(total_derivative(ctx, gamma, "t") - fn_apply("dgammaT1", t)) == 0
    assert total_derivative(ctx, gamma, "x1") == 0
    assert normalize(document.directive("b_divergence_free").expr) == 0
