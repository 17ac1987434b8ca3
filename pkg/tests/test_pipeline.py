import pytest

from subnoether.config import Settings
from subnoether.config.settings import CheckPipelineConfig, OracleConfig
from subnoether.core.constants import VERDICT_FAIL, VERDICT_INFO, VERDICT_PASS, VERDICT_SKIPPED
from subnoether.dsl import parse_document
from subnoether.pipeline import CheckConfig, run_document

FAILING = """
context {
    indep t, x;
    dep u;
}

system heat {
    D1: u_t - u_{x,x};
    solve D1 for u_{x,x};
}

check zero u_{x,x} - u_t as on_solutions;
check zero u_{x,x} as not_on_solutions;
check nonzero u_x as nonzero_gradient;
check identity D_x(u*u_x) - u*u_{x,x} - u_x^2 as product_rule;
"""


def _verdicts(result):
    return {r.name: r.verdict for r in result.report.records}


def test_nls_document_passes(nls, config):
    result = run_document(nls, config, name="nls.pde")
    verdicts = _verdicts(result)
    assert verdicts.pop("dilatation_on_d1") == VERDICT_INFO
    assert set(verdicts.values()) == {VERDICT_PASS}
    assert result.report.ok
    assert {"mass", "mass_claw"} <= set(result.laws)


def test_records_follow_declaration_order(nls, config):
    result = run_document(nls, config, name="nls.pde")
    assert [r.name for r in result.report.records] == [d.name for d in nls.directives]


def test_refutation_reports_raw_residual(nls, config):
    result = run_document(nls, config, name="nls.pde")
    record = next(r for r in result.report.records if r.name == "dilatation_not_symmetry")
    assert record.verdict == VERDICT_PASS
    assert "k" in record.message


def test_generated_law_carries_flux_and_certificate(nls, config):
    result = run_document(nls, config, name="nls.pde")
    record = next(r for r in result.report.records if r.name == "mass_claw")
    assert record.certificate == {"D1": "-2*v", "D2": "2*u"}
    assert record.oracle.failures == 0
    assert record.message == "matches expected flux (exact)"


def test_failures_are_reported_per_check(config):
    result = run_document(parse_document(FAILING), config)
    assert _verdicts(result) == {
        "on_solutions": VERDICT_PASS,
        "not_on_solutions": VERDICT_FAIL,
        "nonzero_gradient": VERDICT_PASS,
        "product_rule": VERDICT_PASS,
    }
    assert result.stats.failed == 1
    assert not result.report.ok


def test_fail_fast_skips_remaining_checks():
    config = CheckConfig(seed=7, oracle_points=4, fail_fast=True)
    result = run_document(parse_document(FAILING), config)
    verdicts = _verdicts(result)
    assert verdicts["not_on_solutions"] == VERDICT_FAIL
    assert verdicts["nonzero_gradient"] == VERDICT_SKIPPED
    assert verdicts["product_rule"] == VERDICT_SKIPPED


def test_parallel_run_matches_serial_run(nls):
    serial = run_document(nls, CheckConfig(seed=3, oracle_points=3), name="nls.pde")
    parallel = run_document(nls, CheckConfig(seed=3, oracle_points=3, workers=4), name="nls.pde")
    assert parallel.report.model_dump() == serial.report.model_dump()


def test_config_from_settings_ignores_missing_overrides():
    settings = Settings(oracle=OracleConfig(points=9, seed=5), check=CheckPipelineConfig(workers=2))
    config = CheckConfig.from_settings(settings, seed=None, oracle_points=3)
    assert (config.seed, config.oracle_points, config.workers) == (5, 3, 2)


def test_settings_reject_too_many_workers():
    with pytest.raises(ValueError):
        CheckPipelineConfig(workers=64)
