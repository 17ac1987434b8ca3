import json

import pytest
from pydantic import ValidationError

from subnoether.core.models import CheckRecord, OracleSummary, Report
from subnoether.output import render_json, render_text


def _report(name: str = "demo.pde") -> Report:
    return Report(
        name=name,
        seed=0,
        oracle_points=4,
        records=[
            CheckRecord(name="mass", kind="claw", claim="mass is conserved", verdict="PASS", flux=["u", "v"],
                        oracle=OracleSummary(points=4, failures=0)),
            CheckRecord(name="broken", kind="zero", verdict="FAIL", residual="u_{t}" + " + u" * 300),
        ],
    )


def test_text_report_layout():
    text = render_text(_report())
    lines = text.splitlines()
    assert lines[0] == "== demo.pde (seed 0, 4 oracle points)"
    assert lines[1] == "PASS    mass [claw]"
    assert "mass is conserved" in text
    assert "4/4 points" in text
    assert text.rstrip().endswith("-- 1 passed, 1 failed, 0 skipped, 0 info")


def test_long_residuals_are_clipped():
    text = render_text(_report())
    residual_line = next(line for line in text.splitlines() if "u_{t}" in line)
    assert len(residual_line) < 450


def test_json_single_report_is_an_object():
    data = json.loads(render_json(_report()))
    assert data["name"] == "demo.pde"
    assert [r["verdict"] for r in data["records"]] == ["PASS", "FAIL"]


def test_json_several_reports_are_a_list():
    data = json.loads(render_json([_report("a"), _report("b")]))
    assert [r["name"] for r in data] == ["a", "b"]


def test_json_is_byte_stable():
    assert render_json(_report()) == render_json(_report())


def test_record_rejects_unknown_verdict():
    with pytest.raises(ValidationError):
        CheckRecord(name="mass", kind="claw", verdict="MAYBE")
