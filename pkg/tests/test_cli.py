import json
import logging

import pytest
from click.testing import CliRunner

from subnoether.catalog import case_source
from subnoether.cli import cli

BROKEN = """
context {
    indep t, x;
    dep u;
}
let a = uu_x;
"""

FAILING = """
context {
    indep t, x;
    dep u;
}
system heat {
    D1: u_t - u_{x,x};
    solve D1 for u_{x,x};
}
check zero u_{x,x} as not_on_solutions;
"""


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def invoke(runner, tmp_path):
    def _invoke(*args: str):
        return runner.invoke(cli, ["--base-dir", str(tmp_path), *args])

    return _invoke


@pytest.fixture
def nls_file(tmp_path):
    path = tmp_path / "nls.pde"
    path.write_text(case_source("nls.pde"), encoding="utf-8")
    return path


def test_check_passing_document(invoke, nls_file):
    result = invoke("check", str(nls_file), "--oracle-points", "3")
    assert result.exit_code == 0, result.output
    assert "== nls.pde (seed 0, 3 oracle points)" in result.stdout
    assert "PASS    mass_claw [claw]" in result.stdout


def test_check_failing_document_exits_one(invoke, tmp_path):
    path = tmp_path / "heat.pde"
    path.write_text(FAILING, encoding="utf-8")
    result = invoke("check", str(path), "--oracle-points", "2")
    assert result.exit_code == 1
    assert "FAIL    not_on_solutions [zero]" in result.stdout


def test_document_error_exits_two(invoke, tmp_path):
    path = tmp_path / "broken.pde"
    path.write_text(BROKEN, encoding="utf-8")
    result = invoke("check", str(path))
    assert result.exit_code == 2
    assert "did you mean 'u'" in result.stderr


def test_json_output_is_reproducible(invoke, nls_file):
    args = ("check", str(nls_file), "--json", "--seed", "5", "--oracle-points", "2")
    first = invoke(*args)
    second = invoke(*args)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    data = json.loads(first.stdout)
    assert data["seed"] == 5
    assert data["records"][0]["name"] == "continuity_identity"
    assert data["records"][0]["paper_ref"] == "nls: mass continuity"
    assert {"name", "paper_ref", "verdict", "residual", "certificate", "oracle"} <= set(data["records"][0])


def test_seed_from_environment(runner, tmp_path, nls_file):
    result = runner.invoke(
        cli,
        ["--base-dir", str(tmp_path), "check", str(nls_file), "--json", "--oracle-points", "1"],
        env={"SUBNOETHER_SEED": "9"},
    )
    assert json.loads(result.stdout)["seed"] == 9


def test_list_marks_stretch_entries(invoke):
    result = invoke("list")
    assert result.exit_code == 0
    lines = {line.split()[0]: line for line in result.stdout.splitlines()}
    assert "nls" in lines
    assert lines["helical-3comp"].endswith("(skipped)")


def test_export_prints_shipped_document(invoke):
    result = invoke("export", "nls")
    assert result.exit_code == 0
    assert result.stdout == case_source("nls.pde")


def test_export_of_stretch_entry_fails(invoke):
    result = invoke("export", "helical-3comp")
    assert result.exit_code == 1
    assert "ships no document" in result.stderr


def test_demo_unknown_case(invoke):
    result = invoke("demo", "nsl")
    assert result.exit_code == 1
    assert "did you mean 'nls'" in result.stderr


def test_demo_skipped_case_succeeds(invoke):
    result = invoke("demo", "helical-3comp", "--json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["records"][0]["verdict"] == "SKIPPED"


def test_fmt_output_parses_again(invoke, nls_file, tmp_path):
    first = invoke("fmt", str(nls_file))
    assert first.exit_code == 0
    formatted = tmp_path / "formatted.pde"
    formatted.write_text(first.stdout, encoding="utf-8")
    second = invoke("fmt", str(formatted))
    assert second.stdout == first.stdout


def test_verbose_flag_on_run_commands(invoke):
    package = logging.getLogger("subnoether")
    try:
        result = invoke("demo", "helical-3comp", "--json", "--verbose")
        assert result.exit_code == 0, result.output
        assert package.level == logging.DEBUG
        assert json.loads(result.stdout)["records"][0]["verdict"] == "SKIPPED"
    finally:
        package.setLevel(logging.NOTSET)
