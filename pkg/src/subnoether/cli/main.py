"""Main CLI entry point using Click."""

import logging
from collections.abc import Callable
from functools import wraps
from pathlib import Path

import click
from dotenv import load_dotenv

from subnoether import __version__
from subnoether.catalog import CaseRegistry, case_source, resolve_case, run_case
from subnoether.config import Settings, load_settings
from subnoether.core.constants import EXIT_CHECK_FAILED, EXIT_DOCUMENT_ERROR, EXIT_OK, SEED_ENV_VAR
from subnoether.core.exceptions import DslError, SubNoetherError
from subnoether.core.models import Report
from subnoether.dsl import format_document, load_document
from subnoether.output import render_json, render_text
from subnoether.pipeline import CheckConfig, run_document
from subnoether.utils.logging import setup_logging

logger = logging.getLogger(__name__)


def _get_base_dir() -> Path:
    """Get base directory from current working directory or its parents."""
    cwd = Path.cwd()
    if (cwd / "config" / "config.yaml").exists():
        return cwd
    for parent in cwd.parents:
        if (parent / "config" / "config.yaml").exists():
            return parent
    return cwd


@click.group()
@click.option("--base-dir", type=click.Path(exists=True, file_okay=False), default=None, help="Project base directory")
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging")
@click.version_option(version=__version__, prog_name="subnoether")
@click.pass_context
def cli(ctx: click.Context, base_dir: str | None, verbose: bool) -> None:
    """subnoether - sub-symmetries and conservation laws of differential systems."""
    ctx.ensure_object(dict)

    base = Path(base_dir) if base_dir else _get_base_dir()
    load_dotenv(base / ".env")
    setup_logging(verbose=verbose)

    ctx.obj["base_dir"] = base
    ctx.obj["verbose"] = verbose
    ctx.obj["_settings"] = None


def _get_settings(ctx: click.Context) -> Settings:
    """Get or load settings."""
    if ctx.obj["_settings"] is None:
        ctx.obj["_settings"] = load_settings(ctx.obj["base_dir"])
    return ctx.obj["_settings"]


def report_options(command: Callable) -> Callable:
    """Options shared by the commands that run checks."""
    options = [
        click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON"),
        click.option("--seed", type=click.IntRange(min=0), envvar=SEED_ENV_VAR, default=None, help="Oracle seed"),
        click.option("--oracle-points", type=click.IntRange(min=0), default=None, help="Random points per check"),
        click.option("--workers", type=click.IntRange(min=1), default=None, help="Checks run concurrently"),
        click.option("-v", "--verbose", is_flag=True, help="Enable debug logging"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def handle_errors(command: Callable) -> Callable:
    """Map document errors to exit 2 and other library errors to a usage error."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DslError as exc:
            click.echo(f"Error: {exc}", err=True)
            click.get_current_context().exit(EXIT_DOCUMENT_ERROR)
        except SubNoetherError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _config(
    ctx: click.Context, seed: int | None, oracle_points: int | None, workers: int | None, verbose: bool
) -> CheckConfig:
    if verbose and not ctx.obj["verbose"]:
        setup_logging(verbose=True)
    return CheckConfig.from_settings(_get_settings(ctx), seed=seed, oracle_points=oracle_points, workers=workers)


def _emit(ctx: click.Context, reports: list[Report], as_json: bool, many: bool = False) -> None:
    """Write the reports to stdout and exit 1 when any check failed."""
    settings = _get_settings(ctx)
    if as_json or settings.output.format == "json":
        payload = reports if many else reports[0]
        click.echo(render_json(payload, indent=settings.output.json_indent), nl=False)
    else:
        click.echo(render_text(reports), nl=False)
    failed = sum(r.failed for r in reports)
    if failed:
        logger.info("%d check(s) failed", failed)
    ctx.exit(EXIT_CHECK_FAILED if failed else EXIT_OK)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@report_options
@click.pass_context
@handle_errors
def check(
    ctx: click.Context,
    file: str,
    as_json: bool,
    seed: int | None,
    oracle_points: int | None,
    workers: int | None,
    verbose: bool,
) -> None:
    """Run every check directive of a .pde document."""
    config = _config(ctx, seed, oracle_points, workers, verbose)
    document = load_document(file)
    result = run_document(document, config, name=Path(file).name)
    _emit(ctx, [result.report], as_json)


@cli.command()
@click.argument("name")
@report_options
@click.pass_context
@handle_errors
def demo(
    ctx: click.Context,
    name: str,
    as_json: bool,
    seed: int | None,
    oracle_points: int | None,
    workers: int | None,
    verbose: bool,
) -> None:
    """Run a catalog case, or every case with NAME 'all'."""
    config = _config(ctx, seed, oracle_points, workers, verbose)
    names = CaseRegistry.names() if name.lower() == "all" else [resolve_case(name).name]
    reports = [run_case(n, config) for n in names]
    _emit(ctx, reports, as_json, many=name.lower() == "all")


@cli.command("list")
def list_cases() -> None:
    """List the catalog cases."""
    for name, case_class in CaseRegistry.all_cases().items():
        line = f"{name:<26} {case_class.title}"
        if case_class.skip_reason:
            line += " (skipped)"
        click.echo(line)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def fmt(file: str) -> None:
    """Print a .pde document in canonical form."""
    click.echo(format_document(load_document(file)), nl=False)


@cli.command()
@click.argument("name")
@handle_errors
def export(name: str) -> None:
    """Print the shipped .pde document(s) of a catalog case."""
    case = resolve_case(name)
    if not case.documents:
        raise click.ClickException(f"Case '{case.name}' ships no document: {case.skip_reason}")
    for index, file in enumerate(case.documents):
        if len(case.documents) > 1:
            if index:
                click.echo()
            click.echo(f"# ---- {file} ----")
        click.echo(case_source(file), nl=False)


if __name__ == "__main__":
    cli()
