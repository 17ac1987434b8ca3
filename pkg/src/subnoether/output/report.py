"""Text and JSON report rendering."""

import logging
from collections.abc import Sequence
from importlib import resources
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from subnoether.core.models import Report
from subnoether.utils.text import json_dumps, truncate

logger = logging.getLogger(__name__)

TEXT_TEMPLATE = "report.txt.j2"
RESIDUAL_WIDTH = 400


def _get_builtin_template_dir() -> Path:
    return Path(str(resources.files("subnoether.templates")))


def _environment(template_dir: Path | None = None) -> Environment:
    env = Environment(
        loader=FileSystemLoader(str(template_dir or _get_builtin_template_dir())),
        keep_trailing_newline=True,
    )
    env.filters["clip"] = lambda value: truncate(value, max_len=RESIDUAL_WIDTH)
    return env


def render_text(reports: Report | Sequence[Report], template_dir: Path | None = None) -> str:
    """Human-readable report, one block per report.

    Args:
        reports: One report or several (``demo all``).
        template_dir: Directory holding ``report.txt.j2``; built-in when None.
    """
    reports = [reports] if isinstance(reports, Report) else list(reports)
    template = _environment(template_dir).get_template(TEXT_TEMPLATE)
    logger.debug("Rendering %d report(s) as text", len(reports))
    return template.render(reports=reports)


def render_json(reports: Report | Sequence[Report], indent: int | None = 2) -> str:
    """Deterministic JSON: keys sorted, records in declaration order.

    A single report renders as an object, several as a list.
    """
    if isinstance(reports, Report):
        data = reports.model_dump(mode="json")
    else:
        data = [r.model_dump(mode="json") for r in reports]
    return json_dumps(data, indent=indent) + "\n"


__all__ = ["render_text", "render_json"]
