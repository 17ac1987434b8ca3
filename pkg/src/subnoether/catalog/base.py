"""Catalog case definitions and registry."""

import logging
from abc import ABC
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import ClassVar

import sympy

from subnoether.core.constants import VERDICT_FAIL, VERDICT_PASS, VERDICT_SKIPPED
from subnoether.core.exceptions import SubNoetherError, UnknownCase
from subnoether.core.models import CheckRecord, Report
from subnoether.dsl import Document, parse_document, parse_expression
from subnoether.expr.evaluate import OracleReport, ZeroOracle
from subnoether.expr.kernel import Expr, normalize
from subnoether.expr.serialize import to_text
from subnoether.pipeline import CheckConfig, CheckResult, run_document
from subnoether.pipeline.check import summary
from subnoether.subsym import characteristics_match
from subnoether.system.certificate import Certificate, ConservationLaw
from subnoether.system.system import DifferentialSystem
from subnoether.utils.suggest import suggest

logger = logging.getLogger(__name__)

CASES_PACKAGE = "subnoether.catalog.cases"


@dataclass(frozen=True)
class ExtraCheck:
    """A case-specific check written in Python; ``run`` returns record fields."""

    name: str
    kind: str
    claim: str
    run: Callable[["CaseRun"], dict]
    paper_ref: str | None = None


class CatalogCase(ABC):
    """A worked example: shipped ``.pde`` documents plus extra checks.

    Subclasses set ``name``, ``title`` and ``documents``; a ``skip_reason``
    turns the case into a stretch entry reported as SKIPPED.
    """

    name: ClassVar[str]
    title: ClassVar[str]
    documents: ClassVar[tuple[str, ...]] = ()
    skip_reason: ClassVar[str | None] = None

    def extras(self) -> list[ExtraCheck]:
        """Checks that need more than the document language offers."""
        return []


class CaseRegistry:
    """Registry of catalog cases, keyed by case name."""

    _cases: dict[str, type[CatalogCase]] = {}

    @classmethod
    def register(cls, case_class: type[CatalogCase]) -> type[CatalogCase]:
        """Decorator to register a case."""
        cls._cases[case_class.name] = case_class
        return case_class

    @classmethod
    def get_case(cls, name: str) -> type[CatalogCase] | None:
        """Get case class by name."""
        return cls._cases.get(name.lower())

    @classmethod
    def names(cls) -> list[str]:
        """Registered names in registration order."""
        return list(cls._cases)

    @classmethod
    def all_cases(cls) -> dict[str, type[CatalogCase]]:
        """Get all registered cases."""
        return cls._cases.copy()


def resolve_case(name: str) -> CatalogCase:
    """Instantiate a registered case.

    Raises:
        UnknownCase: no case of that name, with the closest name as suggestion.
    """
    case_class = CaseRegistry.get_case(name)
    if case_class is None:
        raise UnknownCase(name, suggest(name, CaseRegistry.names()))
    return case_class()


def case_source(file: str) -> str:
    """Text of a shipped ``.pde`` document."""
    return resources.files(CASES_PACKAGE).joinpath(file).read_text(encoding="utf-8")


def load_case_document(file: str) -> Document:
    return parse_document(case_source(file), source=file)


@dataclass
class CaseRun:
    """Documents and pipeline results of one case run, handed to its extra checks."""

    case: CatalogCase
    config: CheckConfig
    documents: dict[str, Document] = field(default_factory=dict)
    results: dict[str, CheckResult] = field(default_factory=dict)

    def document(self, file: str | None = None) -> Document:
        return self.documents[file or self.case.documents[0]]

    def system(self, file: str | None = None) -> DifferentialSystem:
        system = self.document(file).system
        if system is None:
            raise SubNoetherError(f"{file or self.case.documents[0]} declares no system")
        return system

    def law(self, name: str, file: str | None = None) -> ConservationLaw:
        """Law declared in, or produced by, a document."""
        laws = self.results[file or self.case.documents[0]].laws
        if name not in laws:
            raise SubNoetherError(f"law '{name}' was not produced")
        return laws[name][1]

    def expr(self, text: str, file: str | None = None) -> Expr:
        """Parse an expression in the scope of a document (lets, functions, operators)."""
        return parse_expression(text, self.document(file))

    def let(self, name: str, file: str | None = None) -> Expr:
        return self.document(file).lets[name]

    def oracle(self) -> ZeroOracle:
        return self.config.oracle()

    def label(self, check: str) -> str:
        return f"{self.case.name}:{check}"


def identity_fields(
    run: CaseRun,
    check: str,
    exprs: Expr | Sequence[Expr],
    functions: Mapping[str, int] | None = None,
) -> dict:
    """Fields of a record asserting every expression vanishes identically."""
    exprs = [exprs] if isinstance(exprs, sympy.Basic) else list(exprs)
    functions = run.document().ctx.functions if functions is None else functions
    residuals = [normalize(e) for e in exprs]
    reports = [run.oracle().check_zero(e, f"{run.label(check)}:{k}", functions) for k, e in enumerate(exprs)]
    report = OracleReport(points=sum(r.points for r in reports), failures=sum(r.failures for r in reports))
    passed = all(r == 0 for r in residuals) and report.failures == 0
    return {
        "verdict": VERDICT_PASS if passed else VERDICT_FAIL,
        "residual": None if passed else ", ".join(to_text(r) for r in residuals),
        "oracle": summary(report),
    }


def characteristics_fields(
    system: DifferentialSystem,
    computed: Mapping[str, Expr],
    expected: Mapping[str, Expr],
    corrections: Mapping[str, Certificate] | None = None,
) -> dict:
    """Fields of a record comparing characteristics with hand-derived ones."""
    mismatches = characteristics_match(system, computed, expected, corrections)
    return {
        "verdict": VERDICT_FAIL if mismatches else VERDICT_PASS,
        "certificate": {label: to_text(c) for label, c in computed.items() if c != 0},
        "residual": "; ".join(f"{label}: {to_text(r)}" for label, r in mismatches.items()) or None,
    }


def _run_extra(run: CaseRun, extra: ExtraCheck) -> CheckRecord:
    base = {"name": extra.name, "kind": extra.kind, "claim": extra.claim, "paper_ref": extra.paper_ref}
    try:
        return CheckRecord(**base, **extra.run(run))
    except SubNoetherError as exc:
        residual = getattr(exc, "residual", None)
        logger.warning("[%s] %s", run.label(extra.name), exc)
        return CheckRecord(
            **base,
            verdict=VERDICT_FAIL,
            residual=to_text(normalize(residual)) if isinstance(residual, sympy.Basic) else None,
            message=str(exc),
        )


def _prefixed(records: Iterable[CheckRecord], prefix: str) -> list[CheckRecord]:
    if not prefix:
        return list(records)
    return [r.model_copy(update={"name": f"{prefix}.{r.name}"}) for r in records]


def run_case(
    name: str,
    config: CheckConfig | None = None,
    on_progress: Callable[[str, str], None] | None = None,
) -> Report:
    """Run every document and extra check of a case.

    Raises:
        UnknownCase: the name is not registered.
        DslError: a shipped document does not parse.
    """
    case = resolve_case(name)
    config = config or CheckConfig()
    report = Report(name=case.name, seed=config.seed, oracle_points=config.oracle_points)
    if case.skip_reason:
        logger.warning("Skipping stretch entry %s: %s", case.name, case.skip_reason)
        report.records.append(
            CheckRecord(name=case.name, kind="case", claim=case.title, verdict=VERDICT_SKIPPED, message=case.skip_reason)
        )
        return report

    run = CaseRun(case=case, config=config)
    for file in case.documents:
        document = load_case_document(file)
        result = run_document(document, config, name=file, on_progress=on_progress)
        run.documents[file] = document
        run.results[file] = result
        prefix = Path(file).stem if len(case.documents) > 1 else ""
        report.records.extend(_prefixed(result.report.records, prefix))

    for extra in case.extras():
        record = _run_extra(run, extra)
        report.records.append(record)
        logger.info("[%s] %s", run.label(record.name), record.verdict)
        if on_progress:
            on_progress(record.name, record.verdict)

    logger.info("Case %s: %d passed, %d failed", case.name, report.passed, report.failed)
    return report


def run_all(config: CheckConfig | None = None) -> list[Report]:
    """Run every registered case in registration order."""
    return [run_case(name, config) for name in CaseRegistry.names()]


__all__ = [
    "CatalogCase",
    "CaseRegistry",
    "CaseRun",
    "ExtraCheck",
    "resolve_case",
    "case_source",
    "load_case_document",
    "identity_fields",
    "characteristics_fields",
    "run_case",
    "run_all",
]
