"""Check pipeline: runs the directives of a document and collects records.

Checks that produce conservation laws run first; classification and
equivalence checks run afterwards against the laws produced. Within each
wave checks may run concurrently; records are always reported in
declaration order.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field

import sympy

from subnoether.config.settings import Settings
from subnoether.core.constants import (
    DEFAULT_MAX_RETRIES,
    DEFAULT_ORACLE_POINTS,
    DEFAULT_SEED,
    DENOMINATOR_BOUND,
    INSTANTIATION_DEGREE,
    NUMERATOR_BOUND,
    VERDICT_FAIL,
    VERDICT_INFO,
    VERDICT_PASS,
    VERDICT_SKIPPED,
)
from subnoether.core.exceptions import NotFound, SubNoetherError
from subnoether.core.models import CheckRecord, OracleSummary, Report
from subnoether.dsl.document import Directive, Document
from subnoether.expr.evaluate import OracleReport, ZeroOracle
from subnoether.expr.kernel import Expr, normalize
from subnoether.expr.serialize import to_text
from subnoether.jet.calculus import divergence
from subnoether.jet.inversion import invert_divergence
from subnoether.subsym import (
    VERDICT_UNDECIDED,
    Refutation,
    check_law,
    combination,
    deform_claw,
    first_noether,
    generate_claw,
    laws_equivalent,
    match_flux,
    noether_system,
    probe,
    quasi_noether_check,
    subsymmetry_check,
    triviality_classify,
)
from subnoether.system.certificate import ConservationLaw, format_key
from subnoether.system.reduction import characteristic_identity, on_solutions_zero, reduce
from subnoether.system.system import DifferentialSystem

logger = logging.getLogger(__name__)

DEPENDENT_KINDS = frozenset({"classify", "equivalent"})


@dataclass
class CheckConfig:
    """Configuration for one pipeline run; overridable from the CLI."""

    seed: int = DEFAULT_SEED
    oracle_points: int = DEFAULT_ORACLE_POINTS
    max_retries: int = DEFAULT_MAX_RETRIES
    numerator_bound: int = NUMERATOR_BOUND
    denominator_bound: int = DENOMINATOR_BOUND
    instantiation_degree: int = INSTANTIATION_DEGREE
    workers: int = 1
    fail_fast: bool = False

    @classmethod
    def from_settings(cls, settings: Settings, **overrides) -> "CheckConfig":
        values = {
            "seed": settings.oracle.seed,
            "oracle_points": settings.oracle.points,
            "max_retries": settings.oracle.max_retries,
            "numerator_bound": settings.oracle.numerator_bound,
            "denominator_bound": settings.oracle.denominator_bound,
            "instantiation_degree": settings.oracle.instantiation_degree,
            "workers": settings.check.workers,
            "fail_fast": settings.check.fail_fast,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def oracle(self) -> ZeroOracle:
        return ZeroOracle(
            seed=self.seed,
            points=self.oracle_points,
            max_retries=self.max_retries,
            numerator_bound=self.numerator_bound,
            denominator_bound=self.denominator_bound,
            degree=self.instantiation_degree,
        )


@dataclass
class CheckStats:
    """Verdict counts of a run."""

    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    info: int = 0

    @classmethod
    def of(cls, records: list[CheckRecord]) -> "CheckStats":
        stats = cls(total=len(records))
        for record in records:
            match record.verdict:
                case "PASS":
                    stats.passed += 1
                case "FAIL":
                    stats.failed += 1
                case "SKIPPED":
                    stats.skipped += 1
                case "INFO":
                    stats.info += 1
        return stats


@dataclass
class CheckResult:
    """Report of a run plus the laws it produced, keyed by directive name."""

    report: Report
    stats: CheckStats
    laws: dict[str, tuple[DifferentialSystem, ConservationLaw]] = field(default_factory=dict)


def text(expr: Expr | None) -> str | None:
    return None if expr is None else to_text(normalize(expr))


def summary(report: OracleReport | None) -> OracleSummary | None:
    return None if report is None else OracleSummary(points=report.points, failures=report.failures)


def _oracle_ok(report: OracleReport | None) -> bool:
    return report is None or report.failures == 0


class CheckPipeline:
    """Runs every directive of a document.

    Args:
        document: The parsed document.
        config: Oracle and execution settings.
        name: Report name; also prefixes oracle labels so streams are stable.
    """

    def __init__(self, document: Document, config: CheckConfig | None = None, name: str | None = None):
        self.document = document
        self.config = config or CheckConfig()
        self.name = name or document.source
        self.laws: dict[str, tuple[DifferentialSystem, ConservationLaw]] = {
            law_name: (document.system, law) for law_name, law in document.laws.items()
        }

    def run(self, on_progress: Callable[[str, str], None] | None = None) -> CheckResult:
        directives = self.document.directives
        records: dict[int, CheckRecord] = {}
        first_wave = [d for d in directives if d.kind not in DEPENDENT_KINDS]
        second_wave = [d for d in directives if d.kind in DEPENDENT_KINDS]
        for wave in (first_wave, second_wave):
            self._run_wave(wave, records, on_progress)

        ordered = [records[d.index] for d in directives]
        report = Report(
            name=self.name,
            seed=self.config.seed,
            oracle_points=self.config.oracle_points,
            records=ordered,
        )
        stats = CheckStats.of(ordered)
        logger.info(
            "%s: %d checks, %d passed, %d failed, %d skipped, %d info",
            self.name,
            stats.total,
            stats.passed,
            stats.failed,
            stats.skipped,
            stats.info,
        )
        return CheckResult(report=report, stats=stats, laws=dict(self.laws))

    def _run_wave(
        self,
        wave: list[Directive],
        records: dict[int, CheckRecord],
        on_progress: Callable[[str, str], None] | None,
    ) -> None:
        if not wave:
            return

        def done(directive: Directive, record: CheckRecord) -> None:
            records[directive.index] = record
            logger.info("[%s] %s", record.name, record.verdict)
            if on_progress:
                on_progress(record.name, record.verdict)

        if self.config.fail_fast or self.config.workers <= 1:
            failed = any(r.failed for r in records.values())
            for directive in wave:
                if failed and self.config.fail_fast:
                    done(directive, self._skipped(directive, "skipped after an earlier failure"))
                    continue
                record = self.run_directive(directive)
                failed = failed or record.failed
                done(directive, record)
            return

        with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
            future_to_directive = {executor.submit(self.run_directive, d): d for d in wave}
            for future in as_completed(future_to_directive):
                done(future_to_directive[future], future.result())

    def _skipped(self, directive: Directive, message: str) -> CheckRecord:
        return CheckRecord(
            name=directive.name,
            kind=directive.kind,
            claim=directive.claim,
            paper_ref=directive.paper_ref,
            verdict=VERDICT_SKIPPED,
            message=message,
        )

    def run_directive(self, directive: Directive) -> CheckRecord:
        """Run one directive; kernel errors become FAIL records."""
        base = {
            "name": directive.name,
            "kind": directive.kind,
            "claim": directive.claim,
            "paper_ref": directive.paper_ref,
        }
        try:
            runner = getattr(self, f"_run_{directive.kind}")
            return CheckRecord(**base, **runner(directive))
        except SubNoetherError as exc:
            residual = getattr(exc, "residual", None)
            logger.warning("[%s] %s", directive.name, exc)
            return CheckRecord(
                **base,
                verdict=VERDICT_FAIL,
                residual=text(residual) if isinstance(residual, sympy.Basic) else None,
                message=str(exc),
            )

    # Helpers

    @property
    def system(self) -> DifferentialSystem:
        if self.document.system is None:
            raise SubNoetherError("document declares no system")
        return self.document.system

    def _label(self, directive: Directive, suffix: str = "") -> str:
        return f"{self.name}:{directive.name}{suffix}"

    def _law_fields(self, system: DifferentialSystem, law: ConservationLaw, directive: Directive) -> dict:
        report = check_law(system, law, self.config.oracle(), self._label(directive))
        fields = {
            "verdict": VERDICT_PASS if _oracle_ok(report) else VERDICT_FAIL,
            "certificate": law.certificate.to_dict(),
            "flux": law.flux_text(),
            "oracle": summary(report),
        }
        if law.discarded is not None:
            fields["discarded"] = [to_text(d) for d in law.discarded]
        if directive.expected_flux is not None:
            match = match_flux(system, law.flux, directive.expected_flux, weighted=law.weighted)
            if not match.matches:
                fields["verdict"] = VERDICT_FAIL
                fields["residual"] = ", ".join(to_text(d) for d in match.difference)
                fields["message"] = "flux does not match the expected flux"
            else:
                fields["message"] = f"matches expected flux ({match.kind})"
                if match.kind != "exact":
                    fields["discarded"] = [to_text(d) for d in match.difference]
        return fields

    def _store_law(self, directive: Directive, system: DifferentialSystem, law: ConservationLaw) -> None:
        self.laws[directive.name] = (system, law.renamed(directive.name))

    def _law(self, name: str) -> tuple[DifferentialSystem, ConservationLaw]:
        if name not in self.laws:
            raise SubNoetherError(f"law '{name}' was not produced")
        return self.laws[name]

    # Runners

    def _run_quasi(self, d: Directive) -> dict:
        result = quasi_noether_check(self.system, d.multiplier, d.dep_certificates, self.config.oracle(), self._label(d))
        certificate = {
            f"E[{dep}] {format_key(key)}": to_text(value)
            for dep, gamma in result.gammas.items()
            for key, value in gamma.items()
        }
        residual = "; ".join(f"E[{dep}] = {to_text(r)}" for dep, r in result.residuals.items()) or None
        passed = result.holds and _oracle_ok(result.oracle)
        return {
            "verdict": VERDICT_PASS if passed else VERDICT_FAIL,
            "certificate": certificate,
            "residual": residual,
            "oracle": summary(result.oracle),
        }

    def _run_subsym(self, d: Directive) -> dict:
        field_ = self.document.fields[d.vector_field]
        result = subsymmetry_check(self.system, field_, d.multiplier, d.certificate, self.config.oracle(), self._label(d))
        if isinstance(result, Refutation):
            return {
                "verdict": VERDICT_FAIL,
                "residual": text(result.normal_form),
                "oracle": summary(result.oracle),
                "message": f"{field_.name} is not a sub-symmetry",
            }
        return {
            "verdict": VERDICT_PASS if _oracle_ok(result.oracle) else VERDICT_FAIL,
            "certificate": result.certificate.to_dict(),
            "oracle": summary(result.oracle),
            "message": f"certified by {result.mode}",
        }

    def _run_refute(self, d: Directive) -> dict:
        field_ = self.document.fields[d.vector_field]
        result = subsymmetry_check(self.system, field_, d.multiplier, None, self.config.oracle(), self._label(d))
        if not isinstance(result, Refutation):
            return {
                "verdict": VERDICT_FAIL,
                "certificate": result.certificate.to_dict(),
                "message": f"{field_.name} is a sub-symmetry",
            }
        fields = {
            "verdict": VERDICT_PASS,
            "residual": text(result.residual),
            "oracle": summary(result.oracle),
            "message": f"normal form {to_text(result.normal_form)}",
        }
        if d.expected_expr is not None and normalize(result.residual - d.expected_expr) != 0:
            fields["verdict"] = VERDICT_FAIL
            fields["message"] = f"residual differs from the expected {to_text(d.expected_expr)}"
        if result.oracle is not None and result.oracle.points and result.oracle.failures == result.oracle.points:
            fields["verdict"] = VERDICT_FAIL
            fields["message"] = "normal form vanished at every oracle point"
        return fields

    def _run_probe(self, d: Directive) -> dict:
        field_ = self.document.fields[d.vector_field]
        residual = probe(self.system, field_, combination(self.system, d.multiplier), self.config.oracle(), self._label(d))
        return {"verdict": VERDICT_INFO, "residual": text(residual)}

    def _run_zero(self, d: Directive) -> dict:
        if d.certificate is None and not self.system.has_solved_forms:
            raise SubNoetherError("no certificate supplied and the system has no solved forms")
        result = on_solutions_zero(self.system, d.expr, d.certificate, self.config.oracle(), self._label(d))
        passed = result.zero and _oracle_ok(result.oracle)
        return {
            "verdict": VERDICT_PASS if passed else VERDICT_FAIL,
            "residual": None if result.zero else text(result.normal_form),
            "certificate": result.certificate.to_dict(),
            "oracle": summary(result.oracle),
        }

    def _run_nonzero(self, d: Directive) -> dict:
        reduction = reduce(self.system, d.expr)
        normal_form = reduction.normal_form
        if reduction.vanishes:
            return {"verdict": VERDICT_FAIL, "residual": "0", "message": "expression vanishes on solutions"}
        report = self.config.oracle().check_nonzero(normal_form, self._label(d), self.system.ctx.functions)
        passed = report.points == 0 or report.failures < report.points
        return {"verdict": VERDICT_PASS if passed else VERDICT_FAIL, "residual": text(normal_form), "oracle": summary(report)}

    def _run_identity(self, d: Directive) -> dict:
        residual = normalize(d.expr)
        functions = self.document.ctx.functions if self.document.ctx else None
        report = self.config.oracle().check_zero(d.expr, self._label(d), functions)
        passed = residual == 0 and _oracle_ok(report)
        return {
            "verdict": VERDICT_PASS if passed else VERDICT_FAIL,
            "residual": None if residual == 0 else text(residual),
            "oracle": summary(report),
        }

    def _run_divergence(self, d: Directive) -> dict:
        ctx = self.document.ctx
        weighted = ctx.is_weighted if d.weighted is None else d.weighted
        target = combination(self.system, d.combination_target) if d.combination_target is not None else d.expr
        identity = target - divergence(ctx, d.flux, flat=not weighted)
        residual = normalize(identity)
        report = self.config.oracle().check_zero(identity, self._label(d), ctx.functions)
        passed = residual == 0 and _oracle_ok(report)
        return {
            "verdict": VERDICT_PASS if passed else VERDICT_FAIL,
            "residual": None if residual == 0 else text(residual),
            "flux": [to_text(c) for c in d.flux],
            "oracle": summary(report),
        }

    def _run_invert(self, d: Directive) -> dict:
        expected = d.expected or "found"
        try:
            flux = invert_divergence(self.document.ctx, d.expr)
        except NotFound as exc:
            verdict = VERDICT_PASS if expected == "notfound" else VERDICT_FAIL
            return {"verdict": verdict, "message": f"not found: {exc.reason}"}
        verdict = VERDICT_PASS if expected == "found" else VERDICT_FAIL
        return {"verdict": verdict, "flux": [to_text(c) for c in flux], "message": "flux found"}

    def _run_claw(self, d: Directive) -> dict:
        system = self.system
        field_ = self.document.fields[d.vector_field]
        oracle = self.config.oracle()
        sub = subsymmetry_check(system, field_, d.multiplier, d.certificate, oracle, self._label(d, ":subsym"))
        if isinstance(sub, Refutation):
            return {
                "verdict": VERDICT_FAIL,
                "residual": text(sub.normal_form),
                "message": f"{field_.name} is not a sub-symmetry",
            }
        quasi = quasi_noether_check(system, d.multiplier, oracle=oracle, label=self._label(d, ":quasi"))
        law = generate_claw(system, sub, quasi, oracle, self._label(d))
        self._store_law(d, system, law)
        return self._law_fields(system, law, d)

    def _run_deform(self, d: Directive) -> dict:
        system = self.system
        law = deform_claw(
            system,
            self.document.fields[d.vector_field],
            d.flux,
            d.multiplier,
            certificate=d.certificate,
            drop=d.drops,
            weighted=d.weighted,
            oracle=self.config.oracle(),
            label=self._label(d),
        )
        self._store_law(d, system, law)
        return self._law_fields(system, law, d)

    def _run_noether(self, d: Directive) -> dict:
        lagrangian = self.document.lagrangians[d.lagrangian]
        system = noether_system(self.document.ctx, lagrangian, self.document.system)
        law = first_noether(
            self.document.ctx,
            lagrangian,
            self.document.fields[d.vector_field],
            d.flux,
            system=self.document.system,
            label=d.name,
        )
        self._store_law(d, system, law)
        return self._law_fields(system, law, d)

    def _run_classify(self, d: Directive) -> dict:
        system, law = self._law(d.law)
        result = triviality_classify(system, law, d.rewrites)
        identity = characteristic_identity(system, result.form)
        report = self.config.oracle().check_zero(identity, self._label(d), system.ctx.functions)
        if normalize(identity) != 0 or not _oracle_ok(report):
            verdict = VERDICT_FAIL
        elif d.expected is not None:
            verdict = VERDICT_PASS if result.verdict == d.expected else VERDICT_FAIL
        else:
            verdict = VERDICT_FAIL if result.verdict == VERDICT_UNDECIDED else VERDICT_PASS
        characteristics = {label: to_text(c) for label, c in result.characteristics.items() if c != 0}
        return {
            "verdict": verdict,
            "certificate": characteristics,
            "flux": [to_text(c) for c in result.form.trivial_flux],
            "oracle": summary(report),
            "message": result.verdict,
        }

    def _run_equivalent(self, d: Directive) -> dict:
        system, first = self._law(d.law)
        other_system, second = self._law(d.other)
        if other_system is not system:
            raise SubNoetherError(f"laws '{d.law}' and '{d.other}' belong to different systems")
        result = laws_equivalent(system, first, second)
        return {
            "verdict": VERDICT_PASS if result.holds else VERDICT_FAIL,
            "discarded": [to_text(c) for c in result.difference],
            "residual": None if result.holds else "; ".join(
                f"{label}: {to_text(c)}" for label, c in result.characteristic_difference.items()
            ),
            "message": result.kind,
        }


def run_document(
    document: Document,
    config: CheckConfig | None = None,
    name: str | None = None,
    on_progress: Callable[[str, str], None] | None = None,
) -> CheckResult:
    """Convenience wrapper around :class:`CheckPipeline`."""
    return CheckPipeline(document, config, name).run(on_progress)


__all__ = ["CheckConfig", "CheckStats", "CheckResult", "CheckPipeline", "run_document", "text", "summary"]
