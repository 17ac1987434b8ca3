"""Quasi-Noether and sub-symmetry checks."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field

import sympy

from subnoether.core.exceptions import NoSolvedForm, Undecided
from subnoether.expr.evaluate import OracleReport, ZeroOracle
from subnoether.expr.kernel import Expr, normalize
from subnoether.jet.calculus import euler_op, prolong_apply
from subnoether.jet.fields import EvolutionaryField
from subnoether.system.certificate import Certificate
from subnoether.system.reduction import OnSolutions, on_solutions_zero
from subnoether.system.system import DifferentialSystem

from .multiplier import Multiplier, combination

logger = logging.getLogger(__name__)


def _merge_reports(reports: list[OracleReport]) -> OracleReport | None:
    if not reports:
        return None
    return OracleReport(points=sum(r.points for r in reports), failures=sum(r.failures for r in reports))


@dataclass(frozen=True)
class QuasiNoether:
    """``E_a(Xi . Delta) = Gamma_a^{vJ} D_J Delta_v`` for every dependent ``a``.

    ``residuals`` holds the nonzero normal forms of the dependents that fail.
    """

    holds: bool
    gammas: dict[str, Certificate]
    residuals: dict[str, Expr] = field(default_factory=dict)
    oracle: OracleReport | None = None


@dataclass(frozen=True)
class SubSymmetry:
    """``X(Xi . Delta)`` vanishes on solutions with certificate ``Lambda``."""

    field: EvolutionaryField
    multiplier: Multiplier
    combination: Expr
    certificate: Certificate
    mode: str
    oracle: OracleReport | None = None


@dataclass(frozen=True)
class Refutation:
    """``X(Xi . Delta)`` reduces to a nonzero normal form."""

    field: EvolutionaryField
    multiplier: Multiplier
    residual: Expr
    normal_form: Expr
    oracle: OracleReport | None = None


def _decide(
    system: DifferentialSystem,
    expr: Expr,
    certificate: Certificate | None,
    oracle: ZeroOracle,
    label: str,
) -> OnSolutions:
    if certificate is not None:
        return on_solutions_zero(system, expr, certificate, oracle, label)
    if not system.has_solved_forms:
        raise Undecided("no certificate supplied and the system has no solved forms")
    try:
        return on_solutions_zero(system, expr, None, oracle, label)
    except NoSolvedForm as exc:
        raise Undecided(str(exc)) from exc


def quasi_noether_check(
    system: DifferentialSystem,
    multiplier: Multiplier,
    certificates: Mapping[str, Certificate] | None = None,
    oracle: ZeroOracle | None = None,
    label: str = "quasi",
) -> QuasiNoether:
    """Check the quasi-Noether property of ``Xi``.

    ``certificates`` maps a dependent variable to a claimed ``Gamma_a``;
    dependents without one fall back to reduction.

    Raises:
        Undecided: neither a certificate nor a usable reduction decides some ``E_a``.
        CertificateMismatch: a supplied ``Gamma_a`` fails the exact identity.
    """
    oracle = oracle or ZeroOracle()
    certificates = certificates or {}
    combo = combination(system, multiplier)
    gammas: dict[str, Certificate] = {}
    residuals: dict[str, Expr] = {}
    reports: list[OracleReport] = []
    for dep in system.ctx.dependents:
        euler = normalize(euler_op(system.ctx, combo, dep))
        claimed = certificates.get(dep)
        if euler == 0 and claimed is None:
            gammas[dep] = Certificate()
            continue
        verdict = _decide(system, euler, claimed, oracle, f"{label}:E[{dep}]")
        if verdict.oracle is not None:
            reports.append(verdict.oracle)
        if verdict.zero:
            gammas[dep] = verdict.certificate
        else:
            residuals[dep] = verdict.normal_form
            logger.info("[%s] E[%s] does not vanish on solutions", label, dep)
    return QuasiNoether(not residuals, gammas, residuals, _merge_reports(reports))


def subsymmetry_check(
    system: DifferentialSystem,
    vector_field: EvolutionaryField,
    multiplier: Multiplier,
    certificate: Certificate | None = None,
    oracle: ZeroOracle | None = None,
    label: str = "subsym",
) -> SubSymmetry | Refutation:
    """Decide whether ``X`` is a sub-symmetry of ``Xi . Delta = 0``.

    Raises:
        Undecided: no certificate and the reduction is not conclusive.
        CertificateMismatch: the supplied ``Lambda`` fails the exact identity.
    """
    oracle = oracle or ZeroOracle()
    combo = combination(system, multiplier)
    applied = normalize(prolong_apply(system.ctx, vector_field, combo))
    if applied == 0 and certificate is None:
        return SubSymmetry(vector_field, multiplier, combo, Certificate(), "identical")

    verdict = _decide(system, applied, certificate, oracle, label)
    if verdict.zero:
        return SubSymmetry(vector_field, multiplier, combo, verdict.certificate, verdict.mode, verdict.oracle)

    report = oracle.check_nonzero(verdict.normal_form, f"{label}:normal-form", system.ctx.functions)
    logger.info("[%s] %s is not a sub-symmetry of %s", label, vector_field.name, multiplier.name)
    return Refutation(vector_field, multiplier, applied, verdict.normal_form, report)


def probe(
    system: DifferentialSystem,
    vector_field: EvolutionaryField,
    label_or_expr: str | Expr,
    oracle: ZeroOracle | None = None,
    label: str = "probe",
) -> Expr:
    """``X`` applied to one equation (or expression), reduced when solved forms allow it."""
    target = system.equation(label_or_expr).expr if isinstance(label_or_expr, str) else sympy.sympify(label_or_expr)
    applied = normalize(prolong_apply(system.ctx, vector_field, target))
    if applied == 0 or not system.has_solved_forms:
        return applied
    try:
        return on_solutions_zero(system, applied, None, oracle, label).normal_form
    except NoSolvedForm:
        return applied
    except Undecided:
        return sympy.Integer(0)


__all__ = [
    "QuasiNoether",
    "SubSymmetry",
    "Refutation",
    "quasi_noether_check",
    "subsymmetry_check",
    "probe",
]
