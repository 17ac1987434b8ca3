"""Conservation laws from sub-symmetries, their triviality and equivalence."""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace

import sympy

from subnoether.core.exceptions import (
    CertificateMismatch,
    NoSolvedForm,
    NotADivergence,
    NotASubSymmetry,
    NotVariationalSymmetry,
    SubSymmetryError,
)
from subnoether.expr.evaluate import OracleReport, ZeroOracle
from subnoether.expr.kernel import Expr, normalize
from subnoether.jet.calculus import divergence, divergence_verify, noether_R, prolong_apply
from subnoether.jet.context import JetContext
from subnoether.jet.fields import EvolutionaryField
from subnoether.system.certificate import Certificate, ConservationLaw, natural_key
from subnoether.system.reduction import CharacteristicForm, ibp_characteristic, reduce
from subnoether.system.system import DifferentialSystem, euler_lagrange_system

from .checks import QuasiNoether, Refutation, SubSymmetry, quasi_noether_check, subsymmetry_check
from .multiplier import Multiplier, combination

logger = logging.getLogger(__name__)

VERDICT_TRIVIAL = "trivial"
VERDICT_NONTRIVIAL = "nontrivial"
VERDICT_UNDECIDED = "undecided"


def law_identity(system: DifferentialSystem, law: ConservationLaw) -> Expr:
    """``Div K - sum mu D_J Delta``, identically zero for a certified law."""
    return divergence(system.ctx, law.flux, flat=not law.weighted) - system.combination(law.certificate)


def verify_law(system: DifferentialSystem, law: ConservationLaw) -> None:
    """Raises:
    CertificateMismatch: the law's divergence differs from its certificate combination.
    """
    residual = normalize(law_identity(system, law))
    if residual != 0:
        raise CertificateMismatch(residual)


def check_law(system: DifferentialSystem, law: ConservationLaw, oracle: ZeroOracle, label: str) -> OracleReport:
    """Exact verification followed by a numeric cross-check."""
    verify_law(system, law)
    return oracle.check_zero(law_identity(system, law), label, system.ctx.functions)


def generate_claw(
    system: DifferentialSystem,
    sub: SubSymmetry,
    quasi: QuasiNoether | None = None,
    oracle: ZeroOracle | None = None,
    label: str = "claw",
) -> ConservationLaw:
    """Conservation law of a quasi-Noether combination and one of its sub-symmetries.

    With ``X = phi^a d_{u^a}`` the Noether identity gives
    ``D_i R^i(G) = X(G) - phi^a E_a(G)``; on solutions both right-hand
    terms vanish, so ``R(G)`` is a flat flux with certificate
    ``Lambda - phi^a Gamma_a``.

    Raises:
        SubSymmetryError: the multiplier is not function-valued or not quasi-Noether.
        CertificateMismatch: the resulting identity fails (indicates an internal error).
    """
    if not sub.multiplier.is_function_valued:
        raise SubSymmetryError(f"multiplier '{sub.multiplier.name}' is not function-valued")
    quasi = quasi or quasi_noether_check(system, sub.multiplier, oracle=oracle, label=f"{label}:quasi")
    if not quasi.holds:
        raise SubSymmetryError(f"multiplier '{sub.multiplier.name}' is not quasi-Noether")

    ctx = system.ctx
    flux = noether_R(ctx, sub.field, sub.combination)
    certificate = sub.certificate
    for dep, gamma in quasi.gammas.items():
        phi = sub.field.characteristic(dep)
        if phi != 0 and not gamma.is_empty:
            certificate = certificate - gamma.scaled(phi)
    law = ConservationLaw(flux=flux, certificate=certificate.normalized(), name=label)
    verify_law(system, law)
    logger.info("[%s] generated flux with %d certificate entries", label, len(law.certificate.entries))
    return law


def discard_part(
    system: DifferentialSystem,
    law: ConservationLaw,
    part: Sequence[Expr],
    certificate: Certificate,
) -> ConservationLaw:
    """Split ``part`` (itself a conservation law with ``certificate``) off ``law``.

    Raises:
        CertificateMismatch: ``part`` is not certified by ``certificate``.
    """
    part = tuple(normalize(p) for p in part)
    piece = ConservationLaw(flux=part, certificate=certificate, weighted=law.weighted)
    verify_law(system, piece)
    discarded = law.discarded or tuple(sympy.Integer(0) for _ in part)
    return replace(
        law,
        flux=tuple(normalize(k - p) for k, p in zip(law.flux, part)),
        certificate=(law.certificate - certificate).normalized(),
        discarded=tuple(normalize(d + p) for d, p in zip(discarded, part)),
    )


def deform_claw(
    system: DifferentialSystem,
    vector_field: EvolutionaryField,
    flux: Sequence[Expr],
    multiplier: Multiplier,
    certificate: Certificate | None = None,
    drop: Sequence[tuple[Sequence[Expr], Certificate]] = (),
    weighted: bool | None = None,
    oracle: ZeroOracle | None = None,
    label: str = "deform",
) -> ConservationLaw:
    """Deform a known flux ``M`` with ``Div M = Xi . Delta`` into ``X(M)``.

    Total derivatives commute with evolutionary fields, so
    ``Div X(M) = X(Xi . Delta)``, which vanishes on solutions whenever ``X`` is
    a sub-symmetry. Weighted divergences are used when the context declares
    weights, unless ``weighted`` says otherwise.

    Raises:
        NotADivergence: ``Div M`` differs from the combination.
        NotASubSymmetry: ``X`` is refuted as a sub-symmetry.
        Undecided: the sub-symmetry condition cannot be decided.
    """
    ctx = system.ctx
    weighted = ctx.is_weighted if weighted is None else weighted
    combo = combination(system, multiplier)
    if not divergence_verify(ctx, combo, flux, flat=not weighted):
        raise NotADivergence(normalize(combo - divergence(ctx, flux, flat=not weighted)))

    sub = subsymmetry_check(system, vector_field, multiplier, certificate, oracle, label=f"{label}:subsym")
    if isinstance(sub, Refutation):
        raise NotASubSymmetry(sub.normal_form)

    deformed = tuple(normalize(prolong_apply(ctx, vector_field, m)) for m in flux)
    law = ConservationLaw(flux=deformed, certificate=sub.certificate, weighted=weighted, name=label)
    verify_law(system, law)
    for part, part_certificate in drop:
        law = discard_part(system, law, part, part_certificate)
    return law


def noether_system(ctx: JetContext, lagrangian: Expr, system: DifferentialSystem | None = None) -> DifferentialSystem:
    """The system a law from :func:`first_noether` is certified on."""
    return system or euler_lagrange_system(ctx, lagrangian)


def first_noether(
    ctx: JetContext,
    lagrangian: Expr,
    vector_field: EvolutionaryField,
    flux: Sequence[Expr],
    system: DifferentialSystem | None = None,
    label: str = "noether",
) -> ConservationLaw:
    """Noether's first theorem for a variational symmetry with ``X(L) = Div M``.

    The law ``M - R(L)`` is certified on the Euler-Lagrange system; when
    ``system`` is given, each ``E_a(L)`` must appear in it up to sign and the
    certificate uses its labels instead.

    Raises:
        NotVariationalSymmetry: ``X(L) - Div M`` does not vanish identically.
        SubSymmetryError: an Euler-Lagrange expression is missing from ``system``.
    """
    applied = prolong_apply(ctx, vector_field, lagrangian)
    if not divergence_verify(ctx, applied, flux, flat=True):
        raise NotVariationalSymmetry(normalize(applied - divergence(ctx, flux, flat=True)))

    el_system = euler_lagrange_system(ctx, lagrangian)
    entries = []
    for equation in el_system.equations:
        dep = equation.label.removeprefix("EL")
        phi = vector_field.characteristic(dep)
        if phi == 0:
            continue
        if system is None:
            entries.append(((equation.label, ()), phi))
            continue
        for candidate in system.equations:
            if normalize(candidate.expr - equation.expr) == 0:
                entries.append(((candidate.label, ()), phi))
                break
            if normalize(candidate.expr + equation.expr) == 0:
                entries.append(((candidate.label, ()), -phi))
                break
        else:
            raise SubSymmetryError(f"Euler-Lagrange expression for '{dep}' is not an equation of the system")

    R = noether_R(ctx, vector_field, lagrangian)
    law = ConservationLaw(
        flux=tuple(normalize(m - r) for m, r in zip(flux, R)),
        certificate=Certificate.of(entries).normalized(),
        name=label,
    )
    verify_law(noether_system(ctx, lagrangian, system), law)
    return law


@dataclass(frozen=True)
class Classification:
    """Triviality verdict from the characteristic form.

    ``decisions`` maps each equation label to ``zero``, ``nonzero`` or ``undecided``.
    """

    verdict: str
    form: CharacteristicForm
    decisions: dict[str, str]
    normal_forms: dict[str, Expr]

    @property
    def characteristics(self) -> dict[str, Expr]:
        return self.form.characteristics


def _decide_zero(system: DifferentialSystem, expr: Expr) -> tuple[str, Expr]:
    if expr == 0:
        return "zero", expr
    try:
        reduction = reduce(system, expr)
    except NoSolvedForm as exc:
        logger.debug("characteristic undecided: %s", exc)
        return "undecided", expr
    return ("zero" if reduction.vanishes else "nonzero"), reduction.normal_form


def triviality_classify(
    system: DifferentialSystem,
    law: ConservationLaw,
    rewrites: Sequence[tuple[str, Expr]] = (),
) -> Classification:
    """Classify a law by its characteristics.

    The law is trivial when every characteristic vanishes on solutions and
    nontrivial as soon as one is decided nonzero. Syzygy ``rewrites`` are
    applied to the certificate first.
    """
    form = ibp_characteristic(system, law.certificate, rewrites)
    decisions: dict[str, str] = {}
    normal_forms: dict[str, Expr] = {}
    for label, characteristic in form.characteristics.items():
        decisions[label], normal_forms[label] = _decide_zero(system, characteristic)
    if any(d == "nonzero" for d in decisions.values()):
        verdict = VERDICT_NONTRIVIAL
    elif all(d == "zero" for d in decisions.values()):
        verdict = VERDICT_TRIVIAL
    else:
        verdict = VERDICT_UNDECIDED
    logger.info("law %s classified %s", law.name or "<anonymous>", verdict)
    return Classification(verdict, form, decisions, normal_forms)


@dataclass(frozen=True)
class FluxMatch:
    """How a computed flux relates to an expected one.

    ``kind`` is ``exact``, ``second-kind`` (divergence-free difference),
    ``first-kind`` (difference vanishes on solutions) or ``none``.
    """

    kind: str
    difference: tuple[Expr, ...]

    @property
    def matches(self) -> bool:
        return self.kind != "none"


def match_flux(
    system: DifferentialSystem,
    flux: Sequence[Expr],
    expected: Sequence[Expr],
    weighted: bool = False,
) -> FluxMatch:
    """Compare two fluxes up to the trivial modifications."""
    difference = tuple(normalize(a - b) for a, b in zip(flux, expected))
    if all(d == 0 for d in difference):
        return FluxMatch("exact", difference)
    if normalize(divergence(system.ctx, difference, flat=not weighted)) == 0:
        return FluxMatch("second-kind", difference)
    if all(_decide_zero(system, d)[0] == "zero" for d in difference):
        return FluxMatch("first-kind", difference)
    return FluxMatch("none", difference)


@dataclass(frozen=True)
class Equivalence:
    """Outcome of comparing two conservation laws."""

    holds: bool
    kind: str
    difference: tuple[Expr, ...]
    characteristic_difference: dict[str, Expr]


def laws_equivalent(system: DifferentialSystem, first: ConservationLaw, second: ConservationLaw) -> Equivalence:
    """Decide whether two laws differ by a trivial law.

    Either the flux difference is itself trivial (see :func:`match_flux`) or
    the characteristics of the certificate difference vanish on solutions.

    Raises:
        SubSymmetryError: the laws use different divergences.
    """
    if first.weighted != second.weighted:
        raise SubSymmetryError("cannot compare a weighted law with a flat one")
    match = match_flux(system, first.flux, second.flux, weighted=first.weighted)
    form = ibp_characteristic(system, first.certificate - second.certificate)
    differences = {label: c for label, c in form.characteristics.items() if c != 0}
    if match.matches:
        return Equivalence(True, match.kind, match.difference, differences)
    decided = [_decide_zero(system, c)[0] for c in differences.values()]
    holds = all(d == "zero" for d in decided)
    return Equivalence(holds, "trivial-characteristic" if holds else "none", match.difference, differences)


def characteristics_match(
    system: DifferentialSystem,
    characteristics: Mapping[str, Expr],
    expected: Mapping[str, Expr],
    corrections: Mapping[str, Certificate] | None = None,
) -> dict[str, Expr]:
    """Labels whose ``computed - expected`` does not vanish, with the offending normal form.

    A difference matches exactly, on solutions, or when it equals the
    combination of the certificate given for its label in ``corrections``.
    """
    corrections = corrections or {}
    mismatches = {}
    for label in sorted({*characteristics, *expected}, key=natural_key):
        delta = normalize(characteristics.get(label, 0) - expected.get(label, 0))
        if label in corrections:
            delta = normalize(delta - system.combination(corrections[label]))
        decision, normal_form = _decide_zero(system, delta)
        if decision != "zero":
            mismatches[label] = normal_form
    return mismatches


__all__ = [
    "VERDICT_TRIVIAL",
    "VERDICT_NONTRIVIAL",
    "VERDICT_UNDECIDED",
    "law_identity",
    "verify_law",
    "check_law",
    "generate_claw",
    "discard_part",
    "deform_claw",
    "first_noether",
    "noether_system",
    "Classification",
    "triviality_classify",
    "FluxMatch",
    "match_flux",
    "Equivalence",
    "laws_equivalent",
    "characteristics_match",
]
