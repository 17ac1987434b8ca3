"""Reduction modulo the solution manifold and characteristic forms."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import sympy

from subnoether.core.constants import MAX_REDUCTION_STEPS
from subnoether.core.exceptions import CertificateMismatch, DifferentialSystemError, NoSolvedForm, Undecided
from subnoether.expr.atoms import FnAtom
from subnoether.expr.evaluate import OracleReport, ZeroOracle
from subnoether.expr.kernel import Expr, normalize
from subnoether.expr.serialize import to_text
from subnoether.jet.calculus import divergence, total_derivative, total_derivative_multi
from subnoether.jet.context import JetKey

from .certificate import CertKey, Certificate, natural_key
from .system import DifferentialSystem, SolvedForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reduction:
    """``expr = normal_form + sum mu^{vJ} D_J Delta_v`` identically.

    Function applications and radicals are rewritten as a whole, never inside,
    so reducible atoms may survive in their arguments. ``evaluated`` is the
    normal form with those arguments reduced as well: it decides vanishing on
    solutions but has no finite certificate.
    """

    normal_form: Expr
    certificate: Certificate
    steps: int
    evaluated: Expr

    @property
    def certified(self) -> bool:
        return self.normal_form == 0

    @property
    def vanishes(self) -> bool:
        return self.evaluated == 0


@dataclass(frozen=True)
class OnSolutions:
    """Verdict of an on-solutions zero test."""

    zero: bool
    certificate: Certificate
    normal_form: Expr
    mode: str
    oracle: OracleReport | None = None


@dataclass(frozen=True)
class CharacteristicForm:
    """``combination = sum char_v Delta_v + D_i trivial_flux^i`` identically (flat divergence)."""

    characteristics: dict[str, Expr]
    trivial_flux: tuple[Expr, ...]
    certificate: Certificate


def index_difference(key: JetKey, lead: JetKey) -> tuple[str, ...] | None:
    """``K`` with ``key = D_K lead`` as multisets, or None when ``key`` is not a prolongation."""
    if key.dep != lead.dep:
        return None
    remaining = list(key.index)
    for direction in lead.index:
        if direction not in remaining:
            return None
        remaining.remove(direction)
    return tuple(remaining)


def _next_target(system: DifferentialSystem, expr: Expr) -> tuple[sympy.Symbol, SolvedForm, tuple[str, ...]] | None:
    ctx = system.ctx
    for atom in ctx.jet_atoms(expr):
        key = ctx.jet_key(atom)
        for solved in system.solved_forms:
            extra = index_difference(key, solved.key)
            if extra is not None:
                return atom, solved, extra
    return None


def _opaque_terms(expr: Expr) -> list[Expr]:
    """Outermost function applications and non-integer powers of ``expr``."""
    found: list[Expr] = []
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, FnAtom) or (node.is_Pow and not node.exp.is_Integer):
            if node not in found:
                found.append(node)
            continue
        stack.extend(node.args)
    return sorted(found, key=sympy.default_sort_key)


def _mask(expr: Expr) -> tuple[Expr, dict[sympy.Symbol, Expr]]:
    opaque = _opaque_terms(expr)
    if not opaque:
        return expr, {}
    names = {term: sympy.Symbol(f"_opaque{i}") for i, term in enumerate(opaque)}
    return expr.xreplace(names), {symbol: term for term, symbol in names.items()}


def _reduce_arguments(system: DifferentialSystem, expr: Expr, max_steps: int) -> Expr:
    bindings = {}
    for term in _opaque_terms(expr):
        args = [reduce(system, arg, max_steps).evaluated for arg in term.args]
        bindings[term] = term.func(*args)
    if not bindings:
        return expr
    return normalize(expr.xreplace(bindings))


def _check_parametric(system: DifferentialSystem, expr: Expr) -> None:
    ctx = system.ctx
    principal = {label: ctx.jet_key(atom) for label, atom in system.principal_atoms().items()}
    for atom in ctx.jet_atoms(expr):
        key = ctx.jet_key(atom)
        for label, lead in principal.items():
            if index_difference(key, lead) is not None:
                raise NoSolvedForm(atom, label)


def reduce(system: DifferentialSystem, expr: Expr, max_steps: int = MAX_REDUCTION_STEPS) -> Reduction:
    """Rewrite ``expr`` with the solved forms until no leading atom or prolongation remains.

    The highest-ranked reducible atom is substituted first. Multipliers are
    tracked so the returned certificate reproduces ``expr - normal_form``.

    Raises:
        NoSolvedForm: the normal form still contains a prolongation of the
            principal atom of an equation without a solved form.
    """
    ctx = system.ctx
    current = normalize(expr)
    entries: list[tuple[CertKey, Expr]] = []
    for step in range(max_steps):
        masked, unmask = _mask(current)
        target = _next_target(system, masked)
        if target is None:
            break
        atom, solved, extra = target
        replacement = total_derivative_multi(ctx, solved.rhs, extra)
        substituted = masked.xreplace({atom: replacement})
        partial = normalize(sympy.diff(masked, atom))
        if atom in partial.free_symbols:
            # exact divided difference; masked is rational in atom
            multiplier = normalize((masked - substituted) / (atom - replacement))
        else:
            multiplier = partial
        entries.append(((solved.label, extra), multiplier.xreplace(unmask) / solved.coefficient))
        current = normalize(substituted.xreplace(unmask))
    else:
        raise DifferentialSystemError(f"reduction did not terminate within {max_steps} steps")
    _check_parametric(system, current)
    evaluated = _reduce_arguments(system, current, max_steps)
    logger.debug("reduced in %d steps; normal form has %d atoms", step, len(current.free_symbols))
    return Reduction(
        normal_form=current,
        certificate=Certificate.of(entries).normalized(),
        steps=step,
        evaluated=evaluated,
    )


def verify_certificate(system: DifferentialSystem, expr: Expr, certificate: Certificate) -> Expr:
    """Exact residual ``expr - sum mu D_J Delta``; raises when it does not vanish."""
    residual = normalize(expr - system.combination(certificate))
    if residual != 0:
        raise CertificateMismatch(residual)
    return residual


def on_solutions_zero(
    system: DifferentialSystem,
    expr: Expr,
    certificate: Certificate | None = None,
    oracle: ZeroOracle | None = None,
    label: str = "on-solutions",
) -> OnSolutions:
    """Decide ``expr = 0`` on solutions.

    With a certificate the exact identity is verified; otherwise the solved
    forms reduce ``expr``. Both modes cross-check the underlying identity
    with the numeric oracle.

    Raises:
        CertificateMismatch: the supplied certificate fails the exact identity.
        NoSolvedForm: propagated from :func:`reduce`.
        Undecided: ``expr`` vanishes on solutions only after rewriting inside
            function arguments, so no finite certificate exists.
    """
    oracle = oracle or ZeroOracle()
    functions = system.ctx.functions
    if certificate is not None:
        verify_certificate(system, expr, certificate)
        report = oracle.check_zero(expr - system.combination(certificate), label, functions)
        return OnSolutions(True, certificate, sympy.Integer(0), "certificate", report)

    reduction = reduce(system, expr)
    if not reduction.certified and reduction.vanishes:
        raise Undecided(
            f"{to_text(reduction.normal_form)} vanishes on solutions only inside function arguments; "
            "no finite certificate"
        )
    identity = expr - system.combination(reduction.certificate) - reduction.normal_form
    report = oracle.check_zero(identity, label, functions)
    return OnSolutions(reduction.certified, reduction.certificate, reduction.normal_form, "reduction", report)


def apply_syzygy(system: DifferentialSystem, certificate: Certificate, name: str, factor: Expr) -> Certificate:
    """Add ``factor * S`` for a declared syzygy ``S``; the combination is unchanged identically."""
    try:
        syzygy = system.syzygies[name]
    except KeyError:
        raise DifferentialSystemError(f"unknown syzygy '{name}'") from None
    return certificate + syzygy.scaled(factor)


def ibp_characteristic(
    system: DifferentialSystem,
    certificate: Certificate,
    rewrites: Sequence[tuple[str, Expr]] = (),
) -> CharacteristicForm:
    """Integrate every ``mu^{vJ} D_J Delta_v`` with ``J`` nonempty by parts.

    Uses ``mu D_J Delta = D_j(mu D_{J-j} Delta) - (D_j mu) D_{J-j} Delta``
    repeatedly; the ``D_j(...)`` parts form a flux that vanishes on
    solutions. Syzygy rewrites ``(name, factor)`` are applied first.
    """
    ctx = system.ctx
    for name, factor in rewrites:
        certificate = apply_syzygy(system, certificate, name, factor)

    work: dict[CertKey, Expr] = dict(certificate.entries)
    flux = {d: sympy.Integer(0) for d in ctx.independents}
    while True:
        pending = [k for k in work if k[1]]
        if not pending:
            break
        key = max(pending, key=lambda k: (len(k[1]), natural_key(k[0]), k[1]))
        mu = work.pop(key)
        label, index = key
        first, rest = index[0], index[1:]
        flux[first] += mu * system.prolonged(label, rest)
        lower = (label, rest)
        work[lower] = work.get(lower, sympy.Integer(0)) - total_derivative(ctx, mu, first)

    characteristics = {label: normalize(work.get((label, ()), sympy.Integer(0))) for label in system.labels}
    trivial_flux = tuple(normalize(flux[d]) for d in ctx.independents)
    return CharacteristicForm(characteristics, trivial_flux, certificate)


def characteristic_identity(system: DifferentialSystem, form: CharacteristicForm) -> Expr:
    """``combination - sum char Delta - div(trivial_flux)``, unsimplified."""
    combination = system.combination(form.certificate)
    characteristic_part = sympy.Add(*(c * system.equation(label).expr for label, c in form.characteristics.items()))
    return combination - characteristic_part - divergence(system.ctx, form.trivial_flux, flat=True)


def characteristic_residual(system: DifferentialSystem, form: CharacteristicForm) -> Expr:
    """Normal form of :func:`characteristic_identity`; zero for a correct decomposition."""
    return normalize(characteristic_identity(system, form))


__all__ = [
    "Reduction",
    "OnSolutions",
    "CharacteristicForm",
    "index_difference",
    "reduce",
    "verify_certificate",
    "on_solutions_zero",
    "apply_syzygy",
    "ibp_characteristic",
    "characteristic_identity",
    "characteristic_residual",
]
