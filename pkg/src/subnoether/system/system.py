"""Differential systems with solved forms and syzygies."""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import sympy

from subnoether.core.exceptions import (
    DifferentialSystemError,
    InvalidSolvedForm,
    InvalidSyzygy,
    NonTerminatingRanking,
)
from subnoether.expr.kernel import Expr, normalize
from subnoether.jet.calculus import euler_op, total_derivative_multi
from subnoether.jet.context import JetContext, JetKey

from .certificate import Certificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Equation:
    label: str
    expr: Expr


@dataclass(frozen=True)
class SolvedForm:
    """``Delta = coefficient * (lead - rhs)`` with a nonzero constant coefficient."""

    label: str
    lead: sympy.Symbol
    key: JetKey
    rhs: Expr
    coefficient: Expr


class DifferentialSystem:
    """Labelled equations ``Delta_v`` over a jet context.

    Args:
        ctx: The jet context.
        equations: ``(label, expression)`` pairs in declaration order.
        solved: ``(label, leading atom)`` pairs; right-hand sides are derived.
        syzygies: Named certificates whose combination vanishes identically.

    Raises:
        InvalidSolvedForm: an equation is not linear with constant coefficient in its lead.
        NonTerminatingRanking: a right-hand side contains an atom ranked at or above its lead.
        InvalidSyzygy: a declared syzygy does not vanish identically.
    """

    def __init__(
        self,
        ctx: JetContext,
        equations: Sequence[tuple[str, Expr]],
        solved: Sequence[tuple[str, sympy.Symbol]] = (),
        syzygies: Mapping[str, Certificate] | None = None,
    ):
        self.ctx = ctx
        self.equations = tuple(Equation(label, normalize(expr)) for label, expr in equations)
        self._by_label = {eq.label: eq for eq in self.equations}
        if len(self._by_label) != len(self.equations):
            raise DifferentialSystemError("equation labels must be unique")
        self.solved_forms = tuple(self._solve(label, lead) for label, lead in solved)
        self.syzygies = dict(syzygies or {})
        for name, syzygy in self.syzygies.items():
            residual = normalize(self.combination(syzygy))
            if residual != 0:
                raise InvalidSyzygy(name, residual)

    def _solve(self, label: str, lead: sympy.Symbol) -> SolvedForm:
        equation = self.equation(label)
        key = self.ctx.jet_key(lead)
        if key is None:
            raise InvalidSolvedForm(label, f"'{lead}' is not a jet coordinate")
        coefficient = normalize(sympy.diff(equation.expr, lead))
        if coefficient == 0 or coefficient.free_symbols or coefficient.has(sympy.Function):
            raise InvalidSolvedForm(label, f"coefficient of {lead} must be a nonzero constant, got {coefficient}")
        rhs = normalize(lead - equation.expr / coefficient)
        if lead in rhs.free_symbols:
            raise InvalidSolvedForm(label, f"equation is not linear in {lead}")
        lead_rank = self.ctx.rank_key(key)
        for atom in self.ctx.jet_atoms(rhs):
            if self.ctx.rank_key(atom) >= lead_rank:
                raise NonTerminatingRanking(label, atom)
        logger.debug("solved form %s: %s = %s", label, lead, rhs)
        return SolvedForm(label=label, lead=lead, key=key, rhs=rhs, coefficient=coefficient)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(eq.label for eq in self.equations)

    def equation(self, label: str) -> Equation:
        try:
            return self._by_label[label]
        except KeyError:
            raise DifferentialSystemError(f"unknown equation '{label}'") from None

    def __len__(self) -> int:
        return len(self.equations)

    @property
    def has_solved_forms(self) -> bool:
        return bool(self.solved_forms)

    def solved_labels(self) -> set[str]:
        return {sf.label for sf in self.solved_forms}

    def principal_atoms(self) -> dict[str, sympy.Symbol]:
        """Highest-ranked jet atom of each equation without a solved form."""
        solved = self.solved_labels()
        result = {}
        for eq in self.equations:
            if eq.label in solved:
                continue
            atoms = self.ctx.jet_atoms(eq.expr)
            if atoms:
                result[eq.label] = atoms[0]
        return result

    def prolonged(self, label: str, index: Sequence[str] = ()) -> Expr:
        """``D_J Delta_v``."""
        return total_derivative_multi(self.ctx, self.equation(label).expr, index)

    def combination(self, certificate: Certificate) -> Expr:
        """``sum mu^{vJ} D_J Delta_v``."""
        terms = [value * self.prolonged(label, index) for (label, index), value in certificate.items()]
        return sympy.Add(*terms)

    def __repr__(self) -> str:
        return f"DifferentialSystem({list(self.labels)}, solved={[sf.label for sf in self.solved_forms]})"


def euler_lagrange_system(ctx: JetContext, lagrangian: Expr, prefix: str = "EL") -> DifferentialSystem:
    """System ``E_a(L) = 0`` with one equation per dependent variable, labelled ``EL<dep>``."""
    equations = [(f"{prefix}{dep}", euler_op(ctx, lagrangian, dep)) for dep in ctx.dependents]
    return DifferentialSystem(ctx, [(label, expr) for label, expr in equations if normalize(expr) != 0])


__all__ = ["Equation", "SolvedForm", "DifferentialSystem", "euler_lagrange_system"]
