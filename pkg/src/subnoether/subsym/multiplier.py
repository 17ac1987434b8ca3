"""Multipliers selecting a combination of equations."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import sympy

from subnoether.core.exceptions import SubSymmetryError
from subnoether.expr.kernel import Expr
from subnoether.system.certificate import CertKey, Certificate
from subnoether.system.system import DifferentialSystem


@dataclass(frozen=True)
class Multiplier:
    """Coefficients ``Xi^{vJ}``; function-valued when every ``J`` is empty."""

    entries: Mapping[CertKey, Expr] = field(default_factory=dict)
    name: str = "Xi"

    def __post_init__(self) -> None:
        if not any(value != 0 for value in self.entries.values()):
            raise SubSymmetryError(f"multiplier '{self.name}' has no nonzero entry")

    @classmethod
    def from_vector(cls, system: DifferentialSystem, values: Sequence[Expr], name: str = "Xi") -> "Multiplier":
        """One coefficient per equation, in declaration order."""
        if len(values) != len(system):
            raise SubSymmetryError(f"multiplier '{name}' has {len(values)} entries, system has {len(system)} equations")
        entries = {(label, ()): sympy.sympify(v) for label, v in zip(system.labels, values) if v != 0}
        return cls(entries, name)

    @property
    def is_function_valued(self) -> bool:
        return all(not index for _, index in self.entries)

    def as_certificate(self) -> Certificate:
        return Certificate.of(self.entries)


def combination(system: DifferentialSystem, multiplier: Multiplier) -> Expr:
    """``Xi^{vJ} D_J Delta_v``."""
    return system.combination(multiplier.as_certificate())


__all__ = ["Multiplier", "combination"]
