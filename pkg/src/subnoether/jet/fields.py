"""Vector fields on the jet space."""

from collections.abc import Mapping
from dataclasses import dataclass, field

import sympy

from subnoether.expr.kernel import Expr


@dataclass(frozen=True)
class GeneralField:
    """``X = xi^i d_i + phi^a d_{u^a}``; missing components are zero."""

    xi: Mapping[str, Expr] = field(default_factory=dict)
    phi: Mapping[str, Expr] = field(default_factory=dict)
    name: str = "X"


@dataclass(frozen=True)
class EvolutionaryField:
    """Evolutionary field given by its characteristics; prolonged through ``D_J phi``."""

    phi: Mapping[str, Expr] = field(default_factory=dict)
    name: str = "X"

    def characteristic(self, dep: str) -> Expr:
        return self.phi.get(dep, sympy.Integer(0))

    @property
    def is_zero(self) -> bool:
        return all(value == 0 for value in self.phi.values())


__all__ = ["GeneralField", "EvolutionaryField"]
