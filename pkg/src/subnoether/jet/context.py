"""Jet context: variables, parameters, field atoms, weights and ranking."""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import sympy

from subnoether.core.exceptions import ContextError
from subnoether.expr.atoms import FieldAtom, jet_name, split_jet_name
from subnoether.expr.kernel import Expr

logger = logging.getLogger(__name__)


class JetKey(NamedTuple):
    """Dependent variable and sorted multi-index of a jet coordinate."""

    dep: str
    index: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.index)


@dataclass(frozen=True)
class Weight:
    """Divergence weight of one direction: contributes ``outer * D_i(inner * K^i)``."""

    outer: Expr = sympy.Integer(1)
    inner: Expr = sympy.Integer(1)

    @property
    def is_flat(self) -> bool:
        return self.outer == 1 and self.inner == 1


class JetContext:
    """Declarations every jet-space operation is relative to.

    Args:
        independents: Independent variable names, in declaration order.
        dependents: Dependent variable names, in declaration order.
        parameters: Constant symbols.
        functions: Arbitrary function names with their arity.
        fields: Field atoms with derivative rules.
        weights: Divergence weights per direction (default flat).
        priorities: Ranking blocks per dependent variable; higher ranks above.
        time: The direction counted second in the ranking (default ``t`` when declared).
    """

    def __init__(
        self,
        independents: Sequence[str],
        dependents: Sequence[str],
        parameters: Sequence[str] = (),
        functions: Mapping[str, int] | None = None,
        fields: Iterable[FieldAtom] = (),
        weights: Mapping[str, Weight] | None = None,
        priorities: Mapping[str, int] | None = None,
        time: str | None = None,
    ):
        self.independents = tuple(independents)
        self.dependents = tuple(dependents)
        self.parameters = tuple(parameters)
        self.functions = dict(functions or {})
        self.fields = {f.name: f for f in fields}
        self.weights = dict(weights or {})
        self.priorities = dict(priorities or {})
        if time is None and "t" in self.independents:
            time = "t"
        self.time = time
        self._validate()

        self._positions = {name: k for k, name in enumerate(self.independents)}
        self._dep_positions = {name: k for k, name in enumerate(self.dependents)}
        self._jet_cache: dict[sympy.Symbol, JetKey | None] = {}

    def _validate(self) -> None:
        if not self.independents:
            raise ContextError("at least one independent variable is required")
        if not self.dependents:
            raise ContextError("at least one dependent variable is required")
        seen: set[str] = set()
        for name in (*self.independents, *self.dependents, *self.parameters, *self.functions, *self.fields):
            if name in seen:
                raise ContextError(f"name '{name}' declared twice")
            seen.add(name)
        for field_atom in self.fields.values():
            for arg in (*field_atom.args, *field_atom.rules):
                if arg not in self.independents:
                    raise ContextError(f"field '{field_atom.name}' refers to unknown direction '{arg}'")
        for direction in self.weights:
            if direction not in self.independents:
                raise ContextError(f"weight declared for unknown direction '{direction}'")
        for dep in self.priorities:
            if dep not in self.dependents:
                raise ContextError(f"ranking block declared for unknown dependent '{dep}'")
        if self.time is not None and self.time not in self.independents:
            raise ContextError(f"time direction '{self.time}' is not an independent variable")

    # Symbols

    def x(self, name: str) -> sympy.Symbol:
        """Symbol of an independent variable."""
        if name not in self._positions:
            raise ContextError(f"unknown independent variable '{name}'")
        return sympy.Symbol(name)

    @property
    def independent_symbols(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(n) for n in self.independents)

    @property
    def parameter_symbols(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(n) for n in self.parameters)

    def sort_index(self, index: Iterable[str]) -> tuple[str, ...]:
        """Canonical (declaration-ordered) form of a multi-index."""
        index = tuple(index)
        for direction in index:
            if direction not in self._positions:
                raise ContextError(f"unknown direction '{direction}'")
        return tuple(sorted(index, key=self._positions.__getitem__))

    def jet(self, dep: str, index: Iterable[str] = ()) -> sympy.Symbol:
        """Symbol of the jet coordinate ``dep_{index}``."""
        if dep not in self._dep_positions:
            raise ContextError(f"unknown dependent variable '{dep}'")
        return sympy.Symbol(jet_name(dep, self.sort_index(index)))

    def jet_key(self, symbol: sympy.Symbol) -> JetKey | None:
        """Decode a jet coordinate symbol; None for any other symbol."""
        if symbol in self._jet_cache:
            return self._jet_cache[symbol]
        key = None
        parts = split_jet_name(symbol.name)
        if parts is not None and parts[0] in self._dep_positions:
            dep, index = parts
            if all(d in self._positions for d in index) and self.sort_index(index) == index:
                key = JetKey(dep, index)
        self._jet_cache[symbol] = key
        return key

    def field_of(self, symbol: sympy.Symbol) -> FieldAtom | None:
        return self.fields.get(symbol.name)

    def jet_atoms(self, expr: Expr) -> list[sympy.Symbol]:
        """Jet coordinates of ``expr`` (inside function arguments too), highest rank first."""
        atoms = [s for s in expr.free_symbols if self.jet_key(s) is not None]
        return sorted(atoms, key=self.rank_key, reverse=True)

    def known_names(self) -> set[str]:
        return {*self.independents, *self.dependents, *self.parameters, *self.functions, *self.fields}

    # Ranking

    def rank_key(self, atom: sympy.Symbol | JetKey) -> tuple:
        """Ranking of jet coordinates; larger keys rank higher.

        Order of comparison: dependent block, derivative order, number of
        time derivatives, earlier-declared dependent, multi-index positions.
        """
        key = atom if isinstance(atom, JetKey) else self.jet_key(atom)
        if key is None:
            raise ContextError(f"'{atom}' is not a jet coordinate")
        time_count = key.index.count(self.time) if self.time else 0
        return (
            self.priorities.get(key.dep, 0),
            key.order,
            time_count,
            -self._dep_positions[key.dep],
            tuple(self._positions[d] for d in key.index),
        )

    # Weights

    def weight(self, direction: str) -> Weight:
        return self.weights.get(direction, Weight())

    @property
    def is_weighted(self) -> bool:
        return any(not w.is_flat for w in self.weights.values())

    def __repr__(self) -> str:
        return f"JetContext(indep={list(self.independents)}, dep={list(self.dependents)})"


__all__ = ["JetKey", "Weight", "JetContext"]
