"""Certificates and conservation laws."""

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace

import sympy

from subnoether.expr.kernel import Expr, normalize
from subnoether.expr.serialize import to_text

CertKey = tuple[str, tuple[str, ...]]


def natural_key(label: str) -> tuple:
    """Sort key placing D2 before D10."""
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", label))


def format_key(key: CertKey) -> str:
    label, index = key
    return f"{label}[{','.join(index)}]" if index else label


@dataclass(frozen=True)
class Certificate:
    """Coefficients ``mu^{vJ}`` certifying ``e = sum mu^{vJ} D_J Delta_v``."""

    entries: Mapping[CertKey, Expr] = field(default_factory=dict)

    @classmethod
    def of(cls, items: Iterable[tuple[CertKey, Expr]] | Mapping[CertKey, Expr]) -> "Certificate":
        """Build a certificate, merging repeated keys and dropping zero entries."""
        merged: dict[CertKey, Expr] = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for (label, index), value in pairs:
            key = (label, tuple(index))
            merged[key] = merged.get(key, sympy.Integer(0)) + sympy.sympify(value)
        return cls({k: v for k, v in merged.items() if v != 0})

    @classmethod
    def on(cls, **coefficients: Expr) -> "Certificate":
        """Function-valued certificate keyed by equation label."""
        return cls.of(((label, ()), value) for label, value in coefficients.items())

    def items(self) -> list[tuple[CertKey, Expr]]:
        return sorted(self.entries.items(), key=lambda kv: (natural_key(kv[0][0]), len(kv[0][1]), kv[0][1]))

    def labels(self) -> set[str]:
        return {label for label, _ in self.entries}

    @property
    def is_function_valued(self) -> bool:
        return all(not index for _, index in self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def __add__(self, other: "Certificate") -> "Certificate":
        return Certificate.of([*self.entries.items(), *other.entries.items()])

    def __sub__(self, other: "Certificate") -> "Certificate":
        return self + other.scaled(-1)

    def scaled(self, factor: Expr | int) -> "Certificate":
        return Certificate.of((k, factor * v) for k, v in self.entries.items())

    def normalized(self) -> "Certificate":
        return Certificate.of((k, normalize(v)) for k, v in self.entries.items())

    def to_dict(self) -> dict[str, str]:
        return {format_key(k): to_text(v) for k, v in self.items()}


@dataclass(frozen=True)
class ConservationLaw:
    """A flux whose divergence is certified to vanish on solutions.

    ``weighted`` records whether the divergence uses the context weights;
    ``discarded`` holds parts removed as trivial or split-off laws.
    """

    flux: tuple[Expr, ...]
    certificate: Certificate
    weighted: bool = False
    characteristics: Mapping[str, Expr] | None = None
    discarded: tuple[Expr, ...] | None = None
    name: str = ""

    def renamed(self, name: str) -> "ConservationLaw":
        return replace(self, name=name)

    def with_characteristics(self, characteristics: Mapping[str, Expr]) -> "ConservationLaw":
        return replace(self, characteristics=dict(characteristics))

    def flux_text(self) -> list[str]:
        return [to_text(c) for c in self.flux]


__all__ = ["CertKey", "Certificate", "ConservationLaw", "natural_key", "format_key"]
