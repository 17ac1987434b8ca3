"""Parsed documents: declarations resolved into domain objects, plus check directives."""

from dataclasses import dataclass, field

from subnoether.expr.kernel import Expr
from subnoether.jet.context import JetContext
from subnoether.jet.fields import EvolutionaryField
from subnoether.subsym.multiplier import Multiplier
from subnoether.system.certificate import Certificate, ConservationLaw
from subnoether.system.system import DifferentialSystem

CHECK_KINDS = (
    "quasi",
    "subsym",
    "refute",
    "probe",
    "zero",
    "nonzero",
    "identity",
    "divergence",
    "invert",
    "claw",
    "deform",
    "noether",
    "classify",
    "equivalent",
)

LAW_PRODUCERS = frozenset({"claw", "deform", "noether"})


@dataclass
class Directive:
    """One ``check`` statement.

    Only the attributes relevant to ``kind`` are set; references to laws
    produced by earlier checks stay by name and are resolved when run.
    """

    kind: str
    index: int
    alias: str | None = None
    claim: str | None = None
    paper_ref: str | None = None
    vector_field: str | None = None
    multiplier: Multiplier | None = None
    expr: Expr | None = None
    certificate: Certificate | None = None
    dep_certificates: dict[str, Certificate] = field(default_factory=dict)
    flux: tuple[Expr, ...] | None = None
    combination_target: Multiplier | None = None
    expected_flux: tuple[Expr, ...] | None = None
    expected_expr: Expr | None = None
    expected: str | None = None
    drops: tuple[tuple[tuple[Expr, ...], Certificate], ...] = ()
    rewrites: tuple[tuple[str, Expr], ...] = ()
    law: str | None = None
    other: str | None = None
    lagrangian: str | None = None
    weighted: bool | None = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    @property
    def name(self) -> str:
        return self.alias or f"{self.kind}{self.index}"

    @property
    def produces_law(self) -> bool:
        return self.kind in LAW_PRODUCERS


@dataclass
class Document:
    """Everything declared in one ``.pde`` source, in declaration order."""

    source: str = "<string>"
    ctx: JetContext | None = field(default=None, compare=False)
    lets: dict[str, Expr] = field(default_factory=dict)
    system_name: str | None = None
    system: DifferentialSystem | None = field(default=None, compare=False)
    certificates: dict[str, Certificate] = field(default_factory=dict)
    multipliers: dict[str, Multiplier] = field(default_factory=dict)
    fields: dict[str, EvolutionaryField] = field(default_factory=dict)
    fluxes: dict[str, tuple[Expr, ...]] = field(default_factory=dict)
    lagrangians: dict[str, Expr] = field(default_factory=dict)
    laws: dict[str, ConservationLaw] = field(default_factory=dict)
    directives: list[Directive] = field(default_factory=list)

    @property
    def equations(self) -> tuple:
        return self.system.equations if self.system is not None else ()

    def directive(self, name: str) -> Directive:
        for d in self.directives:
            if d.name == name:
                return d
        raise KeyError(name)


__all__ = ["CHECK_KINDS", "LAW_PRODUCERS", "Directive", "Document"]
