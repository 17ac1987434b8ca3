"""Exact evaluation at rational points and the seeded zero oracle."""

import itertools
import logging
import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from subnoether.core.constants import (
    DEFAULT_MAX_RETRIES,
    DEFAULT_ORACLE_POINTS,
    DEFAULT_SEED,
    DENOMINATOR_BOUND,
    INSTANTIATION_DEGREE,
    NUMERATOR_BOUND,
)
from subnoether.core.exceptions import DivisionByZeroAtPoint, ExpressionError, OracleExhausted

from .atoms import FnAtom, fn_atoms
from .kernel import Expr

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FnInstantiation:
    """Polynomials standing in for arbitrary functions.

    Each entry maps a function name to ``(slots, polynomial)``; a derivative
    atom with orders ``k`` is instantiated as the matching partial derivative
    of the polynomial, so instantiations are consistent across orders.
    """

    polynomials: Mapping[str, tuple[tuple[sympy.Symbol, ...], Expr]] = field(default_factory=dict)

    @classmethod
    def of(cls, **polys: Expr) -> "FnInstantiation":
        """Instantiate one-argument functions from polynomials in the symbol ``slot``."""
        slot = sympy.Symbol("slot")
        return cls({name: ((slot,), sympy.sympify(poly)) for name, poly in polys.items()})

    def evaluate(self, atom: FnAtom) -> Expr:
        entry = self.polynomials.get(atom.fn_name)
        if entry is None:
            raise ExpressionError(f"no instantiation for function '{atom.fn_name}'")
        slots, poly = entry
        if len(slots) != len(atom.args):
            raise ExpressionError(f"instantiation of '{atom.fn_name}' has {len(slots)} slots, got {len(atom.args)}")
        derivative = poly
        for slot, order in zip(slots, atom.orders):
            if order:
                derivative = sympy.diff(derivative, slot, order)
        return derivative.xreplace(dict(zip(slots, atom.args)))


def random_rational(rng: random.Random, numerator_bound: int, denominator_bound: int) -> sympy.Rational:
    """Nonzero rational p/q with |p| <= numerator_bound and 1 <= q <= denominator_bound."""
    numerator = rng.randint(1, numerator_bound) * rng.choice((-1, 1))
    return sympy.Rational(numerator, rng.randint(1, denominator_bound))


def random_instantiation(
    functions: Mapping[str, int],
    rng: random.Random,
    degree: int = INSTANTIATION_DEGREE,
    numerator_bound: int = NUMERATOR_BOUND,
    denominator_bound: int = DENOMINATOR_BOUND,
) -> FnInstantiation:
    """Random polynomials of total degree <= ``degree`` for each named function."""
    polys = {}
    for name in sorted(functions):
        arity = functions[name]
        slots = tuple(sympy.Symbol(f"slot{k}") for k in range(arity))
        poly = sympy.Integer(0)
        for exponents in itertools.product(range(degree + 1), repeat=arity):
            if sum(exponents) > degree:
                continue
            monomial = sympy.Mul(*(s**e for s, e in zip(slots, exponents)))
            poly += random_rational(rng, numerator_bound, denominator_bound) * monomial
        polys[name] = (slots, poly)
    return FnInstantiation(polys)


def eval_exact(expr: Expr, point: Mapping[sympy.Symbol, Fraction | int | Expr], inst: FnInstantiation) -> Expr:
    """Exact value of ``expr`` at a rational point.

    Raises:
        DivisionByZeroAtPoint: a denominator vanishes at the point.
        ExpressionError: an atom or function is left unbound.
    """
    bound = {sym: sympy.Rational(value) if isinstance(value, Fraction) else sympy.sympify(value) for sym, value in point.items()}
    value = sympy.sympify(expr).xreplace(bound)
    value = value.replace(lambda node: isinstance(node, FnAtom), inst.evaluate)
    if value.has(sympy.zoo, sympy.nan, sympy.oo, -sympy.oo):
        raise DivisionByZeroAtPoint(expr)
    if value.free_symbols:
        names = ", ".join(sorted(s.name for s in value.free_symbols))
        raise ExpressionError(f"unbound atoms in evaluation: {names}")
    if not value.is_Rational:
        # Square roots of rationals: decide zero exactly.
        value = sympy.nsimplify(sympy.radsimp(value))
    return value


@dataclass(frozen=True)
class OracleReport:
    """Outcome of a numeric cross-check."""

    points: int
    failures: int

    def to_dict(self) -> dict[str, int]:
        return {"points": self.points, "failures": self.failures}


class ZeroOracle:
    """Probabilistic zero test at seeded random rational points.

    Each call derives its own random stream from ``(seed, label)``, so results
    do not depend on the order in which checks run.
    """

    def __init__(
        self,
        seed: int = DEFAULT_SEED,
        points: int = DEFAULT_ORACLE_POINTS,
        max_retries: int = DEFAULT_MAX_RETRIES,
        numerator_bound: int = NUMERATOR_BOUND,
        denominator_bound: int = DENOMINATOR_BOUND,
        degree: int = INSTANTIATION_DEGREE,
    ):
        self.seed = seed
        self.points = points
        self.max_retries = max_retries
        self.numerator_bound = numerator_bound
        self.denominator_bound = denominator_bound
        self.degree = degree

    def _functions(self, expr: Expr, functions: Mapping[str, int] | None) -> dict[str, int]:
        found = dict(functions or {})
        for atom in fn_atoms(expr):
            found.setdefault(atom.fn_name, len(atom.args))
        return found

    def sample(self, expr: Expr, label: str, functions: Mapping[str, int] | None = None) -> list[Expr]:
        """Values of ``expr`` at ``self.points`` admissible random points."""
        rng = random.Random(f"{self.seed}:{label}")
        symbols = sorted(expr.free_symbols, key=lambda s: s.name)
        fns = self._functions(expr, functions)
        values: list[Expr] = []
        for _ in range(self.points):
            for attempt in range(self.max_retries):
                point = {s: random_rational(rng, self.numerator_bound, self.denominator_bound) for s in symbols}
                inst = random_instantiation(fns, rng, self.degree, self.numerator_bound, self.denominator_bound)
                try:
                    values.append(eval_exact(expr, point, inst))
                    break
                except DivisionByZeroAtPoint:
                    logger.debug("[%s] singular point on attempt %d, reseeding", label, attempt + 1)
            else:
                raise OracleExhausted(label, self.max_retries)
        return values

    def check_zero(self, expr: Expr, label: str, functions: Mapping[str, int] | None = None) -> OracleReport:
        """Count points where an expected identity fails to evaluate to zero."""
        values = self.sample(expr, label, functions)
        failures = sum(1 for v in values if v != 0)
        if failures:
            logger.warning("[%s] oracle found %d nonzero values out of %d", label, failures, len(values))
        return OracleReport(points=len(values), failures=failures)

    def check_nonzero(self, expr: Expr, label: str, functions: Mapping[str, int] | None = None) -> OracleReport:
        """Count points where an expected nonzero residual evaluates to zero."""
        values = self.sample(expr, label, functions)
        return OracleReport(points=len(values), failures=sum(1 for v in values if v == 0))


__all__ = [
    "FnInstantiation",
    "random_rational",
    "random_instantiation",
    "eval_exact",
    "OracleReport",
    "ZeroOracle",
]
