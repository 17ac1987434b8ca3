"""Custom exceptions for subnoether."""

from collections.abc import Iterable


class SubNoetherError(Exception):
    """Base exception for all subnoether errors."""

    pass


class ConfigurationError(SubNoetherError):
    """Raised when configuration is invalid or missing."""

    pass


# Expression kernel


class ExpressionError(SubNoetherError):
    """Raised when an expression cannot be handled by the kernel."""

    pass


class UnsupportedRadical(ExpressionError):
    """Raised when a rational-power subterm cannot be canonicalized."""

    def __init__(self, expr: object, reason: str = "unsupported power") -> None:
        self.expr = expr
        super().__init__(f"{reason}: {expr}")


class DivisionByZeroAtPoint(ExpressionError):
    """Raised when exact evaluation hits a vanishing denominator."""

    def __init__(self, expr: object) -> None:
        self.expr = expr
        super().__init__(f"Denominator vanishes at evaluation point: {expr}")


class OracleExhausted(ExpressionError):
    """Raised when the numeric oracle cannot find admissible points."""

    def __init__(self, label: str, attempts: int) -> None:
        self.label = label
        self.attempts = attempts
        super().__init__(f"[{label}] no admissible evaluation point after {attempts} attempts")


# Jet calculus


class JetError(SubNoetherError):
    """Raised for invalid jet-space operations."""

    pass


class ContextError(JetError):
    """Raised when a jet context declaration is invalid."""

    pass


class MissingDerivativeRule(JetError):
    """Raised when a total derivative touches a field atom without a rule."""

    def __init__(self, field: str, direction: str) -> None:
        self.field = field
        self.direction = direction
        super().__init__(f"Field '{field}' has no derivative rule for direction '{direction}'")


class NotFound(JetError):
    """Raised when the divergence-inversion heuristic gives up."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"No flux found: {reason}")


# Differential systems


class DifferentialSystemError(SubNoetherError):
    """Raised for invalid systems or failed reductions."""

    pass


class InvalidSolvedForm(DifferentialSystemError):
    """Raised when an equation cannot be solved for the requested atom."""

    def __init__(self, equation: str, reason: str) -> None:
        self.equation = equation
        super().__init__(f"[{equation}] {reason}")


class NonTerminatingRanking(DifferentialSystemError):
    """Raised when a solved form does not strictly lower the ranking."""

    def __init__(self, equation: str, atom: object) -> None:
        self.equation = equation
        self.atom = atom
        super().__init__(f"[{equation}] right-hand side contains {atom}, which does not rank below the leading atom")


class NoSolvedForm(DifferentialSystemError):
    """Raised when a reduction meets an atom of an equation without a solved form."""

    def __init__(self, atom: object, equation: str) -> None:
        self.atom = atom
        self.equation = equation
        super().__init__(f"[{equation}] no solved form available to eliminate {atom}")


class CertificateMismatch(DifferentialSystemError):
    """Raised when a supplied certificate fails the exact identity."""

    def __init__(self, residual: object) -> None:
        self.residual = residual
        super().__init__(f"Certificate does not reproduce the expression; residual: {residual}")


class InvalidSyzygy(DifferentialSystemError):
    """Raised when a declared syzygy is not an identity in the jet space."""

    def __init__(self, name: str, residual: object) -> None:
        self.name = name
        self.residual = residual
        super().__init__(f"[{name}] syzygy does not vanish identically; residual: {residual}")


# Sub-symmetries and conservation laws


class SubSymmetryError(SubNoetherError):
    """Raised when a sub-symmetry computation cannot proceed."""

    pass


class Undecided(SubSymmetryError):
    """Raised when neither a certificate nor solved forms decide a claim."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Undecided: {reason}")


class NotADivergence(SubSymmetryError):
    """Raised when a combination is not the divergence of the supplied flux."""

    def __init__(self, residual: object) -> None:
        self.residual = residual
        super().__init__(f"Combination is not the divergence of the flux; residual: {residual}")


class NotASubSymmetry(SubSymmetryError):
    """Raised when a field does not leave the combination invariant on solutions."""

    def __init__(self, residual: object) -> None:
        self.residual = residual
        super().__init__(f"Field is not a sub-symmetry; residual: {residual}")


class NotVariationalSymmetry(SubSymmetryError):
    """Raised when X(L) is not the divergence of the supplied flux."""

    def __init__(self, residual: object) -> None:
        self.residual = residual
        super().__init__(f"Not a variational symmetry; residual: {residual}")


# Document language


class DslError(SubNoetherError):
    """Raised for problems in a .pde document."""

    pass


class ParseError(DslError):
    """Raised when a document does not match the grammar."""

    def __init__(self, line: int, column: int, expected: Iterable[str] = (), found: str | None = None) -> None:
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))
        self.found = found
        msg = f"line {line}, column {column}: unexpected {found!r}" if found else f"line {line}, column {column}"
        if self.expected:
            msg += f"; expected one of {', '.join(self.expected)}"
        super().__init__(msg)


class SemanticError(DslError):
    """Raised when a parsed document refers to undeclared or ill-formed objects."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, suggestion: str | None = None):
        self.line = line
        self.column = column
        self.suggestion = suggestion
        msg = f"line {line}, column {column}: {message}" if line is not None else message
        if suggestion:
            msg += f" (did you mean '{suggestion}'?)"
        super().__init__(msg)


class UnknownCase(SubNoetherError):
    """Raised when a catalog case name is not registered."""

    def __init__(self, name: str, suggestion: str | None = None) -> None:
        self.name = name
        self.suggestion = suggestion
        msg = f"Unknown catalog case '{name}'"
        if suggestion:
            msg += f" (did you mean '{suggestion}'?)"
        super().__init__(msg)


__all__ = [
    "SubNoetherError",
    "ConfigurationError",
    "ExpressionError",
    "UnsupportedRadical",
    "DivisionByZeroAtPoint",
    "OracleExhausted",
    "JetError",
    "ContextError",
    "MissingDerivativeRule",
    "NotFound",
    "DifferentialSystemError",
    "InvalidSolvedForm",
    "NonTerminatingRanking",
    "NoSolvedForm",
    "CertificateMismatch",
    "InvalidSyzygy",
    "SubSymmetryError",
    "Undecided",
    "NotADivergence",
    "NotASubSymmetry",
    "NotVariationalSymmetry",
    "DslError",
    "ParseError",
    "SemanticError",
    "UnknownCase",
]
