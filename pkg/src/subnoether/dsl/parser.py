"""Parser for ``.pde`` documents.

The grammar (``grammar.lark``) is parsed with lark's LALR parser; a
top-down :class:`lark.visitors.Interpreter` then resolves declarations in
source order, so every name is checked against what precedes it.
"""

import json
import logging
from functools import cache
from importlib import resources
from pathlib import Path

import sympy
from lark import Lark, Token, Transformer, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError
from lark.visitors import Interpreter

from subnoether.core.exceptions import DslError, ParseError, SemanticError, SubNoetherError
from subnoether.expr.atoms import FieldAtom, fn_class, jet_name, split_jet_name
from subnoether.expr.kernel import Expr, normalize
from subnoether.jet.calculus import canonicalize_field, total_derivative_multi
from subnoether.jet.context import JetContext, Weight
from subnoether.jet.fields import EvolutionaryField, GeneralField
from subnoether.subsym.multiplier import Multiplier
from subnoether.system.certificate import Certificate, ConservationLaw
from subnoether.system.system import DifferentialSystem
from subnoether.utils.suggest import suggest

from .document import Directive, Document

logger = logging.getLogger(__name__)

TOTAL_DERIVATIVE = "D"
INLINE_MULTIPLIER = "combo"
CLASSIFY_VERDICTS = frozenset({"trivial", "nontrivial", "undecided"})
INVERT_VERDICTS = frozenset({"found", "notfound"})


@cache
def _lark() -> Lark:
    grammar = resources.files("subnoether.dsl").joinpath("grammar.lark").read_text(encoding="utf-8")
    return Lark(grammar, parser="lalr", start=["start", "expression"], propagate_positions=True)


def _describe_terminal(name: str) -> str:
    if name == "$END":
        return "end of input"
    try:
        terminal = _lark().get_terminal(name)
    except KeyError:
        return name
    if terminal.pattern.type == "str":
        return f'"{terminal.pattern.value}"'
    return name


def _end_position(text: str) -> tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def _parse_error(exc: UnexpectedInput, text: str) -> ParseError:
    if isinstance(exc, UnexpectedCharacters):
        return ParseError(exc.line, exc.column, (_describe_terminal(n) for n in exc.allowed or ()), exc.char)
    if isinstance(exc, UnexpectedToken):
        token = exc.token
        line, column = exc.line, exc.column
        if token.type == "$END" or line is None or line < 1:
            line, column = _end_position(text)
            found = "end of input"
        else:
            found = str(token)
        return ParseError(line, column, (_describe_terminal(n) for n in exc.expected), found)
    if isinstance(exc, UnexpectedEOF):
        line, column = _end_position(text)
        return ParseError(line, column, (_describe_terminal(n) for n in exc.expected), "end of input")
    line, column = _end_position(text)
    return ParseError(line, column)


def _position(node: Tree | Token) -> tuple[int | None, int | None]:
    if isinstance(node, Token):
        return node.line, node.column
    meta = node.meta
    if getattr(meta, "empty", True):
        return None, None
    return meta.line, meta.column


class _ExpressionBuilder(Transformer):
    """Builds sympy expressions bottom-up, resolving names through the document scope."""

    def __init__(self, scope: "_DocumentBuilder"):
        super().__init__()
        self.scope = scope

    def number(self, items):
        return sympy.Integer(int(items[0]))

    def name(self, items):
        return self.scope.resolve_name(items[0])

    def jet(self, items):
        return self.scope.resolve_jet(items[0])

    def total_derivative(self, items):
        token, inner = items
        return self.scope.total_derivative(token, inner)

    def call(self, items):
        token, *rest = items
        primes = 0
        if rest and isinstance(rest[0], Token) and rest[0].type == "PRIMES":
            primes = len(rest[0])
            rest = rest[1:]
        arguments = rest[0]
        arity = self.scope.function_arity(token, len(arguments))
        if primes and arity != 1:
            raise SemanticError(
                f"primes only apply to functions of one argument; use diff({token},...)", token.line, token.column
            )
        orders = (primes,) if arity == 1 else (0,) * arity
        return fn_class(str(token), orders)(*arguments)

    def fn_derivative(self, items):
        token, *orders, arguments = items
        arity = self.scope.function_arity(token, len(arguments))
        if len(orders) != arity:
            raise SemanticError(
                f"diff({token},...) needs {arity} derivative orders, got {len(orders)}", token.line, token.column
            )
        return fn_class(str(token), tuple(int(k) for k in orders))(*arguments)

    def args(self, items):
        return list(items)

    def expression(self, items):
        return items[0]

    def sqrt(self, items):
        return sympy.sqrt(items[0])

    def add(self, items):
        return items[0] + items[1]

    def sub(self, items):
        return items[0] - items[1]

    def mul(self, items):
        return items[0] * items[1]

    def div(self, items):
        return items[0] / items[1]

    def neg(self, items):
        return -items[0]

    def pow(self, items):
        return items[0] ** items[1]


class _DocumentBuilder(Interpreter):
    """Resolves statements top-down into a :class:`Document`."""

    def __init__(self, source: str = "<string>", document: Document | None = None):
        super().__init__()
        self.doc = document or Document(source=source)
        self._expressions = _ExpressionBuilder(self)
        self._independents: list[str] = []
        self._dependents: list[str] = []
        self._parameters: list[str] = []
        self._functions: dict[str, int] = {}
        self._field_atoms: list[FieldAtom] = []
        self._field_names: set[str] = set()
        self._weights: dict[str, Weight] = {}
        self._priorities: dict[str, int] = {}
        self._time: str | None = None
        self._in_context = False
        self._syzygies: dict[str, Certificate] = {}
        self._names: set[str] = set()
        self._law_names: set[str] = set()
        ctx = self.doc.ctx
        if ctx is not None:
            self._independents = list(ctx.independents)
            self._dependents = list(ctx.dependents)
            self._parameters = list(ctx.parameters)
            self._functions = dict(ctx.functions)
            self._field_names = set(ctx.fields)
        if self.doc.system is not None:
            self._syzygies = dict(self.doc.system.syzygies)

    # Error plumbing

    def visit(self, tree):
        try:
            return super().visit(tree)
        except DslError:
            raise
        except SubNoetherError as exc:
            line, column = _position(tree)
            raise SemanticError(str(exc), line, column) from exc

    def _error(self, message: str, node: Tree | Token, choices=(), name: str | None = None) -> SemanticError:
        line, column = _position(node)
        suggestion = suggest(name, choices) if name is not None else None
        return SemanticError(message, line, column, suggestion)

    # Scope

    @property
    def ctx(self) -> JetContext | None:
        return self.doc.ctx

    def _known(self) -> set[str]:
        return {
            *self._independents,
            *self._dependents,
            *self._parameters,
            *self._field_names,
            *self.doc.lets,
        }

    def resolve_name(self, token: Token) -> Expr:
        name = str(token)
        if name in self.doc.lets:
            return self.doc.lets[name]
        if name in self._functions:
            raise self._error(f"function '{name}' needs arguments", token)
        if name in self._known():
            return sympy.Symbol(name)
        raise self._error(f"unknown name '{name}'", token, self._known() | set(self._functions), name)

    def _split_jet(self, token: Token) -> tuple[str, tuple[str, ...]]:
        text = str(token)
        if "{" in text:
            dep, index = split_jet_name(text)
        else:
            dep, direction = text.split("_", 1)
            index = (direction,)
        for direction in index:
            if direction not in self._independents:
                raise self._error(f"unknown direction '{direction}'", token, self._independents, direction)
        return dep, index

    def resolve_jet(self, token: Token) -> Expr:
        dep, index = self._split_jet(token)
        if dep == TOTAL_DERIVATIVE:
            raise self._error(f"total derivative '{token}' needs an argument in parentheses", token)
        if self.ctx is None:
            raise self._error("jet coordinates need a context", token)
        if dep not in self._dependents:
            raise self._error(f"unknown dependent variable '{dep}'", token, self._dependents, dep)
        return sympy.Symbol(jet_name(dep, self.ctx.sort_index(index)))

    def total_derivative(self, token: Token, inner: Expr) -> Expr:
        dep, index = self._split_jet(token)
        if dep != TOTAL_DERIVATIVE:
            raise self._error(f"'{token}' is a jet coordinate, not an operator", token)
        if self.ctx is None:
            raise self._error("total derivatives need a context", token)
        return total_derivative_multi(self.ctx, inner, self.ctx.sort_index(index))

    def function_arity(self, token: Token, given: int) -> int:
        name = str(token)
        if name not in self._functions:
            raise self._error(f"unknown function '{name}'", token, self._functions, name)
        arity = self._functions[name]
        if arity != given:
            raise self._error(f"function '{name}' takes {arity} arguments, got {given}", token)
        return arity

    def expr(self, tree: Tree) -> Expr:
        try:
            return self._expressions.transform(tree)
        except VisitError as exc:
            raise exc.orig_exc from None

    def _names_of(self, tree: Tree) -> list[str]:
        return [str(t) for t in tree.children]

    def _plain_names(self, tree: Tree) -> list[str]:
        """Names usable inside expressions; an underscore would read as a jet index."""
        for token in tree.children:
            self._check_plain(token)
        return self._names_of(tree)

    def _check_plain(self, token: Token) -> None:
        if "_" in str(token):
            raise self._error(f"'{token}' cannot be used in expressions: names with '_' denote jet coordinates", token)

    def _declare(self, token: Token) -> str:
        name = str(token)
        if name in self._names or name in self._known() or name in self._functions:
            raise self._error(f"name '{name}' is already declared", token)
        self._names.add(name)
        return name

    def _require_context(self, node: Tree | Token) -> JetContext:
        if self.ctx is None:
            raise self._error("a context must be declared first", node)
        return self.ctx

    def _require_system(self, node: Tree | Token) -> DifferentialSystem:
        if self.doc.system is None:
            raise self._error("a system must be declared first", node)
        return self.doc.system

    # Context

    def start(self, tree):
        for child in tree.children:
            self.visit(child)
        return self.doc

    def context(self, tree):
        if self.ctx is not None or self._in_context:
            raise self._error("only one context may be declared", tree)
        self._in_context = True
        for child in tree.children:
            self.visit(child)
        self.doc.ctx = JetContext(
            independents=self._independents,
            dependents=self._dependents,
            parameters=self._parameters,
            functions=self._functions,
            fields=self._field_atoms,
            weights=self._weights,
            priorities=self._priorities,
            time=self._time,
        )
        self._in_context = False
        logger.debug("context declared: %r", self.doc.ctx)

    def indep(self, tree):
        self._independents.extend(self._plain_names(tree.children[0]))

    def dep(self, tree):
        names = self._plain_names(tree.children[0])
        if TOTAL_DERIVATIVE in names:
            raise self._error(f"'{TOTAL_DERIVATIVE}' is reserved for total derivatives", tree)
        self._dependents.extend(names)

    def param(self, tree):
        self._parameters.extend(self._plain_names(tree.children[0]))

    def function(self, tree):
        for sig in tree.children:
            name, arity = sig.children
            self._check_plain(name)
            if int(arity) < 1:
                raise self._error(f"function '{name}' needs at least one argument", sig)
            self._functions[str(name)] = int(arity)

    def field(self, tree):
        name_token, args_tree, *rules = tree.children
        self._check_plain(name_token)
        name = str(name_token)
        args = tuple(self._names_of(args_tree))
        for arg in args:
            if arg not in self._independents:
                raise self._error(f"field '{name}' depends on unknown direction '{arg}'", args_tree)
        self._field_names.add(name)
        derivatives = {}
        for rule in rules:
            deriv, body = rule.children
            direction = str(deriv)[len("d/d") :]
            if direction not in args:
                raise self._error(f"field '{name}' has no argument '{direction}'", deriv, args, direction)
            derivatives[direction] = self.expr(body)
        self._field_atoms.append(FieldAtom(name, args, derivatives))

    def weight(self, tree):
        direction = str(tree.children[0])
        parts = {part.data: self.expr(part.children[0]) for part in tree.children[1:]}
        self._weights[direction] = Weight(outer=parts.get("outer", 1), inner=parts.get("inner", 1))

    def rank(self, tree):
        above, below = (self._names_of(t) for t in tree.children)
        for dep in above:
            self._priorities[dep] = 1
        for dep in below:
            if dep in self._priorities:
                raise self._error(f"'{dep}' is ranked both above and below", tree)

    def time(self, tree):
        self._time = str(tree.children[0])

    # Declarations

    def let_decl(self, tree):
        token, body = tree.children
        self._check_plain(token)
        name = self._declare(token)
        self.doc.lets[name] = self.expr(body)

    def system(self, tree):
        ctx = self._require_context(tree)
        if self.doc.system is not None:
            raise self._error("only one system may be declared", tree)
        name_token, *statements = tree.children
        equations, solved = [], []
        for statement in statements:
            if statement.data == "equation":
                label, *sides = statement.children
                lhs = self.expr(sides[0])
                rhs = self.expr(sides[1]) if len(sides) > 1 else sympy.Integer(0)
                equations.append((str(label), lhs - rhs))
            else:
                label, jet_ref = statement.children
                atom_token = jet_ref.children[0]
                atom = self.resolve_jet(atom_token) if atom_token.type == "JET" else self.resolve_name(atom_token)
                if ctx.jet_key(atom) is None:
                    raise self._error(f"'{atom_token}' is not a jet coordinate", atom_token)
                solved.append((str(label), atom))
        labels = {label for label, _ in equations}
        for label, _ in solved:
            if label not in labels:
                raise self._error(f"unknown equation '{label}'", tree, labels, label)
        self.doc.system_name = self._declare(name_token)
        self.doc.system = DifferentialSystem(ctx, equations, solved)

    def _rebuild_system(self) -> None:
        system = self.doc.system
        self.doc.system = DifferentialSystem(
            system.ctx,
            [(eq.label, eq.expr) for eq in system.equations],
            [(sf.label, sf.lead) for sf in system.solved_forms],
            self._syzygies,
        )

    def syzygy(self, tree):
        self._require_system(tree)
        token, block = tree.children
        name = self._declare(token)
        self._syzygies[name] = self.cert_block(block)
        self._rebuild_system()

    def cert_block(self, tree) -> Certificate:
        system = self._require_system(tree)
        entries = []
        for entry in tree.children:
            key, body = entry.children
            label_token, *index_tree = key.children
            label = str(label_token)
            if label not in system.labels:
                raise self._error(f"unknown equation '{label}'", label_token, system.labels, label)
            index = self.ctx.sort_index(self._names_of(index_tree[0])) if index_tree else ()
            entries.append(((label, index), self.expr(body)))
        return Certificate.of(entries)

    def certificate(self, tree):
        token, block = tree.children
        name = self._declare(token)
        self.doc.certificates[name] = self.cert_block(block)

    def vector(self, tree) -> list[Expr]:
        return [self.expr(child) for child in tree.children]

    def multiplier_vector(self, tree):
        token, vector = tree.children
        system = self._require_system(tree)
        name = self._declare(token)
        self.doc.multipliers[name] = Multiplier.from_vector(system, self.vector(vector), name)

    def multiplier_block(self, tree):
        token, block = tree.children
        name = self._declare(token)
        self.doc.multipliers[name] = Multiplier(self.cert_block(block).entries, name)

    def vectorfield(self, tree):
        ctx = self._require_context(tree)
        token, *components = tree.children
        name = self._declare(token)
        phi, xi = {}, {}
        for component in components:
            target, body = component.children
            target_name = str(target)
            if component.data == "vf_xi":
                if target_name not in ctx.independents:
                    raise self._error(f"unknown direction '{target_name}'", target, ctx.independents, target_name)
                xi[target_name] = self.expr(body)
            else:
                if target_name not in ctx.dependents:
                    raise self._error(f"unknown dependent variable '{target_name}'", target, ctx.dependents, target_name)
                phi[target_name] = self.expr(body)
        if xi:
            self.doc.fields[name] = canonicalize_field(ctx, GeneralField(xi=xi, phi=phi, name=name))
        else:
            self.doc.fields[name] = EvolutionaryField(
                phi={dep: normalize(value) for dep, value in phi.items() if normalize(value) != 0}, name=name
            )

    def _flux_vector(self, tree: Tree) -> tuple[Expr, ...]:
        ctx = self._require_context(tree)
        components = self.vector(tree)
        if len(components) != len(ctx.independents):
            raise self._error(
                f"flux has {len(components)} components, context has {len(ctx.independents)} directions", tree
            )
        return tuple(normalize(c) for c in components)

    def flux(self, tree):
        token, vector = tree.children
        name = self._declare(token)
        self.doc.fluxes[name] = self._flux_vector(vector)

    def lagrangian(self, tree):
        self._require_context(tree)
        token, body = tree.children
        name = self._declare(token)
        self.doc.lagrangians[name] = normalize(self.expr(body))

    def law(self, tree):
        token, vector, cert_ref, *rest = tree.children
        name = self._declare(token)
        weighted = bool(rest) and str(rest[0].children[0]) == "weighted"
        self.doc.laws[name] = ConservationLaw(
            flux=self._flux_vector(vector),
            certificate=self._cert_ref(cert_ref),
            weighted=weighted,
            name=name,
        )
        self._law_names.add(name)

    # References

    def _cert_ref(self, tree: Tree) -> Certificate:
        child = tree.children[0]
        if isinstance(child, Tree):
            return self.cert_block(child)
        name = str(child)
        if name not in self.doc.certificates:
            raise self._error(f"unknown certificate '{name}'", child, self.doc.certificates, name)
        return self.doc.certificates[name]

    def _flux_ref(self, tree: Tree) -> tuple[Expr, ...]:
        child = tree.children[0]
        if isinstance(child, Tree):
            return self._flux_vector(child)
        name = str(child)
        if name not in self.doc.fluxes:
            raise self._error(f"unknown flux '{name}'", child, self.doc.fluxes, name)
        return self.doc.fluxes[name]

    def _named_multiplier(self, token: Token) -> Multiplier:
        name = str(token)
        if name in self.doc.multipliers:
            return self.doc.multipliers[name]
        system = self._require_system(token)
        if name in system.labels:
            return Multiplier({(name, ()): sympy.Integer(1)}, name)
        raise self._error(
            f"unknown multiplier or equation '{name}'", token, [*self.doc.multipliers, *system.labels], name
        )

    def _combo_ref(self, tree: Tree) -> Multiplier:
        child = tree.children[0]
        if isinstance(child, Token):
            return self._named_multiplier(child)
        if child.data == "vector":
            return Multiplier.from_vector(self._require_system(child), self.vector(child), INLINE_MULTIPLIER)
        return Multiplier(self.cert_block(child).entries, INLINE_MULTIPLIER)

    def _mult_ref(self, tree: Tree) -> Multiplier:
        child = tree.children[0]
        if isinstance(child, Token):
            return self._named_multiplier(child)
        return self._combo_ref(child)

    def _vector_field(self, token: Token) -> str:
        name = str(token)
        if name not in self.doc.fields:
            raise self._error(f"unknown vector field '{name}'", token, self.doc.fields, name)
        return name

    def _law_ref(self, token: Token) -> str:
        name = str(token)
        if name not in self._law_names:
            raise self._error(f"unknown law '{name}'", token, self._law_names, name)
        return name

    # Checks

    def check(self, tree):
        body, *rest = tree.children
        line, column = _position(tree)
        directive = Directive(kind=body.data, index=len(self.doc.directives) + 1, line=line or 0, column=column or 0)
        for clause in rest:
            text = json.loads(str(clause.children[0]))
            if clause.data == "claim":
                directive.claim = text
            else:
                directive.paper_ref = text
        positional = self._clauses(directive, body.children)
        getattr(self, f"_check_{directive.kind}")(directive, positional, body)
        if directive.alias is not None:
            self._declare(Token("NAME", directive.alias, line=line, column=column))
        if directive.produces_law:
            self._law_names.add(directive.name)
        self.doc.directives.append(directive)

    def _clauses(self, directive: Directive, children: list) -> list:
        positional = []
        for child in children:
            if isinstance(child, Token):
                positional.append(child)
                continue
            match child.data:
                case "alias":
                    directive.alias = str(child.children[0])
                case "using":
                    directive.certificate = self._cert_ref(child.children[0])
                case "quasi_using":
                    for dep_cert in child.children:
                        dep, ref = dep_cert.children
                        if str(dep) not in self._dependents:
                            raise self._error(f"unknown dependent variable '{dep}'", dep, self._dependents, str(dep))
                        directive.dep_certificates[str(dep)] = self._cert_ref(ref)
                case "expect_expr":
                    directive.expected_expr = normalize(self.expr(child.children[0]))
                case "expect_flux":
                    directive.expected_flux = self._flux_ref(child.children[0])
                case "expect_verdict":
                    directive.expected = str(child.children[0].children[0])
                case "weighting":
                    directive.weighted = str(child.children[0]) == "weighted"
                case "drop":
                    flux_ref, cert_ref = child.children
                    directive.drops += ((self._flux_ref(flux_ref), self._cert_ref(cert_ref)),)
                case "rewrite":
                    name, factor = child.children
                    if str(name) not in self._syzygies:
                        raise self._error(f"unknown syzygy '{name}'", name, self._syzygies, str(name))
                    directive.rewrites += ((str(name), self.expr(factor)),)
                case _:
                    positional.append(child)
        return positional

    def _check_quasi(self, directive, positional, body):
        directive.multiplier = self._mult_ref(positional[0])

    def _check_subsym(self, directive, positional, body):
        directive.vector_field = self._vector_field(positional[0])
        directive.multiplier = self._mult_ref(positional[1])

    _check_refute = _check_subsym
    _check_probe = _check_subsym
    _check_claw = _check_subsym

    def _check_zero(self, directive, positional, body):
        self._require_system(body)
        directive.expr = self.expr(positional[0])

    def _check_nonzero(self, directive, positional, body):
        self._check_zero(directive, positional, body)

    def _check_identity(self, directive, positional, body):
        directive.expr = self.expr(positional[0])

    def _check_invert(self, directive, positional, body):
        self._require_context(body)
        directive.expr = self.expr(positional[0])
        if directive.expected is not None and directive.expected not in INVERT_VERDICTS:
            raise self._error(f"invert expects one of {sorted(INVERT_VERDICTS)}", body)

    def _check_divergence(self, directive, positional, body):
        flux_ref, target = positional
        directive.flux = self._flux_ref(flux_ref)
        child = target.children[0]
        if isinstance(child, Tree) and child.data == "combo_ref":
            directive.combination_target = self._combo_ref(child)
        else:
            directive.expr = self.expr(child)

    def _check_deform(self, directive, positional, body):
        flux_ref, field_token, mult_ref = positional
        directive.flux = self._flux_ref(flux_ref)
        directive.vector_field = self._vector_field(field_token)
        directive.multiplier = self._mult_ref(mult_ref)

    def _check_noether(self, directive, positional, body):
        field_token, lagrangian, flux_ref = positional
        directive.vector_field = self._vector_field(field_token)
        name = str(lagrangian)
        if name not in self.doc.lagrangians:
            raise self._error(f"unknown lagrangian '{name}'", lagrangian, self.doc.lagrangians, name)
        directive.lagrangian = name
        directive.flux = self._flux_ref(flux_ref)

    def _check_classify(self, directive, positional, body):
        directive.law = self._law_ref(positional[0])
        if directive.expected is not None and directive.expected not in CLASSIFY_VERDICTS:
            raise self._error(f"classify expects one of {sorted(CLASSIFY_VERDICTS)}", body)

    def _check_equivalent(self, directive, positional, body):
        directive.law = self._law_ref(positional[0])
        directive.other = self._law_ref(positional[1])


def _parse(text: str, start: str) -> Tree:
    try:
        return _lark().parse(text, start=start)
    except UnexpectedInput as exc:
        raise _parse_error(exc, text) from None


def parse_document(text: str, source: str = "<string>") -> Document:
    """Parse and resolve a document.

    Raises:
        ParseError: the text does not match the grammar.
        SemanticError: a name is unknown or an object is ill-formed.
    """
    tree = _parse(text, "start")
    document = _DocumentBuilder(source).visit(tree)
    logger.debug("parsed %s: %d directives", source, len(document.directives))
    return document


def load_document(path: str | Path) -> Document:
    """Parse a UTF-8 ``.pde`` file."""
    path = Path(path)
    return parse_document(path.read_text(encoding="utf-8"), source=str(path))


def parse_expression(text: str, document: Document) -> Expr:
    """Parse one expression in the scope of an already parsed document."""
    tree = _parse(text, "expression")
    builder = _DocumentBuilder(document.source, document)
    return builder.expr(tree)


__all__ = ["parse_document", "load_document", "parse_expression"]
