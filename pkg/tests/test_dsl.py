from importlib import resources

import pytest
import sympy

from subnoether.core.exceptions import ParseError, SemanticError
from subnoether.dsl import format_document, parse_document, parse_expression
from subnoether.expr import fn_apply, normalize

PDE_FILES = sorted(p.name for p in resources.files("subnoether.catalog.cases").iterdir() if p.name.endswith(".pde"))

HEADER = """
context {
    indep t, x;
    dep u;
}
"""


@pytest.mark.parametrize("file", PDE_FILES)
def test_shipped_documents_parse(file):
    text = resources.files("subnoether.catalog.cases").joinpath(file).read_text(encoding="utf-8")
    document = parse_document(text, source=file)
    assert document.system is not None
    assert document.directives


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as exc_info:
        parse_document(HEADER + "let a = u_x +;\n")
    assert exc_info.value.line == 6


def test_unknown_dependent_suggests_closest_name():
    with pytest.raises(SemanticError) as exc_info:
        parse_document(HEADER + "let a = uu_x;\n")
    assert exc_info.value.suggestion == "u"


def test_duplicate_declaration_is_rejected():
    with pytest.raises(SemanticError, match="already declared"):
        parse_document(HEADER + "let a = u;\nlet a = u_x;\n")


def test_underscore_in_let_name_is_rejected():
    with pytest.raises(SemanticError, match="jet coordinates"):
        parse_document(HEADER + "let energy_density = u_t^2;\n")


def test_underscore_allowed_in_check_alias():
    document = parse_document(
        HEADER + "system s {\n    D1: u_t - u_{x,x};\n}\ncheck identity D_x(u) - u_x as dx_of_u;\n"
    )
    assert document.directive("dx_of_u").kind == "identity"


def test_vector_multiplier_length_is_checked():
    source = HEADER + "system s {\n    D1: u_t - u_{x,x};\n}\nmultiplier G = [u, u];\n"
    with pytest.raises(SemanticError):
        parse_document(source)


def test_total_derivative_expands(nls):
    expr = parse_expression("D_x(u^2)", nls)
    assert normalize(expr - 2 * sympy.Symbol("u") * sympy.Symbol("u_{x}")) == 0


def test_jet_indices_are_sorted(nls):
    assert parse_expression("u_{x,t}", nls) == sympy.Symbol("u_{t,x}")


def test_function_derivative_notation():
    document = parse_document(HEADER.replace("dep u;", "dep u;\n    function f(1);"))
    expr = parse_expression("f'(u) + f(u^2)", document)
    u = sympy.Symbol("u")
    assert expr == fn_apply("f", u, orders=(1,)) + fn_apply("f", u**2)


def test_lets_are_expanded_in_place():
    document = parse_document(HEADER + "let a = u^2;\nlet b = a*u_x;\n")
    u, ux = sympy.Symbol("u"), sympy.Symbol("u_{x}")
    assert normalize(document.lets["b"] - u**2 * ux) == 0


def test_format_is_stable(nls):
    text = format_document(nls)
    reparsed = parse_document(text, source="nls-formatted.pde")
    assert format_document(reparsed) == text
    assert [d.name for d in reparsed.directives] == [d.name for d in nls.directives]


def test_claim_and_reference_clauses():
    document = parse_document(
        HEADER
        + "system s {\n    D1: u_t - u_{x,x};\n}\n"
        + 'check identity D_x(u) - u_x as dx_of_u claim "D_x(u) is u_x" ref "calculus: total derivative";\n'
        + "check identity u - u as plain;\n"
    )
    assert document.directive("dx_of_u").claim == "D_x(u) is u_x"
    assert document.directive("dx_of_u").paper_ref == "calculus: total derivative"
    assert document.directive("plain").paper_ref is None
    assert 'ref "calculus: total derivative";' in format_document(document)
