"""Canonical pretty-printer for documents.

Lets are expanded, expressions normalized and references to certificates
and fluxes printed inline, so printing a parsed document and parsing it
again reproduces the same declarations.
"""

import json
from collections.abc import Iterable, Sequence

from subnoether.expr.kernel import Expr, normalize
from subnoether.expr.serialize import to_text
from subnoether.subsym.multiplier import Multiplier
from subnoether.system.certificate import Certificate

from .document import Directive, Document

INDENT = "    "


def _text(expr: Expr) -> str:
    return to_text(normalize(expr))


def _vector(values: Iterable[Expr]) -> str:
    return "[" + ", ".join(_text(v) for v in values) + "]"


def _cert_block(certificate: Certificate, indent: str = "") -> str:
    if certificate.is_empty:
        return "{ }"
    lines = ["{"]
    for (label, index), value in certificate.items():
        key = f"{label}[{', '.join(index)}]" if index else label
        lines.append(f"{indent}{INDENT}{key}: {_text(value)};")
    lines.append(f"{indent}}}")
    return "\n".join(lines)


def _multiplier_ref(doc: Document, multiplier: Multiplier) -> str:
    if doc.multipliers.get(multiplier.name) == multiplier:
        return multiplier.name
    unit = {(multiplier.name, ()): 1}
    if doc.system is not None and multiplier.name in doc.system.labels and dict(multiplier.entries) == unit:
        return multiplier.name
    return "combo " + _cert_block(multiplier.as_certificate())


def _flux_ref(doc: Document, flux: Sequence[Expr]) -> str:
    for name, declared in doc.fluxes.items():
        if tuple(declared) == tuple(flux):
            return name
    return _vector(flux)


def _context(doc: Document) -> list[str]:
    ctx = doc.ctx
    lines = ["context {", f"{INDENT}indep {', '.join(ctx.independents)};", f"{INDENT}dep {', '.join(ctx.dependents)};"]
    if ctx.parameters:
        lines.append(f"{INDENT}param {', '.join(ctx.parameters)};")
    if ctx.functions:
        signatures = ", ".join(f"{name}({arity})" for name, arity in ctx.functions.items())
        lines.append(f"{INDENT}function {signatures};")
    for atom in ctx.fields.values():
        line = f"{INDENT}field {atom.name}({', '.join(atom.args)})"
        if atom.rules:
            rules = ", ".join(f"d/d{direction} = {_text(rule)}" for direction, rule in atom.rules.items())
            line += f" with {rules}"
        lines.append(line + ";")
    for direction, weight in ctx.weights.items():
        lines.append(f"{INDENT}weight {direction}: outer {_text(weight.outer)} inner {_text(weight.inner)};")
    above = [dep for dep in ctx.dependents if ctx.priorities.get(dep, 0) > 0]
    below = [dep for dep in ctx.dependents if dep not in above]
    if above and below:
        lines.append(f"{INDENT}rank {', '.join(above)} above {', '.join(below)};")
    if ctx.time is not None and ctx.time != "t":
        lines.append(f"{INDENT}time {ctx.time};")
    lines.append("}")
    return lines


def _system(doc: Document) -> list[str]:
    system = doc.system
    lines = [f"system {doc.system_name} {{"]
    for equation in system.equations:
        lines.append(f"{INDENT}{equation.label}: {_text(equation.expr)};")
    for solved in system.solved_forms:
        lines.append(f"{INDENT}solve {solved.label} for {solved.lead.name};")
    lines.append("}")
    for name, syzygy in system.syzygies.items():
        lines.append(f"syzygy {name} {_cert_block(syzygy)}")
    return lines


def _directive(doc: Document, d: Directive) -> str:
    parts = ["check", d.kind]
    match d.kind:
        case "quasi":
            parts.append(_multiplier_ref(doc, d.multiplier))
            if d.dep_certificates:
                refs = ", ".join(f"{dep} = {_cert_block(c)}" for dep, c in d.dep_certificates.items())
                parts.append(f"using {refs}")
        case "subsym" | "refute" | "probe" | "claw":
            parts += [d.vector_field, "on", _multiplier_ref(doc, d.multiplier)]
        case "zero" | "nonzero" | "identity" | "invert":
            parts.append(_text(d.expr))
        case "divergence":
            parts += [_flux_ref(doc, d.flux), "=="]
            if d.combination_target is not None:
                ref = _multiplier_ref(doc, d.combination_target)
                parts.append(ref if ref.startswith("combo ") else f"combo {ref}")
            else:
                parts.append(_text(d.expr))
        case "deform":
            parts += [_flux_ref(doc, d.flux), "by", d.vector_field, "on", _multiplier_ref(doc, d.multiplier)]
        case "noether":
            parts += [d.vector_field, "on", d.lagrangian, "with", _flux_ref(doc, d.flux)]
        case "classify":
            parts.append(d.law)
            for name, factor in d.rewrites:
                parts.append(f"syzygy {name} times {_text(factor)}")
        case "equivalent":
            parts += [d.law, "to", d.other]
    if d.certificate is not None:
        parts.append(f"using {_cert_block(d.certificate)}")
    for flux, certificate in d.drops:
        parts.append(f"drop {_flux_ref(doc, flux)} by {_cert_block(certificate)}")
    if d.weighted is not None:
        parts.append("weighted" if d.weighted else "flat")
    if d.expected_expr is not None:
        parts.append(f"expect {_text(d.expected_expr)}")
    if d.expected_flux is not None:
        parts.append(f"expect {_flux_ref(doc, d.expected_flux)}")
    if d.expected is not None:
        parts.append(f"expect {d.expected}")
    if d.alias is not None:
        parts.append(f"as {d.alias}")
    if d.claim is not None:
        parts.append(f"claim {json.dumps(d.claim, ensure_ascii=False)}")
    if d.paper_ref is not None:
        parts.append(f"ref {json.dumps(d.paper_ref, ensure_ascii=False)}")
    return " ".join(parts) + ";"


def format_document(doc: Document) -> str:
    """Canonical text of ``doc``."""
    lines: list[str] = []
    if doc.ctx is not None:
        lines += _context(doc)
    if doc.system is not None:
        lines += _system(doc)
    for name, certificate in doc.certificates.items():
        lines.append(f"certificate {name} {_cert_block(certificate)}")
    for name, multiplier in doc.multipliers.items():
        lines.append(f"multiplier {name} {_cert_block(multiplier.as_certificate())}")
    for name, field in doc.fields.items():
        lines.append(f"vectorfield {name} {{")
        for dep, value in field.phi.items():
            lines.append(f"{INDENT}{dep} -> {_text(value)};")
        lines.append("}")
    for name, flux in doc.fluxes.items():
        lines.append(f"flux {name} = {_vector(flux)};")
    for name, lagrangian in doc.lagrangians.items():
        lines.append(f"lagrangian {name} = {_text(lagrangian)};")
    for name, law in doc.laws.items():
        weighting = " weighted" if law.weighted else ""
        lines.append(f"law {name} = {_vector(law.flux)} by {_cert_block(law.certificate)}{weighting};")
    for directive in doc.directives:
        lines.append(_directive(doc, directive))
    return "\n".join(lines) + "\n"


__all__ = ["format_document"]
