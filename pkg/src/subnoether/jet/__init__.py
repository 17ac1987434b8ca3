"""Jet-space calculus."""

from .calculus import (
    Flux,
    canonicalize_field,
    divergence,
    divergence_verify,
    euler_op,
    noether_R,
    prolong_apply,
    total_derivative,
    total_derivative_multi,
)
from .context import JetContext, JetKey, Weight
from .fields import EvolutionaryField, GeneralField
from .inversion import invert_divergence

__all__ = [
    "JetContext",
    "JetKey",
    "Weight",
    "EvolutionaryField",
    "GeneralField",
    "Flux",
    "total_derivative",
    "total_derivative_multi",
    "prolong_apply",
    "euler_op",
    "noether_R",
    "canonicalize_field",
    "divergence",
    "divergence_verify",
    "invert_divergence",
]
