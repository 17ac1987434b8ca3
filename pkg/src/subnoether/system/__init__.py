"""Differential systems, certificates and reduction on solutions."""

from .certificate import CertKey, Certificate, ConservationLaw, format_key, natural_key
from .reduction import (
    CharacteristicForm,
    OnSolutions,
    Reduction,
    apply_syzygy,
    characteristic_identity,
    characteristic_residual,
    ibp_characteristic,
    on_solutions_zero,
    reduce,
    verify_certificate,
)
from .system import DifferentialSystem, Equation, SolvedForm, euler_lagrange_system

__all__ = [
    "CertKey",
    "Certificate",
    "ConservationLaw",
    "format_key",
    "natural_key",
    "DifferentialSystem",
    "Equation",
    "SolvedForm",
    "euler_lagrange_system",
    "Reduction",
    "OnSolutions",
    "CharacteristicForm",
    "reduce",
    "verify_certificate",
    "on_solutions_zero",
    "apply_syzygy",
    "ibp_characteristic",
    "characteristic_identity",
    "characteristic_residual",
]
