"""Sub-symmetries, quasi-Noether combinations and the laws they generate."""

from .checks import QuasiNoether, Refutation, SubSymmetry, probe, quasi_noether_check, subsymmetry_check
from .laws import (
    VERDICT_NONTRIVIAL,
    VERDICT_TRIVIAL,
    VERDICT_UNDECIDED,
    Classification,
    Equivalence,
    FluxMatch,
    characteristics_match,
    check_law,
    deform_claw,
    discard_part,
    first_noether,
    generate_claw,
    law_identity,
    laws_equivalent,
    match_flux,
    noether_system,
    triviality_classify,
    verify_law,
)
from .multiplier import Multiplier, combination

__all__ = [
    "Multiplier",
    "combination",
    "QuasiNoether",
    "SubSymmetry",
    "Refutation",
    "quasi_noether_check",
    "subsymmetry_check",
    "probe",
    "VERDICT_TRIVIAL",
    "VERDICT_NONTRIVIAL",
    "VERDICT_UNDECIDED",
    "law_identity",
    "verify_law",
    "check_law",
    "generate_claw",
    "discard_part",
    "deform_claw",
    "first_noether",
    "noether_system",
    "Classification",
    "triviality_classify",
    "FluxMatch",
    "match_flux",
    "Equivalence",
    "laws_equivalent",
    "characteristics_match",
]
