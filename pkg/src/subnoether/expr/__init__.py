"""Expression kernel: exact rational expressions over jet atoms."""

from .atoms import FieldAtom, FnAtom, fn_apply, fn_atoms, fn_class, jet_name, split_jet_name
from .evaluate import FnInstantiation, OracleReport, ZeroOracle, eval_exact, random_instantiation
from .kernel import Expr, diff_atom, free_atoms, is_zero, normalize, substitute
from .serialize import from_json_tree, to_json_tree, to_text

__all__ = [
    "Expr",
    "FieldAtom",
    "FnAtom",
    "fn_apply",
    "fn_atoms",
    "fn_class",
    "jet_name",
    "split_jet_name",
    "normalize",
    "is_zero",
    "diff_atom",
    "substitute",
    "free_atoms",
    "FnInstantiation",
    "OracleReport",
    "ZeroOracle",
    "eval_exact",
    "random_instantiation",
    "to_text",
    "to_json_tree",
    "from_json_tree",
]
