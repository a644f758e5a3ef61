"""Formula syntax and the syntactic analyses on it."""

from .syntax import (Atom, And, Or, Implies, Forall, Exists, PredApp,
                     Restriction, Conc, PredVar, PredConst, Compr, Op, Mu, Nu,
                     RVar, Num, FOOp, falsum, neg, formula_eq, pred_eq,
                     formula_to_source, pred_to_source)
from .analyses import (is_harrop, is_strict, is_admissible, tau, erase_minus,
                       operator_strictly_positive)
from .realizability import realizability_translate, Realizer
from .parser import parse_formula, parse_formula_file
from . import corpus

__all__ = [
    "Atom", "And", "Or", "Implies", "Forall", "Exists", "PredApp",
    "Restriction", "Conc", "PredVar", "PredConst", "Compr", "Op", "Mu", "Nu",
    "RVar", "Num", "FOOp", "falsum", "neg", "formula_eq", "pred_eq",
    "formula_to_source", "pred_to_source",
    "is_harrop", "is_strict", "is_admissible", "tau", "erase_minus",
    "operator_strictly_positive",
    "realizability_translate", "Realizer",
    "parse_formula", "parse_formula_file",
    "corpus",
]
