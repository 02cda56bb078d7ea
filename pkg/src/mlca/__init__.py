"""Maximal-length cellular automata over prime fields."""

__version__ = "0.1.0"

from .automaton import build_matrix, char_poly, conjugate, is_palindromic, step, subpolynomial
from .factor import FactorizationBudgetExceeded, factor_integer
from .gfpoly import Poly, format_poly, is_irreducible, is_primitive, parse_poly
from .maximality import (
    CycleStructure,
    MaximalityVerdict,
    cycle_structure,
    decide_maximal_exhaustive,
    decide_maximal_primitive,
    is_reversible,
)
from .phaseshift import phase_shifts
from .rules import Boundary, Kind, RuleVector, decode_rule_number, parse_rules
from .synthesis import synthesize

__all__ = [
    "Boundary",
    "CycleStructure",
    "FactorizationBudgetExceeded",
    "Kind",
    "MaximalityVerdict",
    "Poly",
    "RuleVector",
    "build_matrix",
    "char_poly",
    "conjugate",
    "cycle_structure",
    "decide_maximal_exhaustive",
    "decide_maximal_primitive",
    "decode_rule_number",
    "factor_integer",
    "format_poly",
    "is_irreducible",
    "is_palindromic",
    "is_primitive",
    "is_reversible",
    "parse_poly",
    "parse_rules",
    "phase_shifts",
    "step",
    "subpolynomial",
    "synthesize",
]
