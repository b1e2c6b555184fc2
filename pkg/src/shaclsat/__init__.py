"""SHACL <-> constraint-logic toolkit: translation in both directions,
direct and logic-based validation, filter cardinality axioms, rewrites,
fragment classification, and exact bounded model search for
satisfiability and containment."""

from .classify import ClassificationResult, classify, classify_features
from .containment import (
    ContainmentVerdict,
    check_containment,
    reduce_constraint_containment,
    reduce_constraint_sat,
)
from .direct_validation import ValidationReport, validate_direct
from .filters import (
    CapExceeded,
    Cardinality,
    FilterCombination,
    axiomatize,
    collect_combinations,
    gamma,
)
from .gadgets import TilingSystem, gadget_domino, gadget_infinity
from .rewrite import (
    eliminate_alternative,
    eliminate_sequence,
    eliminate_zero_or_one,
    name_subformulas,
    normalize_fragment,
    rewrite_sentence,
)
from .scl import check_well_formed, features_of
from .scl_text import parse_scl, print_scl
from .search import SatVerdict, bounded_sat
from .shapes import ShaclDocument, Shape, extract_document, parse_document, split_targets
from .structures import (
    FiniteStructure,
    canonical_structure,
    compute_shape_assignment,
    evaluate,
    evaluate_sentence,
)
from .terms import ComparisonVerdict, Term, Triple, TripleGraph, compare_terms
from .translate import back_translate, extract_definitions, translate
from .turtle import ParseError, parse_turtle, serialize_turtle
from .validation import validate

__all__ = [name for name in dir() if not name.startswith("_")]
