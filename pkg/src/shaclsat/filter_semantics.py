"""Ground truth of monadic filters over individual RDF terms.

Both validation routes and the canonical model search consult these
predicates, in the same way they share `compare_terms`.
"""

from __future__ import annotations

import re
from typing import Optional

from . import namespaces as ns
from .scl import (
    FilterName,
    HasDatatype,
    HasLanguage,
    IsBlank,
    IsIri,
    IsLiteral,
    Matches,
    MaxLength,
    MaxValue,
    MinLength,
    MinValue,
)
from .terms import (
    ComparisonVerdict,
    Term,
    compare_terms,
    effective_datatype,
    malformed_literal,
)


def string_representation(term: Term) -> Optional[str]:
    """SPARQL str() of a term; None for blank nodes."""
    if term.is_blank:
        return None
    return term.lexical


def term_matches_node_kind(term: Term, node_kind_iri: str) -> bool:
    if node_kind_iri == ns.SH_NK_IRI:
        return term.is_iri
    if node_kind_iri == ns.SH_NK_LITERAL:
        return term.is_literal
    if node_kind_iri == ns.SH_NK_BLANK:
        return term.is_blank
    if node_kind_iri == ns.SH_NK_BLANK_OR_IRI:
        return term.is_blank or term.is_iri
    if node_kind_iri == ns.SH_NK_BLANK_OR_LITERAL:
        return term.is_blank or term.is_literal
    if node_kind_iri == ns.SH_NK_IRI_OR_LITERAL:
        return term.is_iri or term.is_literal
    return False


def term_satisfies(filter_name: FilterName, term: Term) -> bool:
    """Canonical truth of a monadic filter at a term."""
    if isinstance(filter_name, IsIri):
        return term.is_iri
    if isinstance(filter_name, IsLiteral):
        return term.is_literal
    if isinstance(filter_name, IsBlank):
        return term.is_blank
    if isinstance(filter_name, HasDatatype):
        return (
            term.is_literal
            and effective_datatype(term) == filter_name.datatype
            and not malformed_literal(term)
        )
    if isinstance(filter_name, HasLanguage):
        return (
            term.is_literal
            and term.language is not None
            and term.language.lower() == filter_name.tag.lower()
        )
    if isinstance(filter_name, MinLength):
        rep = string_representation(term)
        return rep is not None and len(rep) >= filter_name.bound
    if isinstance(filter_name, MaxLength):
        rep = string_representation(term)
        return rep is not None and len(rep) <= filter_name.bound
    if isinstance(filter_name, Matches):
        rep = string_representation(term)
        return rep is not None and re.search(filter_name.pattern, rep) is not None
    if isinstance(filter_name, MinValue):
        verdict = compare_terms(term, filter_name.bound)
        if filter_name.strict:
            return verdict is ComparisonVerdict.GT
        return verdict in (ComparisonVerdict.GT, ComparisonVerdict.EQ)
    if isinstance(filter_name, MaxValue):
        verdict = compare_terms(term, filter_name.bound)
        if filter_name.strict:
            return verdict is ComparisonVerdict.LT
        return verdict in (ComparisonVerdict.LT, ComparisonVerdict.EQ)
    raise TypeError(f"unknown filter {filter_name!r}")
