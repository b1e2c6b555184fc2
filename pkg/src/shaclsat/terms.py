"""Generalized RDF terms, triples and graphs, plus interpreted order comparisons.

Terms are immutable values; two terms are equal exactly when kind, lexical
form, datatype and language tag all coincide.  Order comparisons follow the
SPARQL operator mapping: values are totally ordered inside each comparison
type (numeric, string/plain, boolean, dateTime) and incomparable across
types; IRIs and blank nodes are never comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime
from decimal import Decimal, InvalidOperation
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Union

from .namespaces import (
    NUMERIC_DATATYPES,
    RDF_LANGSTRING,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_FLOAT,
    XSD_INTEGER_RANGES,
    XSD_STRING,
)

IRI = "iri"
LITERAL = "literal"
BLANK = "blank"

_KIND_RANK = {IRI: 0, LITERAL: 1, BLANK: 2}


@dataclass(frozen=True)
class Term:
    kind: str
    lexical: str
    datatype: Optional[str] = None
    language: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown term kind: {self.kind!r}")
        if self.kind != LITERAL and (self.datatype or self.language):
            raise ValueError("only literals carry a datatype or language tag")
        if self.datatype and self.language:
            raise ValueError("a literal has at most one of datatype and language tag")

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL

    @property
    def is_blank(self) -> bool:
        return self.kind == BLANK

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.lexical, self.datatype or "", self.language or "")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Term({n3(self)})"


def iri(value: str) -> Term:
    return Term(IRI, value)


def blank(label: str) -> Term:
    return Term(BLANK, label)


def literal(lexical: str, datatype: Optional[str] = None, language: Optional[str] = None) -> Term:
    return Term(LITERAL, lexical, datatype, language)


def boolean(value: bool) -> Term:
    return literal("true" if value else "false", XSD_BOOLEAN)


def integer(value: int) -> Term:
    from .namespaces import XSD_INTEGER

    return literal(str(value), XSD_INTEGER)


def string(value: str) -> Term:
    return literal(value)


_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape(text: str) -> str:
    return "".join(_STRING_ESCAPES.get(ch, ch) for ch in text)


def n3(term: Term) -> str:
    """Render a term in N-Triples style; the canonical textual form."""
    if term.kind == IRI:
        return f"<{term.lexical}>"
    if term.kind == BLANK:
        return f"_:{term.lexical}"
    body = f'"{_escape(term.lexical)}"'
    if term.language:
        return f"{body}@{term.language}"
    if term.datatype:
        return f"{body}^^<{term.datatype}>"
    return body


def effective_datatype(term: Term) -> Optional[str]:
    """Datatype of a literal under RDF 1.1 rules; None for non-literals."""
    if term.kind != LITERAL:
        return None
    if term.language:
        return RDF_LANGSTRING
    return term.datatype or XSD_STRING


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self) -> None:
        if not self.predicate.is_iri:
            raise ValueError("triple predicates must be IRIs")

    def sort_key(self) -> tuple:
        return (self.subject.sort_key(), self.predicate.sort_key(), self.object.sort_key())


STRICT = "strict"
GENERALIZED = "generalized"


class StrictModeError(ValueError):
    """A literal appeared in subject position of a strict-mode graph."""


@dataclass(frozen=True)
class TripleGraph:
    triples: frozenset[Triple]
    mode: str = GENERALIZED

    def __post_init__(self) -> None:
        if self.mode not in (STRICT, GENERALIZED):
            raise ValueError(f"unknown graph mode: {self.mode!r}")
        if self.mode == STRICT:
            for t in self.triples:
                if t.subject.is_literal:
                    raise StrictModeError(f"literal subject {n3(t.subject)} in strict mode")

    def __len__(self) -> int:
        return len(self.triples)

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples, key=Triple.sort_key)

    def nodes(self) -> Iterator[Term]:
        """All terms occurring in subject or object position."""
        for t in self.triples:
            yield t.subject
            yield t.object

    def predicates(self) -> set[Term]:
        return {t.predicate for t in self.triples}

    def objects(self, subject: Term, predicate: Term) -> list[Term]:
        return sorted(
            (t.object for t in self.triples if t.subject == subject and t.predicate == predicate),
            key=Term.sort_key,
        )


def graph(triples, mode: str = GENERALIZED) -> TripleGraph:
    return TripleGraph(frozenset(triples), mode)


class ComparisonVerdict(Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INCOMPARABLE = "Incomparable"


# Comparison types; each is a total order over its value space.
NUMERIC = "numeric"
STRING = "string"
BOOLEAN = "boolean"
DATETIME = "dateTime"

COMPARISON_TYPES = (NUMERIC, STRING, BOOLEAN, DATETIME)

NumericValue = Union[Fraction, float]  # float only for +/-inf


def parse_integer_lexical(lexical: str, datatype: str) -> Optional[int]:
    text = lexical.strip()
    if not text:
        return None
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    if not text.isdigit():
        return None
    value = sign * int(text)
    lo, hi = XSD_INTEGER_RANGES[datatype]
    if lo is not None and value < lo:
        return None
    if hi is not None and value > hi:
        return None
    return value


def _parse_float_lexical(lexical: str) -> Optional[NumericValue]:
    text = lexical.strip()
    if text == "INF" or text == "+INF":
        return math.inf
    if text == "-INF":
        return -math.inf
    if text == "NaN":
        return None  # NaN is incomparable; treat as no value
    try:
        value = float(text)
    except ValueError:
        return None
    if math.isnan(value) or math.isinf(value):
        return None
    return Fraction(value)


def _parse_datetime_lexical(lexical: str) -> Optional[datetime]:
    text = lexical.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        return datetime.fromisoformat(text)
    except ValueError:
        return None


def term_value(term: Term) -> Optional[tuple[str, object]]:
    """(comparison type, value) for terms that take part in an order.

    Returns None for IRIs, blank nodes, malformed literals and literals of
    non-orderable datatypes.
    """
    if term.kind != LITERAL:
        return None
    if term.language:
        return None
    dt = term.datatype
    if dt is None or dt == XSD_STRING:
        return (STRING, term.lexical)
    if dt in XSD_INTEGER_RANGES:
        value = parse_integer_lexical(term.lexical, dt)
        return None if value is None else (NUMERIC, Fraction(value))
    if dt == XSD_DECIMAL:
        try:
            dec = Decimal(term.lexical.strip())
        except InvalidOperation:
            return None
        if not dec.is_finite():
            return None
        return (NUMERIC, Fraction(dec))
    if dt in (XSD_DOUBLE, XSD_FLOAT):
        value = _parse_float_lexical(term.lexical)
        return None if value is None else (NUMERIC, value)
    if dt == XSD_BOOLEAN:
        text = term.lexical.strip()
        if text in ("true", "1"):
            return (BOOLEAN, True)
        if text in ("false", "0"):
            return (BOOLEAN, False)
        return None
    if dt == XSD_DATETIME:
        value = _parse_datetime_lexical(term.lexical)
        return None if value is None else (DATETIME, value)
    return None


def malformed_literal(term: Term) -> bool:
    """True for literals whose lexical form is invalid for their datatype."""
    if term.kind != LITERAL or term.language or term.datatype is None:
        return False
    if term.datatype in NUMERIC_DATATYPES or term.datatype in (XSD_BOOLEAN, XSD_DATETIME):
        return term_value(term) is None
    return False


def compare_terms(a: Term, b: Term) -> ComparisonVerdict:
    va = term_value(a)
    vb = term_value(b)
    if va is None or vb is None or va[0] != vb[0]:
        return ComparisonVerdict.INCOMPARABLE
    x, y = va[1], vb[1]
    try:
        if x == y:
            return ComparisonVerdict.EQ
        return ComparisonVerdict.LT if x < y else ComparisonVerdict.GT
    except TypeError:
        # e.g. naive vs timezone-aware dateTime values
        return ComparisonVerdict.INCOMPARABLE


def comparison_type_of(term: Term) -> Optional[str]:
    value = term_value(term)
    return None if value is None else value[0]
