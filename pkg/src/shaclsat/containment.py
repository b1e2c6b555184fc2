"""Containment between documents via bounded counterexample search, and
the reductions of the per-constraint decision problems to document
satisfiability."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional

from . import shapes as sh
from .direct_validation import validate_direct
from .scl import ShapeDef, conjuncts, node_constants, sentence_conj
from .search import (
    CANONICAL,
    ModelConfirmationError,
    SearchBudgetExceeded,
    _Grounder,
    _solve_lex_least,
)
from .terms import GENERALIZED, Term, TripleGraph, iri
from .translate import extract_definitions, translate


@dataclass
class ContainmentVerdict:
    outcome: str  # "NotContained" | "NoCounterexampleUpTo" | "Aborted"
    counterexample: Optional[TripleGraph] = None
    bound: Optional[int] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        out: dict = {"outcome": self.outcome}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.counterexample is not None:
            from .turtle import serialize_turtle

            out["counterexampleTurtle"] = serialize_turtle(self.counterexample)
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def _rename_clashing_shapes(doc: sh.ShaclDocument, taken: set[Term]) -> sh.ShaclDocument:
    clashes = {s.name for s in doc.shapes} & taken
    if not clashes:
        return doc
    mapping: dict[Term, Term] = {}
    for name in clashes:
        fresh = Term(name.kind, name.lexical + "--m2")
        while fresh in taken:
            fresh = Term(fresh.kind, fresh.lexical + "x")
        mapping[name] = fresh

    def rename_term(t: Term) -> Term:
        return mapping.get(t, t)

    def rename_constraint(c: sh.Constraint) -> sh.Constraint:
        if c.kind in (sh.NOT, sh.NODE, sh.PROPERTY):
            return sh.Constraint(c.kind, (rename_term(c.args[0]),))
        if c.kind in (sh.AND, sh.OR, sh.XONE):
            return sh.Constraint(c.kind, tuple(rename_term(t) for t in c.args))
        if c.kind == sh.QUALIFIED:
            ref, lo, hi, siblings = c.args
            return sh.Constraint(
                c.kind, (rename_term(ref), lo, hi, tuple(rename_term(s) for s in siblings))
            )
        return c

    shapes = tuple(
        replace(
            s,
            name=rename_term(s.name),
            constraints=tuple(rename_constraint(c) for c in s.constraints),
        )
        for s in doc.shapes
    )
    return sh.ShaclDocument(shapes, doc.vocabulary_context)


def check_containment(
    doc1: sh.ShaclDocument,
    doc2: sh.ShaclDocument,
    max_domain: int = 4,
    budget: float = 10.0,
) -> ContainmentVerdict:
    """Search for a graph validating doc1 but not doc2.

    The search runs over canonical structures satisfying the translation of
    doc1 together with doc2's shape definitions, requiring some targeted
    conjunct of doc2's translation to fail; a found structure is stripped
    to a graph and confirmed against both documents directly.
    """
    doc2 = _rename_clashing_shapes(doc2, {s.name for s in doc1.shapes})
    # closed-world relation sets must span both documents when comparing them
    vocab = doc1.relation_names() | doc2.relation_names()
    doc1 = sh.ShaclDocument(doc1.shapes, frozenset(vocab))
    doc2 = sh.ShaclDocument(doc2.shapes, frozenset(vocab))

    phi1 = translate(doc1)
    phi2 = translate(doc2)
    defs2 = extract_definitions(phi2)
    targeted2 = [part for part in conjuncts(phi2) if not isinstance(part, ShapeDef)]
    if not targeted2:
        return ContainmentVerdict("NoCounterexampleUpTo", bound=max_domain)

    base = sentence_conj([phi1, defs2])
    full = sentence_conj([base, phi2])  # scanned for signature symbols only
    constants = node_constants(full)
    deadline = time.monotonic() + budget if budget else None

    lower = max(1, len(constants))
    if lower > max_domain:
        return ContainmentVerdict("NoCounterexampleUpTo", bound=max_domain)
    try:
        for k in range(lower, max_domain + 1):
            grounder = _Grounder(base, k, CANONICAL, scan=full)
            failing = [-grounder.sentence_lit(part) for part in targeted2]
            grounder.cnf.add(failing)
            assignment = _solve_lex_least(
                grounder.cnf.n_vars,
                grounder.cnf.clauses,
                grounder.decision_vars,
                grounder.preferred,
                deadline,
                minimize=True,
            )
            if assignment is None:
                continue
            structure = grounder.decode(assignment)
            graph = structure.to_graph(GENERALIZED)
            r1 = validate_direct(graph, doc1)
            r2 = validate_direct(graph, doc2)
            if not r1.conforms or r2.conforms:
                raise ModelConfirmationError(
                    "counterexample candidate failed direct confirmation"
                )
            return ContainmentVerdict("NotContained", counterexample=graph)
        return ContainmentVerdict("NoCounterexampleUpTo", bound=max_domain)
    except SearchBudgetExceeded:
        return ContainmentVerdict("Aborted", reason="budget exhausted")


# --------------------------------------------------------------------------
# Constraint-level reductions
# --------------------------------------------------------------------------


def _constraint_constants(doc: sh.ShaclDocument, name: Term) -> set[Term]:
    """Constants mentioned by a shape's constraints, following references."""
    out: set[Term] = set()
    seen: set[Term] = set()

    def visit(shape_name: Term) -> None:
        if shape_name in seen:
            return
        seen.add(shape_name)
        try:
            shape = doc.shape(shape_name)
        except KeyError:
            return
        for c in shape.constraints:
            if c.kind in (sh.HAS_VALUE, sh.CLASS, sh.MIN_EXCLUSIVE, sh.MIN_INCLUSIVE,
                          sh.MAX_EXCLUSIVE, sh.MAX_INCLUSIVE):
                out.add(c.args[0])
            elif c.kind == sh.IN:
                out.update(c.args)
            for ref in c.shape_refs():
                visit(ref)

    visit(name)
    return out


def _strip_targets(doc: sh.ShaclDocument) -> list[sh.Shape]:
    return [replace(s, targets=()) for s in doc.shapes]


def reduce_constraint_sat(doc: sh.ShaclDocument, shape_name: Term) -> list[sh.ShaclDocument]:
    """Candidate documents whose satisfiability decides satisfiability of
    one shape's constraint: one per constant the constraint mentions, plus
    one fresh."""
    shape = doc.shape(shape_name)
    constants = sorted(_constraint_constants(doc, shape_name), key=Term.sort_key)
    fresh = iri("urn:shaclsat:probe:node")
    bump = 0
    while any(fresh == c for c in constants):
        bump += 1
        fresh = iri(f"urn:shaclsat:probe:node{bump}")
    out = []
    for c in constants + [fresh]:
        shapes = []
        for s in _strip_targets(doc):
            if s.name == shape_name:
                s = replace(s, targets=(sh.NodeTarget(c),))
            shapes.append(s)
        out.append(sh.ShaclDocument(tuple(shapes), doc.vocabulary_context))
    return out


def reduce_constraint_containment(
    doc1: sh.ShaclDocument, name1: Term, doc2: sh.ShaclDocument, name2: Term
) -> list[sh.ShaclDocument]:
    """Candidate documents that are satisfiable exactly when the first
    constraint is not contained in the second."""
    doc2 = _rename_clashing_shapes(doc2, {s.name for s in doc1.shapes})
    renamed2 = name2
    if not any(s.name == name2 for s in doc2.shapes):
        renamed2 = Term(name2.kind, name2.lexical + "--m2")
    constants = sorted(
        _constraint_constants(doc1, name1) | _constraint_constants(doc2, renamed2),
        key=Term.sort_key,
    )
    fresh = iri("urn:shaclsat:probe:node")
    probe_name = iri("urn:shaclsat:probe:shape")
    out = []
    for c in constants + [fresh]:
        shapes = list(_strip_targets(doc1)) + list(_strip_targets(doc2))
        probe = sh.Shape(
            name=probe_name,
            targets=(sh.NodeTarget(c),),
            constraints=(
                sh.Constraint(sh.NODE, (name1,)),
                sh.Constraint(sh.NOT, (renamed2,)),
            ),
        )
        out.append(
            sh.ShaclDocument(
                tuple(shapes) + (probe,),
                frozenset(doc1.vocabulary_context | doc2.vocabulary_context),
            )
        )
    return out
