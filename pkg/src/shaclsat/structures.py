"""Finite first-order structures and the sentence evaluator.

A structure interprets binary relations over a finite domain of terms,
carries a computed hasShape relation, and interprets filters and orders
either canonically (from the terms themselves) or explicitly (from
enumerated extensions and order blocks).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from . import namespaces as ns
from .filter_semantics import term_satisfies
from .scl import (
    And,
    AtConst,
    AtMostGlobal,
    CountExists,
    Disjoint,
    EqConst,
    Equals,
    Filter,
    ForClass,
    ForSubjectsOf,
    HasShape,
    Not,
    Opt,
    OrderCmp,
    PathExpr,
    Rel,
    SclFormula,
    SclSentence,
    Seq,
    ShapeDef,
    Star,
    Top,
    TopSentence,
    Alt,
    conjuncts,
    referenced_shapes,
    shape_definitions,
)
from .terms import (
    ComparisonVerdict,
    Term,
    Triple,
    TripleGraph,
    compare_terms,
    iri,
)

CANONICAL = "canonical"


@dataclass(frozen=True)
class OrderBlock:
    comparison_type: str
    members: tuple[Term, ...]  # ascending


@dataclass
class FiniteStructure:
    """Treat instances as immutable; derived structures are new objects."""

    domain: tuple[Term, ...]
    relations: dict[Term, frozenset[tuple[Term, Term]]] = field(default_factory=dict)
    has_shape: frozenset[tuple[Term, Term]] = frozenset()
    filter_interp: Optional[dict] = None  # None = canonical
    order_blocks: Optional[tuple[OrderBlock, ...]] = None  # None = canonical
    constants: dict[Term, Term] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.domain:
            raise ValueError("structures have a non-empty domain")
        members = set(self.domain)
        for name, pairs in self.relations.items():
            for s, o in pairs:
                if s not in members or o not in members:
                    raise ValueError(f"relation {name} mentions terms outside the domain")

    def denote(self, constant: Term) -> Term:
        return self.constants.get(constant, constant)

    def to_json(self) -> dict:
        from .terms import n3

        return {
            "domain": [n3(t) for t in self.domain],
            "relations": {
                name.lexical: sorted(
                    [n3(s), n3(o)] for s, o in pairs
                )
                for name, pairs in sorted(self.relations.items(), key=lambda kv: kv[0].sort_key())
            },
        }

    def to_graph(self, mode: str = "generalized") -> TripleGraph:
        """Drop hasShape and read the relations back as triples."""
        triples = [
            Triple(s, name, o) for name, pairs in self.relations.items() for s, o in pairs
        ]
        return TripleGraph(frozenset(triples), mode)


def canonical_structure(graph: TripleGraph) -> FiniteStructure:
    """The structure a graph induces: its terms, its edges, canonical
    filters and orders, and no shape assignment yet."""
    domain = sorted(set(graph.nodes()), key=Term.sort_key)
    if not domain:
        domain = [iri(ns.GEN_NS + "inert:0")]
    relations: dict[Term, set[tuple[Term, Term]]] = {}
    for t in graph.triples:
        relations.setdefault(t.predicate, set()).add((t.subject, t.object))
    return FiniteStructure(
        domain=tuple(domain),
        relations={name: frozenset(pairs) for name, pairs in relations.items()},
    )


def with_constants(structure: FiniteStructure, constants: set[Term]) -> FiniteStructure:
    """Extend the domain with constants it is missing (as inert elements)."""
    missing = sorted(set(constants) - set(structure.domain), key=Term.sort_key)
    if not missing:
        return structure
    return replace(structure, domain=structure.domain + tuple(missing))


class Evaluator:
    def __init__(self, structure: FiniteStructure):
        self.s = structure
        self.index = {term: i for i, term in enumerate(structure.domain)}
        self.n = len(structure.domain)
        self.rel_pairs: dict[tuple[Term, bool], set[tuple[int, int]]] = {}
        self.has_shape: set[tuple[int, Term]] = {
            (self.index[t], name) for t, name in structure.has_shape if t in self.index
        }
        self._path_cache: dict[PathExpr, set[tuple[int, int]]] = {}
        self._formula_cache: dict[tuple[int, int], bool] = {}
        self._cached_nodes: list[SclFormula] = []
        self._order_position: Optional[dict[Term, tuple[int, int]]] = None
        if structure.order_blocks is not None:
            self._order_position = {}
            for b, block in enumerate(structure.order_blocks):
                for pos, term in enumerate(block.members):
                    self._order_position[term] = (b, pos)

    # relations ---------------------------------------------------------

    def relation(self, name: Term, inverted: bool = False) -> set[tuple[int, int]]:
        key = (name, inverted)
        if key not in self.rel_pairs:
            pairs = self.s.relations.get(name, frozenset())
            indexed = {
                (self.index[a], self.index[b])
                for a, b in pairs
                if a in self.index and b in self.index
            }
            if inverted:
                indexed = {(b, a) for a, b in indexed}
            self.rel_pairs[key] = indexed
        return self.rel_pairs[key]

    # paths ---------------------------------------------------------------

    def path_pairs(self, path: PathExpr) -> set[tuple[int, int]]:
        if path in self._path_cache:
            return self._path_cache[path]
        if isinstance(path, Rel):
            out = set(self.relation(path.name, path.inverted))
        elif isinstance(path, Seq):
            left = self.path_pairs(path.left)
            right = self.path_pairs(path.right)
            by_mid: dict[int, set[int]] = {}
            for m, j in right:
                by_mid.setdefault(m, set()).add(j)
            out = {(i, j) for i, m in left for j in by_mid.get(m, ())}
        elif isinstance(path, Alt):
            out = self.path_pairs(path.left) | self.path_pairs(path.right)
        elif isinstance(path, Opt):
            out = {(i, i) for i in range(self.n)} | self.path_pairs(path.inner)
        elif isinstance(path, Star):
            out = self._reflexive_transitive(self.path_pairs(path.inner))
        else:  # pragma: no cover
            raise TypeError(f"unknown path {path!r}")
        self._path_cache[path] = out
        return out

    def _reflexive_transitive(self, base: set[tuple[int, int]]) -> set[tuple[int, int]]:
        succ: dict[int, set[int]] = {i: set() for i in range(self.n)}
        for i, j in base:
            succ[i].add(j)
        out: set[tuple[int, int]] = set()
        for start in range(self.n):
            reached = {start}
            frontier = [start]
            while frontier:
                nxt = []
                for node in frontier:
                    for j in succ[node]:
                        if j not in reached:
                            reached.add(j)
                            nxt.append(j)
                frontier = nxt
            out |= {(start, j) for j in reached}
        return out

    # interpreted atoms ----------------------------------------------------

    def filter_truth(self, name, element: int) -> bool:
        if self.s.filter_interp is None:
            return term_satisfies(name, self.s.domain[element])
        return self.s.domain[element] in self.s.filter_interp.get(name, ())

    def order_verdict(self, a: int, b: int) -> ComparisonVerdict:
        if self._order_position is None:
            return compare_terms(self.s.domain[a], self.s.domain[b])
        pa = self._order_position.get(self.s.domain[a])
        pb = self._order_position.get(self.s.domain[b])
        if pa is None or pb is None or pa[0] != pb[0]:
            return ComparisonVerdict.INCOMPARABLE
        if pa[1] == pb[1]:
            return ComparisonVerdict.EQ
        return ComparisonVerdict.LT if pa[1] < pb[1] else ComparisonVerdict.GT

    def _sigma(self, a: int, b: int, strict: bool) -> bool:
        verdict = self.order_verdict(a, b)
        if strict:
            return verdict is ComparisonVerdict.LT
        return verdict in (ComparisonVerdict.LT, ComparisonVerdict.EQ)

    # formulas --------------------------------------------------------------

    def formula(self, f: SclFormula, element: int) -> bool:
        key = (id(f), element)
        if key in self._formula_cache:
            return self._formula_cache[key]
        result = self._formula(f, element)
        self._formula_cache[key] = result
        self._cached_nodes.append(f)  # keep ids stable while cached
        return result

    def _formula(self, f: SclFormula, x: int) -> bool:
        if isinstance(f, Top):
            return True
        if isinstance(f, EqConst):
            target = self.s.denote(f.constant)
            return self.s.domain[x] == target
        if isinstance(f, Filter):
            return self.filter_truth(f.name, x)
        if isinstance(f, HasShape):
            return (x, f.shape) in self.has_shape
        if isinstance(f, Not):
            return not self.formula(f.body, x)
        if isinstance(f, And):
            return self.formula(f.left, x) and self.formula(f.right, x)
        if isinstance(f, CountExists):
            pairs = self.path_pairs(f.path)
            count = 0
            for i, j in pairs:
                if i == x and self.formula(f.body, j):
                    count += 1
                    if count >= f.threshold:
                        return True
            return False
        if isinstance(f, Disjoint):
            rel = self.relation(f.relation)
            return not any(
                (x, j) in rel for i, j in self.path_pairs(f.path) if i == x
            )
        if isinstance(f, Equals):
            path_succ = {j for i, j in self.path_pairs(f.path) if i == x}
            rel_succ = {j for i, j in self.relation(f.relation) if i == x}
            return path_succ == rel_succ
        if isinstance(f, OrderCmp):
            path_succ = {j for i, j in self.path_pairs(f.path) if i == x}
            rel_succ = {j for i, j in self.relation(f.relation) if i == x}
            for y in path_succ:
                for z in rel_succ:
                    a, b = (z, y) if f.inverted else (y, z)
                    if not self._sigma(a, b, f.strict):
                        return False
            return True
        raise TypeError(f"unknown formula {f!r}")

    # sentences ---------------------------------------------------------------

    def sentence(self, s: SclSentence) -> bool:
        return all(self._conjunct(part) for part in conjuncts(s))

    def _conjunct(self, part: SclSentence) -> bool:
        return not self.counterexamples(part)

    def counterexamples(self, part: SclSentence) -> list[int]:
        """Domain elements witnessing the failure of one sentence conjunct."""
        if isinstance(part, TopSentence):
            return []
        if isinstance(part, AtConst):
            target = self.s.denote(part.constant)
            if target not in self.index:
                raise ValueError(f"constant {part.constant} does not denote a domain element")
            x = self.index[target]
            return [] if self.formula(part.body, x) else [x]
        if isinstance(part, ForClass):
            cls = self.s.denote(part.cls)
            is_a = self.relation(iri(ns.RDF_TYPE))
            out = []
            if cls in self.index:
                c = self.index[cls]
                for x in range(self.n):
                    if (x, c) in is_a and not self.formula(part.body, x):
                        out.append(x)
            return out
        if isinstance(part, ForSubjectsOf):
            rel = self.relation(part.relation, part.inverted)
            subjects = sorted({i for i, _ in rel})
            return [x for x in subjects if not self.formula(part.body, x)]
        if isinstance(part, ShapeDef):
            # definitions hold by construction once the assignment is computed
            out = []
            for x in range(self.n):
                holds = (x, part.name) in self.has_shape
                if holds != self.formula(part.body, x):
                    out.append(x)
            return out
        if isinstance(part, AtMostGlobal):
            hits = [x for x in range(self.n) if self.formula(part.body, x)]
            return hits if len(hits) > part.bound else []
        raise TypeError(f"unknown sentence {part!r}")


def compute_shape_assignment(
    structure: FiniteStructure, definitions: SclSentence
) -> FiniteStructure:
    """Populate hasShape by evaluating each definition in dependency order."""
    defs = shape_definitions(definitions)
    names = [d.name for d in defs]
    if len(names) != len(set(names)):
        raise ValueError("duplicate shape definitions")
    by_name = {d.name: d for d in defs}

    order: list[ShapeDef] = []
    state: dict[Term, int] = {}

    def visit(d: ShapeDef) -> None:
        if state.get(d.name) == 2:
            return
        if state.get(d.name) == 1:
            raise ValueError(f"recursive shape definition {d.name}")
        state[d.name] = 1
        for dep in sorted(referenced_shapes(d.body), key=Term.sort_key):
            if dep in by_name:
                visit(by_name[dep])
        state[d.name] = 2
        order.append(d)

    for d in defs:
        visit(d)

    working = replace(structure)
    assignment = set(structure.has_shape)
    for d in order:
        working = replace(working, has_shape=frozenset(assignment))
        ev = Evaluator(working)
        for x, term in enumerate(working.domain):
            if ev.formula(d.body, x):
                assignment.add((term, d.name))
    return replace(structure, has_shape=frozenset(assignment))


def evaluate_sentence(structure: FiniteStructure, sentence: SclSentence) -> bool:
    """Truth of a sentence after computing the shape assignment it needs."""
    from .translate import extract_definitions

    prepared = compute_shape_assignment(structure, extract_definitions(sentence))
    return Evaluator(prepared).sentence(sentence)


def evaluate(structure: FiniteStructure, node, at: Optional[Term] = None) -> bool:
    """Truth of a sentence, or of a formula at a domain term.

    Sentences get their shape assignment computed first; formulas are
    evaluated against the structure as given.
    """
    if isinstance(node, SclSentence):
        return evaluate_sentence(structure, node)
    if at is None:
        raise ValueError("formula evaluation needs a domain term")
    ev = Evaluator(structure)
    if at not in ev.index:
        raise ValueError(f"{at} is not a domain element")
    return ev.formula(node, ev.index[at])
