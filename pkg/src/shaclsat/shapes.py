"""SHACL document AST: shapes, targets, property paths and constraints,
extracted from RDF graphs."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from . import namespaces as ns
from .terms import Term, Triple, TripleGraph, iri
from .turtle import parse_turtle


class ShaclModelError(ValueError):
    pass


class RecursiveShapeError(ShaclModelError):
    pass


# --------------------------------------------------------------------------
# Property paths
# --------------------------------------------------------------------------


class ShaclPath:
    pass


@dataclass(frozen=True)
class PredicatePath(ShaclPath):
    predicate: Term


@dataclass(frozen=True)
class InversePath(ShaclPath):
    inner: ShaclPath


@dataclass(frozen=True)
class SequencePath(ShaclPath):
    parts: tuple[ShaclPath, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ShaclModelError("sequence paths need at least two parts")


@dataclass(frozen=True)
class AlternativePath(ShaclPath):
    parts: tuple[ShaclPath, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ShaclModelError("alternative paths need at least two parts")


@dataclass(frozen=True)
class ZeroOrMorePath(ShaclPath):
    inner: ShaclPath


@dataclass(frozen=True)
class OneOrMorePath(ShaclPath):
    inner: ShaclPath


@dataclass(frozen=True)
class ZeroOrOnePath(ShaclPath):
    inner: ShaclPath


def path_predicates(path: ShaclPath) -> set[Term]:
    if isinstance(path, PredicatePath):
        return {path.predicate}
    if isinstance(path, (InversePath, ZeroOrMorePath, OneOrMorePath, ZeroOrOnePath)):
        return path_predicates(path.inner)
    if isinstance(path, (SequencePath, AlternativePath)):
        out: set[Term] = set()
        for p in path.parts:
            out |= path_predicates(p)
        return out
    raise TypeError(f"unknown path {path!r}")


# --------------------------------------------------------------------------
# Targets
# --------------------------------------------------------------------------


class Target:
    pass


@dataclass(frozen=True)
class NodeTarget(Target):
    node: Term


@dataclass(frozen=True)
class ClassTarget(Target):
    cls: Term


@dataclass(frozen=True)
class SubjectsOfTarget(Target):
    relation: Term


@dataclass(frozen=True)
class ObjectsOfTarget(Target):
    relation: Term


def _target_key(t: Target) -> tuple:
    order = {NodeTarget: 0, ClassTarget: 1, SubjectsOfTarget: 2, ObjectsOfTarget: 3}
    inner = next(iter(t.__dict__.values()))
    return (order[type(t)], inner.sort_key())


# --------------------------------------------------------------------------
# Constraints
# --------------------------------------------------------------------------

# Constraint kinds and their argument layout (args tuple):
#   has_value (term,)            in (terms...)          cls (term,)
#   datatype (iri,)              node_kind (iri,)
#   min_exclusive / min_inclusive / max_exclusive / max_inclusive (term,)
#   min_length / max_length (int,)          pattern (str,)
#   language_in (tags...)        unique_lang ()
#   not_ / node / property (shape name,)    and_ / or_ / xone (shape names...)
#   min_count / max_count (int,)
#   equals / disjoint / less_than / less_than_or_equals (iri,)
#   qualified (shape name, min: int|None, max: int|None, siblings: tuple[Term,...])
#   closed (ignored relation iris...)

HAS_VALUE = "has_value"
IN = "in"
CLASS = "cls"
DATATYPE = "datatype"
NODE_KIND = "node_kind"
MIN_EXCLUSIVE = "min_exclusive"
MIN_INCLUSIVE = "min_inclusive"
MAX_EXCLUSIVE = "max_exclusive"
MAX_INCLUSIVE = "max_inclusive"
MIN_LENGTH = "min_length"
MAX_LENGTH = "max_length"
PATTERN = "pattern"
LANGUAGE_IN = "language_in"
UNIQUE_LANG = "unique_lang"
NOT = "not_"
AND = "and_"
OR = "or_"
XONE = "xone"
NODE = "node"
PROPERTY = "property"
MIN_COUNT = "min_count"
MAX_COUNT = "max_count"
EQUALS = "equals"
DISJOINT = "disjoint"
LESS_THAN = "less_than"
LESS_THAN_OR_EQUALS = "less_than_or_equals"
QUALIFIED = "qualified"
CLOSED = "closed"

_SHAPE_REF_KINDS = (NOT, NODE, PROPERTY)
_SHAPE_LIST_KINDS = (AND, OR, XONE)


@dataclass(frozen=True)
class Constraint:
    kind: str
    args: tuple = ()

    def shape_refs(self) -> tuple[Term, ...]:
        if self.kind in _SHAPE_REF_KINDS:
            return (self.args[0],)
        if self.kind in _SHAPE_LIST_KINDS:
            return tuple(self.args)
        if self.kind == QUALIFIED:
            return (self.args[0],) + tuple(self.args[3])
        return ()


# --------------------------------------------------------------------------
# Shapes and documents
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Shape:
    name: Term
    is_property_shape: bool = False
    path: Optional[ShaclPath] = None
    targets: tuple[Target, ...] = ()
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self) -> None:
        if self.is_property_shape and self.path is None:
            raise ShaclModelError(f"property shape {self.name} has no path")
        if not self.is_property_shape and self.path is not None:
            raise ShaclModelError(f"node shape {self.name} carries a path")


@dataclass(frozen=True)
class ShaclDocument:
    shapes: tuple[Shape, ...] = ()
    vocabulary_context: frozenset[Term] = frozenset()

    def __post_init__(self) -> None:
        names = [s.name for s in self.shapes]
        if len(names) != len(set(names)):
            raise ShaclModelError("duplicate shape names in document")
        cycle = _find_reference_cycle(self.shapes)
        if cycle:
            raise RecursiveShapeError(f"recursive shape reference: {cycle}")

    def shape(self, name: Term) -> Shape:
        for s in self.shapes:
            if s.name == name:
                return s
        raise KeyError(name)

    def language_set(self) -> tuple[str, ...]:
        """All language tags mentioned in language_in constraints, sorted."""
        tags: set[str] = set()
        for s in self.shapes:
            for c in s.constraints:
                if c.kind == LANGUAGE_IN:
                    tags |= set(c.args)
        return tuple(sorted(tags))

    def relation_names(self) -> set[Term]:
        """Relation names used by shapes, plus rdf:type and the context."""
        out: set[Term] = {iri(ns.RDF_TYPE)}
        for s in self.shapes:
            if s.path is not None:
                out |= path_predicates(s.path)
            for t in s.targets:
                if isinstance(t, (SubjectsOfTarget, ObjectsOfTarget)):
                    out.add(t.relation)
            for c in s.constraints:
                if c.kind in (EQUALS, DISJOINT, LESS_THAN, LESS_THAN_OR_EQUALS):
                    out.add(c.args[0])
        return out | set(self.vocabulary_context)

    def closed_theta(self, shape: Shape) -> tuple[Term, ...]:
        """Forbidden relations for a closed constraint at `shape`."""
        closed = [c for c in shape.constraints if c.kind == CLOSED]
        if not closed:
            return ()
        ignored = set(closed[0].args)
        declared: set[Term] = set()
        for c in shape.constraints:
            if c.kind == PROPERTY:
                try:
                    ref = self.shape(c.args[0])
                except KeyError:
                    continue
                if isinstance(ref.path, PredicatePath):
                    declared.add(ref.path.predicate)
        theta = self.relation_names() - declared - ignored
        return tuple(sorted(theta, key=Term.sort_key))


def referenced_shape_names(shapes) -> set[Term]:
    out: set[Term] = set()
    for s in shapes:
        for c in s.constraints:
            out |= set(c.shape_refs())
    return out


def _find_reference_cycle(shapes) -> Optional[list[Term]]:
    graph = {s.name: referenced_shape_names([s]) for s in shapes}
    color: dict[Term, int] = {}
    stack: list[Term] = []

    def visit(name: Term) -> Optional[list[Term]]:
        if color.get(name) == 2:
            return None
        if color.get(name) == 1:
            return stack[stack.index(name) :] + [name]
        color[name] = 1
        stack.append(name)
        for dep in sorted(graph.get(name, ()), key=Term.sort_key):
            if dep in graph:
                found = visit(dep)
                if found:
                    return found
        stack.pop()
        color[name] = 2
        return None

    for name in sorted(graph, key=Term.sort_key):
        found = visit(name)
        if found:
            return found
    return None


# --------------------------------------------------------------------------
# Extraction from RDF
# --------------------------------------------------------------------------

_TARGET_PARAMS = (
    ns.SH_TARGET_NODE,
    ns.SH_TARGET_CLASS,
    ns.SH_TARGET_SUBJECTS_OF,
    ns.SH_TARGET_OBJECTS_OF,
)

_CONSTRAINT_PARAMS = {
    ns.SH_HAS_VALUE: HAS_VALUE,
    ns.SH_IN: IN,
    ns.SH_CLASS: CLASS,
    ns.SH_DATATYPE: DATATYPE,
    ns.SH_NODE_KIND: NODE_KIND,
    ns.SH_MIN_EXCLUSIVE: MIN_EXCLUSIVE,
    ns.SH_MIN_INCLUSIVE: MIN_INCLUSIVE,
    ns.SH_MAX_EXCLUSIVE: MAX_EXCLUSIVE,
    ns.SH_MAX_INCLUSIVE: MAX_INCLUSIVE,
    ns.SH_MIN_LENGTH: MIN_LENGTH,
    ns.SH_MAX_LENGTH: MAX_LENGTH,
    ns.SH_PATTERN: PATTERN,
    ns.SH_LANGUAGE_IN: LANGUAGE_IN,
    ns.SH_UNIQUE_LANG: UNIQUE_LANG,
    ns.SH_NOT: NOT,
    ns.SH_AND: AND,
    ns.SH_OR: OR,
    ns.SH_XONE: XONE,
    ns.SH_NODE: NODE,
    ns.SH_PROPERTY: PROPERTY,
    ns.SH_MIN_COUNT: MIN_COUNT,
    ns.SH_MAX_COUNT: MAX_COUNT,
    ns.SH_EQUALS: EQUALS,
    ns.SH_DISJOINT: DISJOINT,
    ns.SH_LESS_THAN: LESS_THAN,
    ns.SH_LESS_THAN_OR_EQUALS: LESS_THAN_OR_EQUALS,
    ns.SH_QUALIFIED_VALUE_SHAPE: QUALIFIED,
    ns.SH_CLOSED: CLOSED,
}

_REF_OBJECT_PARAMS = (ns.SH_NOT, ns.SH_NODE, ns.SH_PROPERTY, ns.SH_QUALIFIED_VALUE_SHAPE)
_REF_LIST_PARAMS = (ns.SH_AND, ns.SH_OR, ns.SH_XONE)


class _GraphIndex:
    def __init__(self, graph: TripleGraph):
        self.by_subject: dict[Term, list[Triple]] = {}
        self.graph = graph
        for t in graph.sorted_triples():
            self.by_subject.setdefault(t.subject, []).append(t)

    def objects(self, subject: Term, predicate: str) -> list[Term]:
        pred = iri(predicate)
        return [t.object for t in self.by_subject.get(subject, []) if t.predicate == pred]

    def one(self, subject: Term, predicate: str) -> Optional[Term]:
        values = self.objects(subject, predicate)
        return values[0] if values else None

    def collection(self, head: Term) -> list[Term]:
        out = []
        seen = set()
        node = head
        while node != iri(ns.RDF_NIL):
            if node in seen:
                raise ShaclModelError("cyclic RDF collection")
            seen.add(node)
            first = self.one(node, ns.RDF_FIRST)
            if first is None:
                raise ShaclModelError(f"malformed RDF collection at {node}")
            out.append(first)
            node = self.one(node, ns.RDF_REST) or iri(ns.RDF_NIL)
        return out


def _parse_path(index: _GraphIndex, node: Term) -> ShaclPath:
    if node.is_iri and node.lexical != ns.RDF_NIL and index.one(node, ns.RDF_FIRST) is None:
        return PredicatePath(node)
    if index.one(node, ns.RDF_FIRST) is not None:
        parts = [_parse_path(index, p) for p in index.collection(node)]
        if len(parts) == 1:
            return parts[0]
        return SequencePath(tuple(parts))
    for pred, ctor in (
        (ns.SH_INVERSE_PATH, InversePath),
        (ns.SH_ZERO_OR_MORE_PATH, ZeroOrMorePath),
        (ns.SH_ONE_OR_MORE_PATH, OneOrMorePath),
        (ns.SH_ZERO_OR_ONE_PATH, ZeroOrOnePath),
    ):
        inner = index.one(node, pred)
        if inner is not None:
            return ctor(_parse_path(index, inner))
    alt = index.one(node, ns.SH_ALTERNATIVE_PATH)
    if alt is not None:
        parts = [_parse_path(index, p) for p in index.collection(alt)]
        if len(parts) == 1:
            return parts[0]
        return AlternativePath(tuple(parts))
    raise ShaclModelError(f"cannot interpret property path node {node}")


def _as_int(term: Term, what: str) -> int:
    try:
        return int(term.lexical)
    except (TypeError, ValueError):
        raise ShaclModelError(f"{what} expects an integer, got {term}")


def _is_true(term: Term) -> bool:
    return term.is_literal and term.lexical in ("true", "1")


def extract_document(graph: TripleGraph) -> ShaclDocument:
    """Read every shape definition out of an RDF graph.

    Unknown parameters are ignored; referenced but undefined shapes become
    empty shape definitions.
    """
    index = _GraphIndex(graph)
    candidates: set[Term] = set()
    referenced: set[Term] = set()

    shape_types = {iri(ns.SH_NODE_SHAPE), iri(ns.SH_PROPERTY_SHAPE)}
    detect_params = {iri(p) for p in _TARGET_PARAMS} | {iri(p) for p in _CONSTRAINT_PARAMS} | {
        iri(ns.SH_PATH)
    }
    for t in graph.triples:
        if t.predicate == iri(ns.RDF_TYPE) and t.object in shape_types:
            candidates.add(t.subject)
        if t.predicate in detect_params:
            candidates.add(t.subject)
        if t.predicate.lexical in _REF_OBJECT_PARAMS:
            referenced.add(t.object)
        if t.predicate.lexical in _REF_LIST_PARAMS:
            referenced |= set(index.collection(t.object))

    candidates |= referenced

    shapes = []
    for name in sorted(candidates, key=Term.sort_key):
        shapes.append(_extract_shape(index, name))
    return ShaclDocument(tuple(shapes))


def _extract_shape(index: _GraphIndex, name: Term) -> Shape:
    path_values = index.objects(name, ns.SH_PATH)
    if len(path_values) > 1:
        raise ShaclModelError(f"shape {name} has {len(path_values)} sh:path values")
    declared_property = iri(ns.SH_PROPERTY_SHAPE) in index.objects(name, ns.RDF_TYPE)
    if declared_property and not path_values:
        raise ShaclModelError(f"property shape {name} has no sh:path value")
    path = _parse_path(index, path_values[0]) if path_values else None

    targets: list[Target] = []
    for node in index.objects(name, ns.SH_TARGET_NODE):
        targets.append(NodeTarget(node))
    for node in index.objects(name, ns.SH_TARGET_CLASS):
        targets.append(ClassTarget(node))
    for node in index.objects(name, ns.SH_TARGET_SUBJECTS_OF):
        targets.append(SubjectsOfTarget(node))
    for node in index.objects(name, ns.SH_TARGET_OBJECTS_OF):
        targets.append(ObjectsOfTarget(node))
    targets.sort(key=_target_key)

    qualified_min = index.one(name, ns.SH_QUALIFIED_MIN_COUNT)
    qualified_max = index.one(name, ns.SH_QUALIFIED_MAX_COUNT)
    qualified_disjoint = index.one(name, ns.SH_QUALIFIED_DISJOINT)
    ignored = index.one(name, ns.SH_IGNORED_PROPERTIES)

    constraints: list[Constraint] = []
    for t in index.by_subject.get(name, []):
        kind = _CONSTRAINT_PARAMS.get(t.predicate.lexical)
        if kind is None:
            continue
        obj = t.object
        if kind in (HAS_VALUE, CLASS, MIN_EXCLUSIVE, MIN_INCLUSIVE, MAX_EXCLUSIVE, MAX_INCLUSIVE):
            constraints.append(Constraint(kind, (obj,)))
        elif kind in (DATATYPE, NODE_KIND, EQUALS, DISJOINT, LESS_THAN, LESS_THAN_OR_EQUALS):
            constraints.append(Constraint(kind, (obj,)))
        elif kind == IN:
            constraints.append(Constraint(IN, tuple(index.collection(obj))))
        elif kind == LANGUAGE_IN:
            tags = tuple(v.lexical for v in index.collection(obj))
            constraints.append(Constraint(LANGUAGE_IN, tags))
        elif kind in (MIN_LENGTH, MAX_LENGTH, MIN_COUNT, MAX_COUNT):
            constraints.append(Constraint(kind, (_as_int(obj, kind),)))
        elif kind == PATTERN:
            constraints.append(Constraint(PATTERN, (obj.lexical,)))
        elif kind == UNIQUE_LANG:
            if _is_true(obj):
                constraints.append(Constraint(UNIQUE_LANG))
        elif kind in (NOT, NODE, PROPERTY):
            constraints.append(Constraint(kind, (obj,)))
        elif kind in (AND, OR, XONE):
            constraints.append(Constraint(kind, tuple(index.collection(obj))))
        elif kind == QUALIFIED:
            siblings: tuple[Term, ...] = ()
            if qualified_disjoint is not None and _is_true(qualified_disjoint):
                siblings = _sibling_shapes(index, name, obj)
            constraints.append(
                Constraint(
                    QUALIFIED,
                    (
                        obj,
                        _as_int(qualified_min, "qualifiedMinCount") if qualified_min else None,
                        _as_int(qualified_max, "qualifiedMaxCount") if qualified_max else None,
                        siblings,
                    ),
                )
            )
        elif kind == CLOSED:
            if _is_true(obj):
                ignored_list = tuple(index.collection(ignored)) if ignored is not None else ()
                constraints.append(Constraint(CLOSED, ignored_list))
    return Shape(
        name=name,
        is_property_shape=path is not None,
        path=path,
        targets=tuple(targets),
        constraints=tuple(constraints),
    )


def _sibling_shapes(index: _GraphIndex, shape_name: Term, qvs: Term) -> tuple[Term, ...]:
    """Qualified value shapes declared by sibling property shapes."""
    siblings: set[Term] = set()
    prop = iri(ns.SH_PROPERTY)
    qvs_pred = iri(ns.SH_QUALIFIED_VALUE_SHAPE)
    parents = [
        t.subject for t in index.graph.triples if t.predicate == prop and t.object == shape_name
    ]
    for parent in parents:
        for other in index.objects(parent, ns.SH_PROPERTY):
            if other == shape_name:
                continue
            for t in index.by_subject.get(other, []):
                if t.predicate == qvs_pred and t.object != qvs:
                    siblings.add(t.object)
    return tuple(sorted(siblings, key=Term.sort_key))


def parse_document(text: str) -> ShaclDocument:
    return extract_document(parse_turtle(text))


# --------------------------------------------------------------------------
# Serialization back to RDF
# --------------------------------------------------------------------------


class _DocWriter:
    def __init__(self) -> None:
        self.triples: set[Triple] = set()
        self.counter = 0

    def add(self, s: Term, p: str, o: Term) -> None:
        self.triples.add(Triple(s, iri(p), o))

    def fresh(self) -> Term:
        from .terms import blank

        self.counter += 1
        return blank(f"w{self.counter}")

    def collection(self, items: list[Term]) -> Term:
        head = iri(ns.RDF_NIL)
        for item in reversed(items):
            cell = self.fresh()
            self.add(cell, ns.RDF_FIRST, item)
            self.add(cell, ns.RDF_REST, head)
            head = cell
        return head

    def path(self, p: ShaclPath) -> Term:
        if isinstance(p, PredicatePath):
            return p.predicate
        node = self.fresh()
        if isinstance(p, InversePath):
            self.add(node, ns.SH_INVERSE_PATH, self.path(p.inner))
        elif isinstance(p, SequencePath):
            return self.collection([self.path(part) for part in p.parts])
        elif isinstance(p, AlternativePath):
            self.add(node, ns.SH_ALTERNATIVE_PATH, self.collection([self.path(x) for x in p.parts]))
        elif isinstance(p, ZeroOrMorePath):
            self.add(node, ns.SH_ZERO_OR_MORE_PATH, self.path(p.inner))
        elif isinstance(p, OneOrMorePath):
            self.add(node, ns.SH_ONE_OR_MORE_PATH, self.path(p.inner))
        elif isinstance(p, ZeroOrOnePath):
            self.add(node, ns.SH_ZERO_OR_ONE_PATH, self.path(p.inner))
        else:  # pragma: no cover
            raise TypeError(f"unknown path {p!r}")
        return node


_CONSTRAINT_PREDICATES = {kind: pred for pred, kind in _CONSTRAINT_PARAMS.items()}


def document_to_graph(doc: ShaclDocument) -> TripleGraph:
    """Write the shape definitions back out as RDF triples."""
    from .terms import boolean, integer

    w = _DocWriter()
    for shape in doc.shapes:
        kind = ns.SH_PROPERTY_SHAPE if shape.is_property_shape else ns.SH_NODE_SHAPE
        w.add(shape.name, ns.RDF_TYPE, iri(kind))
        if shape.path is not None:
            w.add(shape.name, ns.SH_PATH, w.path(shape.path))
        for target in shape.targets:
            if isinstance(target, NodeTarget):
                w.add(shape.name, ns.SH_TARGET_NODE, target.node)
            elif isinstance(target, ClassTarget):
                w.add(shape.name, ns.SH_TARGET_CLASS, target.cls)
            elif isinstance(target, SubjectsOfTarget):
                w.add(shape.name, ns.SH_TARGET_SUBJECTS_OF, target.relation)
            else:
                w.add(shape.name, ns.SH_TARGET_OBJECTS_OF, target.relation)
        for c in shape.constraints:
            pred = _CONSTRAINT_PREDICATES[c.kind]
            if c.kind in (MIN_LENGTH, MAX_LENGTH, MIN_COUNT, MAX_COUNT):
                w.add(shape.name, pred, integer(c.args[0]))
            elif c.kind == PATTERN:
                from .terms import string

                w.add(shape.name, pred, string(c.args[0]))
            elif c.kind == UNIQUE_LANG:
                w.add(shape.name, pred, boolean(True))
            elif c.kind == IN:
                w.add(shape.name, pred, w.collection(list(c.args)))
            elif c.kind == LANGUAGE_IN:
                from .terms import string

                w.add(shape.name, pred, w.collection([string(t) for t in c.args]))
            elif c.kind in (AND, OR, XONE):
                w.add(shape.name, pred, w.collection(list(c.args)))
            elif c.kind == QUALIFIED:
                ref, lo, hi, siblings = c.args
                w.add(shape.name, pred, ref)
                if lo is not None:
                    w.add(shape.name, ns.SH_QUALIFIED_MIN_COUNT, integer(lo))
                if hi is not None:
                    w.add(shape.name, ns.SH_QUALIFIED_MAX_COUNT, integer(hi))
                if siblings:
                    w.add(shape.name, ns.SH_QUALIFIED_DISJOINT, boolean(True))
            elif c.kind == CLOSED:
                w.add(shape.name, pred, boolean(True))
                if c.args:
                    w.add(shape.name, ns.SH_IGNORED_PROPERTIES, w.collection(list(c.args)))
            else:
                w.add(shape.name, pred, c.args[0])
    return TripleGraph(frozenset(w.triples))


# --------------------------------------------------------------------------
# Target splitting
# --------------------------------------------------------------------------


def _fresh_name(base: Term, index: int, taken: set[Term]) -> Term:
    candidate = Term(base.kind, f"{base.lexical}--t{index}")
    bump = 0
    while candidate in taken:
        bump += 1
        candidate = Term(base.kind, f"{base.lexical}--t{index}-{bump}")
    return candidate


def split_targets_with_origin(
    doc: ShaclDocument,
) -> tuple[ShaclDocument, dict[Term, Term]]:
    """split_targets plus the map from copy names back to original names."""
    referenced = referenced_shape_names(doc.shapes)
    taken = {s.name for s in doc.shapes}
    origin: dict[Term, Term] = {}
    out: list[Shape] = []

    def emit(shape: Shape, original: Term) -> None:
        origin[shape.name] = original
        out.append(shape)

    for shape in doc.shapes:
        if shape.name in referenced:
            if shape.targets:
                emit(replace(shape, targets=()), shape.name)
                for i, target in enumerate(shape.targets):
                    name = _fresh_name(shape.name, i, taken)
                    taken.add(name)
                    emit(replace(shape, name=name, targets=(target,)), shape.name)
            else:
                emit(shape, shape.name)
        else:
            if len(shape.targets) <= 1:
                emit(shape, shape.name)
            else:
                emit(replace(shape, targets=(shape.targets[0],)), shape.name)
                for i, target in enumerate(shape.targets[1:], start=1):
                    name = _fresh_name(shape.name, i, taken)
                    taken.add(name)
                    emit(replace(shape, name=name, targets=(target,)), shape.name)
    return ShaclDocument(tuple(out), doc.vocabulary_context), origin


def split_targets(doc: ShaclDocument) -> ShaclDocument:
    """Copy shapes so that each carries at most one target declaration and
    every referenced shape carries none.  Validation semantics preserved."""
    return split_targets_with_origin(doc)[0]
