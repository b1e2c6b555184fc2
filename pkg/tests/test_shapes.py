import pytest

from corpus import corpus_documents, doc_ttl, graphs_for
from shaclsat.direct_validation import validate_direct
from shaclsat.shapes import (
    AlternativePath,
    ClassTarget,
    Constraint,
    InversePath,
    PredicatePath,
    RecursiveShapeError,
    SequencePath,
    Shape,
    ShaclDocument,
    ShaclModelError,
    parse_document,
    split_targets,
)
from shaclsat.terms import iri
from shaclsat.turtle import parse_turtle

EX = "http://corpus.example/"


def test_fig1_document_extraction():
    doc = parse_document(
        doc_ttl(
            ":studentShape a sh:NodeShape ; sh:targetClass :Student ; sh:not :disjFacultyShape .\n"
            ":disjFacultyShape a sh:PropertyShape ; sh:path (:hasSupervisor :hasFaculty) ; "
            "sh:disjoint :hasFaculty ."
        )
    )
    assert len(doc.shapes) == 2
    student = doc.shape(iri(EX + "studentShape"))
    assert not student.is_property_shape
    assert student.targets == (ClassTarget(iri(EX + "Student")),)
    assert student.constraints == (Constraint("not_", (iri(EX + "disjFacultyShape"),)),)
    disj = doc.shape(iri(EX + "disjFacultyShape"))
    assert disj.is_property_shape
    assert disj.path == SequencePath(
        (PredicatePath(iri(EX + "hasSupervisor")), PredicatePath(iri(EX + "hasFaculty")))
    )
    assert disj.constraints == (Constraint("disjoint", (iri(EX + "hasFaculty"),)),)


def test_empty_graph_extracts_empty_document():
    assert parse_document(doc_ttl("")).shapes == ()


def test_undefined_reference_materializes_empty_shape():
    doc = parse_document(doc_ttl(":s a sh:NodeShape ; sh:targetClass :P ; sh:not :ghost ."))
    ghost = doc.shape(iri(EX + "ghost"))
    assert ghost.constraints == () and ghost.targets == ()


def test_multiple_paths_rejected():
    with pytest.raises(ShaclModelError):
        parse_document(doc_ttl(":s a sh:PropertyShape ; sh:path :r ; sh:path :q ."))


def test_declared_property_shape_without_path_rejected():
    with pytest.raises(ShaclModelError):
        parse_document(doc_ttl(":s a sh:PropertyShape ; sh:minCount 1 ."))


def test_recursive_reference_rejected():
    with pytest.raises(RecursiveShapeError):
        parse_document(doc_ttl(":s a sh:NodeShape ; sh:not :s ."))
    with pytest.raises(RecursiveShapeError):
        parse_document(
            doc_ttl(":s a sh:NodeShape ; sh:not :t .\n:t a sh:NodeShape ; sh:node :s .")
        )


def test_inverse_path_pushdown_preserved_in_ast():
    doc = parse_document(
        doc_ttl(
            ":s a sh:PropertyShape ; sh:targetClass :P ; "
            "sh:path [ sh:inversePath [ sh:alternativePath (:r :q) ] ] ; sh:minCount 1 ."
        )
    )
    shape = doc.shape(iri(EX + "s"))
    assert isinstance(shape.path, InversePath)
    assert isinstance(shape.path.inner, AlternativePath)


def test_qualified_constraint_carries_counts_and_siblings():
    doc = parse_document(
        doc_ttl(
            ":parent a sh:NodeShape ; sh:property :s ; sh:property :s2 .\n"
            ":s a sh:PropertyShape ; sh:path :r ; sh:qualifiedValueShape :t ; "
            "sh:qualifiedMinCount 1 ; sh:qualifiedMaxCount 2 ; "
            "sh:qualifiedValueShapesDisjoint true .\n"
            ":s2 a sh:PropertyShape ; sh:path :r ; sh:qualifiedValueShape :u .\n"
            ":t a sh:NodeShape .\n:u a sh:NodeShape ."
        )
    )
    shape = doc.shape(iri(EX + "s"))
    (qualified,) = [c for c in shape.constraints if c.kind == "qualified"]
    ref, lo, hi, siblings = qualified.args
    assert (ref, lo, hi) == (iri(EX + "t"), 1, 2)
    assert siblings == (iri(EX + "u"),)


def test_split_multi_target_shape():
    doc = parse_document(
        doc_ttl(":s a sh:NodeShape ; sh:targetClass :A ; sh:targetNode :n ; sh:nodeKind sh:IRI .")
    )
    out = split_targets(doc)
    assert len(out.shapes) == 2
    assert sorted(len(s.targets) for s in out.shapes) == [1, 1]
    names = {s.name for s in out.shapes}
    assert iri(EX + "s") in names


def test_split_referenced_shape_gets_target_free_copy():
    doc = parse_document(
        doc_ttl(
            ":s a sh:NodeShape ; sh:targetClass :A ; sh:node :t .\n"
            ":t a sh:NodeShape ; sh:targetNode :n ; sh:targetClass :B ; sh:nodeKind sh:IRI ."
        )
    )
    out = split_targets(doc)
    t = out.shape(iri(EX + "t"))
    assert t.targets == ()  # referenced copy keeps the name, loses targets
    copies = [s for s in out.shapes if s.name != s.name or s.name.lexical.startswith(EX + "t--")]
    assert len([s for s in out.shapes if s.name.lexical.startswith(EX + "t--")]) == 2


def test_split_is_idempotent():
    for _, text in corpus_documents():
        doc = parse_document(text)
        once = split_targets(doc)
        assert split_targets(once) == once


def test_split_preserves_validation_semantics():
    docs = [parse_document(text) for _, text in corpus_documents()]
    graphs = graphs_for(seed=11, count=50)
    for doc in docs:
        split = split_targets(doc)
        for graph in graphs:
            assert validate_direct(graph, doc).conforms == validate_direct(graph, split).conforms


def test_duplicate_shape_names_rejected():
    shape = Shape(name=iri(EX + "s"))
    with pytest.raises(ShaclModelError):
        ShaclDocument((shape, shape))


def test_document_serialization_round_trip_identity():
    from shaclsat.shapes import document_to_graph, extract_document
    from shaclsat.turtle import parse_turtle, serialize_turtle

    for name, text in corpus_documents():
        doc = parse_document(text)
        assert extract_document(document_to_graph(doc)) == doc, name
        # and through an actual text round trip
        reread = extract_document(parse_turtle(serialize_turtle(document_to_graph(doc))))
        assert len(reread.shapes) == len(doc.shapes)
