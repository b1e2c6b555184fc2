import pytest

from corpus import corpus_documents, doc_ttl, graphs_for
from shaclsat import namespaces as ns
from shaclsat.direct_validation import validate_direct
from shaclsat.scl import (
    And,
    AtConst,
    CountExists,
    Disjoint,
    EqConst,
    Equals,
    Filter,
    ForClass,
    HasShape,
    IsIri,
    MinValue,
    Not,
    OrderCmp,
    Rel,
    Seq,
    ShapeDef,
    Star,
    Top,
    TopSentence,
    ast_size,
    check_well_formed,
    disj,
    features_of,
)
from shaclsat.scl_text import print_scl
from shaclsat.shapes import (
    Constraint,
    InversePath,
    OneOrMorePath,
    PredicatePath,
    SequencePath,
    parse_document,
)
from shaclsat.terms import integer, iri
from shaclsat.translate import (
    NotShaclExpressible,
    back_translate,
    extract_definitions,
    translate,
    translate_node_constraint,
    translate_path,
    translate_property_constraint,
)

EX = "http://corpus.example/"
R = iri(EX + "r")
Q = iri(EX + "q")


def test_fig1_translates_to_fig2():
    doc = parse_document(
        doc_ttl(
            ":studentShape a sh:NodeShape ; sh:targetClass :Student ; sh:not :disjFacultyShape .\n"
            ":disjFacultyShape a sh:PropertyShape ; sh:path (:hasSupervisor :hasFaculty) ; "
            "sh:disjoint :hasFaculty ."
        )
    )
    from shaclsat.scl import SAnd

    expected = SAnd(
        ForClass(iri(EX + "Student"), Not(HasShape(iri(EX + "disjFacultyShape")))),
        ShapeDef(
            iri(EX + "disjFacultyShape"),
            Disjoint(Seq(Rel(iri(EX + "hasSupervisor")), Rel(iri(EX + "hasFaculty"))),
                     iri(EX + "hasFaculty")),
        ),
    )
    assert translate(doc) == expected


def test_empty_document_translates_to_top():
    assert translate(parse_document(doc_ttl(""))) == TopSentence()


def test_node_target_with_has_value():
    doc = parse_document(doc_ttl(":s a sh:NodeShape ; sh:targetNode :n ; sh:hasValue :n ."))
    assert translate(doc) == AtConst(iri(EX + "n"), EqConst(iri(EX + "n")))


def test_tau1_cases():
    assert translate_node_constraint(Constraint("node_kind", (iri(ns.SH_NK_IRI),))) == Filter(IsIri())
    xone = translate_node_constraint(
        Constraint("xone", (iri(EX + "s1"), iri(EX + "s2")))
    )
    s1, s2 = HasShape(iri(EX + "s1")), HasShape(iri(EX + "s2"))
    assert xone == disj([And(s1, Not(s2)), And(s2, Not(s1))])
    assert translate_node_constraint(Constraint("unknown_thing", ())) == Top()
    assert translate_node_constraint(Constraint("min_exclusive", (integer(0),))) == Filter(
        MinValue(integer(0), strict=True)
    )


def test_tau2_cases():
    from shaclsat.shapes import ShaclDocument

    doc = ShaclDocument()
    path = PredicatePath(R)
    assert translate_property_constraint(
        Constraint("min_count", (2,)), path, doc
    ) == CountExists(2, Rel(R), Top())
    assert translate_property_constraint(
        Constraint("max_count", (1,)), path, doc
    ) == Not(CountExists(2, Rel(R), Top()))
    seq = SequencePath((PredicatePath(iri(EX + "P")), PredicatePath(Q)))
    assert translate_property_constraint(
        Constraint("disjoint", (R,)), seq, doc
    ) == Disjoint(Seq(Rel(iri(EX + "P")), Rel(Q)), R)
    assert translate_property_constraint(
        Constraint("equals", (R,)), path, doc
    ) == Equals(Rel(R), R)
    assert translate_property_constraint(
        Constraint("less_than", (Q,)), path, doc
    ) == OrderCmp(Rel(R), Q, strict=True, inverted=False)
    # the universal lift for value-type components
    lifted = translate_property_constraint(Constraint("node_kind", (iri(ns.SH_NK_IRI),)), path, doc)
    assert lifted == Not(CountExists(1, Rel(R), Not(Filter(IsIri()))))


def test_tau2_closed_case():
    doc = parse_document(
        doc_ttl(
            ":s a sh:PropertyShape ; sh:targetClass :P ; sh:path :probe ; sh:closed true ; "
            "sh:ignoredProperties (:q) .\n"
            ":other a sh:PropertyShape ; sh:targetClass :Z9 ; sh:path :r ; sh:minCount 1 ."
        )
    )
    shape = doc.shape(iri(EX + "s"))
    body = translate_property_constraint(shape.constraints[0], shape.path, doc, shape)
    text = print_scl(body)
    # theta = {rdf:type, probe, r} minus ignored {q}; nothing declared
    assert text.count("(not (count>= 1") == 3
    assert "corpus.example/q" not in text


def test_tau3_cases():
    assert translate_path(PredicatePath(R)) == Rel(R)
    assert translate_path(InversePath(PredicatePath(R))) == Rel(R, inverted=True)
    seq = InversePath(SequencePath((PredicatePath(iri(EX + "r1")), PredicatePath(iri(EX + "r2")))))
    assert translate_path(seq) == Seq(Rel(iri(EX + "r2"), True), Rel(iri(EX + "r1"), True))
    assert translate_path(OneOrMorePath(PredicatePath(R))) == Seq(Rel(R), Star(Rel(R)))
    assert translate_path(InversePath(InversePath(PredicatePath(R)))) == Rel(R)


def test_translation_is_well_formed_on_corpus():
    for _, text in corpus_documents():
        sentence = translate(parse_document(text))
        assert check_well_formed(sentence) == []


def test_features_licensed_by_components():
    # no closure flag without a repeated path in the document
    for name, text in corpus_documents():
        sentence = translate(parse_document(text))
        flags = features_of(sentence)
        if "T" in flags:
            assert "zero_or_more" in text or "one_or_more" in text or "OrMorePath" in text


def test_size_bound_is_quadratic():
    sizes = []
    for n in (2, 4, 8, 16):
        shapes = []
        for i in range(n):
            shapes.append(f":s{i} a sh:NodeShape ; sh:targetClass :P ; sh:xone ({' '.join(':t%d' % j for j in range(n))}) .")
        for j in range(n):
            shapes.append(f":t{j} a sh:NodeShape ; sh:nodeKind sh:IRI .")
        doc = parse_document(doc_ttl("\n".join(shapes)))
        triples = n * 3 + n * 2  # rough triple count of the source
        sizes.append((triples, ast_size(translate(doc))))
    for triples, size in sizes:
        assert size <= 6 * triples * triples


def test_extract_definitions():
    doc = parse_document(
        doc_ttl(
            ":a a sh:NodeShape ; sh:targetClass :P ; sh:not :d1 .\n"
            ":d1 a sh:NodeShape ; sh:not :d2 .\n"
            ":d2 a sh:NodeShape ; sh:nodeKind sh:IRI .\n"
            ":d3 a sh:NodeShape ; sh:nodeKind sh:Literal ."
        )
    )
    sentence = translate(doc)
    from shaclsat.scl import conjuncts

    defs = list(conjuncts(extract_definitions(sentence)))
    assert all(isinstance(d, ShapeDef) for d in defs)
    assert [d.name for d in defs] == [
        part.name for part in conjuncts(sentence) if isinstance(part, ShapeDef)
    ]
    assert extract_definitions(TopSentence()) == TopSentence()


def test_back_translate_top_is_single_empty_shape():
    doc = back_translate(TopSentence())
    assert len(doc.shapes) == 1
    assert doc.shapes[0].constraints == ()


def test_back_translate_rejects_inverted_order():
    sentence = AtConst(iri(EX + "n"), OrderCmp(Rel(R), Q, strict=True, inverted=True))
    with pytest.raises(NotShaclExpressible):
        back_translate(sentence)


def test_round_trip_equivalidity_fig1():
    doc = parse_document(
        doc_ttl(
            ":studentShape a sh:NodeShape ; sh:targetClass :Student ; sh:not :disjFacultyShape .\n"
            ":disjFacultyShape a sh:PropertyShape ; sh:path (:hasSupervisor :hasFaculty) ; "
            "sh:disjoint :hasFaculty ."
        )
    )
    back = back_translate(translate(doc))
    for graph in graphs_for(seed=23, count=50):
        assert validate_direct(graph, doc).conforms == validate_direct(graph, back).conforms
