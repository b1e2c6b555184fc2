import random

import pytest

from corpus import random_formula
from shaclsat.scl import (
    Alt,
    And,
    AtConst,
    CountExists,
    Disjoint,
    EqConst,
    Equals,
    ForClass,
    ForSubjectsOf,
    HasShape,
    MissingDefinition,
    Not,
    Opt,
    OrderCmp,
    RecursiveDefinition,
    Rel,
    SAnd,
    Seq,
    ShapeDef,
    Star,
    Top,
    TopSentence,
    ast_size,
    check_well_formed,
    conjuncts,
    disj,
    exists,
    features_of,
    sentence_conj,
)
from shaclsat.terms import iri

R = iri("http://e/R")
Q = iri("http://e/Q")
S1 = iri("http://e/s1")
C = iri("http://e/c")


def test_every_grammar_production_is_representable():
    # paths: atom (+inverse), sequence, zero-or-one, alternative, closure
    path = Seq(Opt(Alt(Rel(R), Rel(Q, inverted=True))), Star(Rel(R)))
    # formulas: top, equality, filter, shape reference, negation, conjunction,
    # plain and counting quantification, disjointness, equality, both orders
    from shaclsat.scl import Filter, IsIri

    formula = And(
        Top(),
        And(
            EqConst(C),
            And(
                Filter(IsIri()),
                And(
                    Not(HasShape(S1)),
                    And(
                        exists(path, Top()),
                        And(
                            CountExists(2, Rel(R), Top()),
                            And(
                                Disjoint(Rel(R), Q),
                                And(
                                    Equals(Rel(R), Q),
                                    And(
                                        OrderCmp(Rel(R), Q, strict=True, inverted=False),
                                        OrderCmp(Rel(R), Q, strict=False, inverted=True),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
    # sentences: empty, targeted forms, conjunction, shape definition
    sentence = sentence_conj(
        [
            TopSentence(),
            AtConst(C, formula),
            ForClass(C, Top()),
            ForSubjectsOf(R, False, Top()),
            ForSubjectsOf(R, True, Top()),
            ShapeDef(S1, Top()),
        ]
    )
    assert features_of(sentence) == frozenset("SZATDEOC") | {"O"}


def test_counting_threshold_must_be_positive():
    with pytest.raises(ValueError):
        CountExists(0, Rel(R), Top())


def test_features_of_examples():
    fig2 = SAnd(
        ForClass(C, Not(HasShape(S1))),
        ShapeDef(S1, Disjoint(Seq(Rel(R), Rel(Q)), Q)),
    )
    assert features_of(fig2) == frozenset({"S", "D"})
    assert features_of(TopSentence()) == frozenset()
    counting = AtConst(C, And(exists(Rel(R), Top()), Not(CountExists(2, Rel(R), Top()))))
    assert features_of(counting) == frozenset({"C"})


def test_oprime_promotes_to_o_with_any_inversion():
    fwd = AtConst(C, OrderCmp(Rel(R), Q, strict=False, inverted=False))
    assert features_of(fwd) == frozenset({"Oprime"})
    both = AtConst(C, And(
        OrderCmp(Rel(R), Q, strict=False, inverted=False),
        OrderCmp(Rel(R), Q, strict=False, inverted=True),
    ))
    assert features_of(both) == frozenset({"O"})


def test_features_monotone_under_subtree_insertion():
    # monotone up to the one designed promotion: an inserted inverted order
    # atom upgrades Oprime to O
    rng = random.Random(42)
    for _ in range(200):
        inner = random_formula(rng, 2)
        outer = features_of(AtConst(C, And(inner, random_formula(rng, 2))))
        for flag in features_of(inner):
            assert flag in outer or (flag == "Oprime" and "O" in outer)


def test_well_formed_fig2():
    fig2 = SAnd(
        ForClass(C, Not(HasShape(S1))),
        ShapeDef(S1, Disjoint(Seq(Rel(R), Rel(Q)), Q)),
    )
    assert check_well_formed(fig2) == []


def test_missing_definition_detected():
    sentence = AtConst(C, HasShape(S1))
    assert check_well_formed(sentence) == [MissingDefinition(S1)]


def test_recursive_definition_detected():
    sentence = ShapeDef(S1, HasShape(S1))
    assert check_well_formed(sentence) == [RecursiveDefinition(S1)]
    s2 = iri("http://e/s2")
    mutual = sentence_conj([ShapeDef(S1, HasShape(s2)), ShapeDef(s2, HasShape(S1))])
    defects = check_well_formed(mutual)
    assert any(isinstance(d, RecursiveDefinition) for d in defects)


def test_sentence_conj_flattens_and_drops_top():
    parts = [AtConst(C, Top()), TopSentence(), ForClass(C, Top())]
    folded = sentence_conj(parts)
    assert list(conjuncts(folded)) == [parts[0], parts[2]]
    assert sentence_conj([]) == TopSentence()


def test_disj_of_empty_is_false():
    assert disj([]) == Not(Top())


def test_ast_size_counts_nodes():
    assert ast_size(Top()) == 1
    assert ast_size(And(Top(), Top())) == 3
    assert ast_size(exists(Seq(Rel(R), Rel(Q)), Top())) == 5
