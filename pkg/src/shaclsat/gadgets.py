"""Generator sentences with no finite models, and tiling reductions.

The infinity gadgets pin down the finite-model-property failures of the
counting, transitive-closure and order features; the domino gadgets embed
an N x N tiling system so that the sentence is satisfiable exactly when
the system tiles the quadrant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import namespaces as ns
from .scl import (
    And,
    AtConst,
    CountExists,
    Disjoint,
    EqConst,
    Equals,
    ForClass,
    Not,
    Opt,
    OrderCmp,
    Alt,
    Rel,
    SclFormula,
    SclSentence,
    Seq,
    Star,
    Top,
    conj,
    disj,
    exists,
    forall_path,
    sentence_conj,
)
from .terms import Term, iri

_G = ns.GEN_NS + "gadget:"

ZERO = iri(_G + "zero")
MARK = iri(_G + "cls")
NEXT = iri(_G + "R")
FUN_F = iri(_G + "F")
FUN_G = iri(_G + "G")
HOR = iri(_G + "H")
VER = iri(_G + "V")
DIAG = iri(_G + "D")
DIAG0 = iri(_G + "D0")
DIAG1 = iri(_G + "D1")
CLOSURE0 = iri(_G + "C0")
CLOSURE1 = iri(_G + "C1")

INFINITY_KINDS = ("C", "STD", "O", "EOprime")
DOMINO_VARIANTS = ("SO", "SAC", "SEC", "SEOprime", "SZAE")


def _is_a(cls: Term) -> SclFormula:
    return exists(Rel(iri(ns.RDF_TYPE)), EqConst(cls))


def gadget_infinity(kind: str) -> SclSentence:
    """A sentence of the named fragment that is satisfiable only on
    infinite domains."""
    if kind == "C":
        step = And(
            And(
                CountExists(1, Rel(NEXT), _is_a(MARK)),
                Not(CountExists(2, Rel(NEXT), _is_a(MARK))),
            ),
            Not(CountExists(2, Rel(NEXT, inverted=True), Top())),
        )
        return sentence_conj(
            [
                AtConst(ZERO, _is_a(MARK)),
                AtConst(ZERO, Not(exists(Rel(NEXT, inverted=True), Top()))),
                ForClass(MARK, step),
            ]
        )
    if kind == "STD":
        backward = Seq(Rel(NEXT, inverted=True), Star(Rel(NEXT, inverted=True)))
        acyclic_step = And(Disjoint(backward, NEXT), exists(Rel(NEXT), _is_a(MARK)))
        return sentence_conj([AtConst(ZERO, _is_a(MARK)), ForClass(MARK, acyclic_step)])
    if kind in ("O", "EOprime"):
        parts: list[SclFormula] = [
            exists(Rel(FUN_F), _is_a(MARK)),
            OrderCmp(Rel(FUN_F), FUN_F, strict=False, inverted=False),
            OrderCmp(Rel(FUN_G), FUN_G, strict=False, inverted=False),
        ]
        if kind == "O":
            # G must be populated for its functionality to pin down the
            # F-predecessor; without this conjunct an F-cycle with an empty
            # G interpretation would be a finite model.
            parts.insert(1, exists(Rel(FUN_G), Top()))
            parts.append(OrderCmp(Rel(FUN_F, inverted=True), FUN_G, strict=False, inverted=False))
            parts.append(OrderCmp(Rel(FUN_F, inverted=True), FUN_G, strict=False, inverted=True))
        else:
            parts.append(Equals(Rel(FUN_F, inverted=True), FUN_G))
        return sentence_conj(
            [
                AtConst(ZERO, _is_a(MARK)),
                AtConst(ZERO, Not(exists(Rel(FUN_F, inverted=True), Top()))),
                ForClass(MARK, conj(parts)),
            ]
        )
    raise ValueError(f"unknown infinity gadget kind {kind!r}")


# --------------------------------------------------------------------------
# Tiling systems
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TilingSystem:
    tiles: tuple[str, ...]
    horizontal: frozenset[tuple[str, str]]
    vertical: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        if not self.tiles:
            raise ValueError("a tiling system needs at least one tile")
        universe = set(self.tiles)
        for a, b in list(self.horizontal) + list(self.vertical):
            if a not in universe or b not in universe:
                raise ValueError(f"matching pair ({a}, {b}) uses unknown tiles")

    @classmethod
    def from_json(cls, text: str) -> "TilingSystem":
        data = json.loads(text)
        return cls(
            tiles=tuple(data["tiles"]),
            horizontal=frozenset((a, b) for a, b in data.get("horizontal", [])),
            vertical=frozenset((a, b) for a, b in data.get("vertical", [])),
        )

    def tile_term(self, name: str) -> Term:
        return iri(f"{_G}tile:{name}")


def _right_then_up() -> Seq:
    return Seq(Rel(HOR), Rel(VER))


def _up_then_right() -> Seq:
    return Seq(Rel(VER), Rel(HOR))


def _either_diagonal() -> Alt:
    return Alt(_right_then_up(), _up_then_right())


def _square_closing(variant: str) -> SclFormula:
    if variant == "SO":
        return conj(
            [
                exists(Rel(DIAG), Top()),
                OrderCmp(_right_then_up(), DIAG, strict=False, inverted=False),
                OrderCmp(_right_then_up(), DIAG, strict=False, inverted=True),
                OrderCmp(_up_then_right(), DIAG, strict=False, inverted=False),
                OrderCmp(_up_then_right(), DIAG, strict=False, inverted=True),
            ]
        )
    if variant == "SAC":
        return Not(CountExists(2, _either_diagonal(), Top()))
    if variant == "SEC":
        return conj(
            [
                Not(CountExists(2, Rel(DIAG), Top())),
                Equals(_right_then_up(), DIAG),
                Equals(_up_then_right(), DIAG),
            ]
        )
    if variant == "SEOprime":
        return conj(
            [
                OrderCmp(Rel(DIAG), DIAG, strict=False, inverted=False),
                Equals(_right_then_up(), DIAG),
                Equals(_up_then_right(), DIAG),
            ]
        )
    if variant == "SZAE":
        diag_union = Equals(Alt(Rel(DIAG0), Rel(DIAG1)), DIAG)
        alternation = And(
            disj(
                [
                    Not(exists(Rel(DIAG0), Top())),
                    Not(exists(Rel(DIAG1), Top())),
                ]
            ),
            And(
                forall_path(Rel(DIAG0), exists(Rel(DIAG1), Top())),
                forall_path(Rel(DIAG1), exists(Rel(DIAG0), Top())),
            ),
        )
        sym_closure = And(
            Equals(Opt(Alt(Rel(DIAG0), Rel(DIAG0, inverted=True))), CLOSURE0),
            Equals(Opt(Alt(Rel(DIAG1), Rel(DIAG1, inverted=True))), CLOSURE1),
        )
        transitivity = And(
            Equals(Seq(Rel(CLOSURE0), Rel(CLOSURE0)), CLOSURE0),
            Equals(Seq(Rel(CLOSURE1), Rel(CLOSURE1)), CLOSURE1),
        )
        return conj(
            [diag_union, alternation, sym_closure, transitivity, Equals(_either_diagonal(), DIAG)]
        )
    raise ValueError(f"unknown domino variant {variant!r}")


def gadget_domino(variant: str, system: TilingSystem) -> SclSentence:
    """The reduction sentence for one undecidable fragment: satisfiable iff
    the tiling system admits a compatible tiling of the quadrant."""
    if variant not in DOMINO_VARIANTS:
        raise ValueError(f"unknown domino variant {variant!r}")
    tiles = list(system.tiles)
    terms = {t: system.tile_term(t) for t in tiles}

    origin = AtConst(ZERO, disj([_is_a(terms[t]) for t in tiles]))

    grid_rules = conj(
        [
            exists(Rel(HOR), Top()),
            exists(Rel(VER), Top()),
            _square_closing(variant),
        ]
    )

    parts: list[SclSentence] = [origin]
    for t in tiles:
        unique = conj([Not(_is_a(terms[u])) for u in tiles if u != t])
        h_ok = forall_path(
            Rel(HOR), disj([_is_a(terms[b]) for (a, b) in sorted(system.horizontal) if a == t])
        )
        v_ok = forall_path(
            Rel(VER), disj([_is_a(terms[b]) for (a, b) in sorted(system.vertical) if a == t])
        )
        tile_rules = conj([unique, h_ok, v_ok])
        parts.append(ForClass(terms[t], And(tile_rules, grid_rules)))
    return sentence_conj(parts)
