"""Filter combinations, the term-counting function, and the cardinality
axiomatization that lets uninterpreted filter relations stand in for the
canonical ones.

A combination is a conjunction of (negated) constant equalities and
(negated) monadic filters over one variable.  `gamma` computes how many
RDF terms satisfy a combination, where terms are counted up to value
identity (all lexical variants of one value count once).  `axiomatize`
conjoins one global upper-bound counting sentence per combination with a
finite count; combinations ruled out by a pairwise incompatibility are
covered by dedicated zero conjuncts instead of being enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional

from . import namespaces as ns
from .filter_semantics import term_satisfies
from .scl import (
    AtMostGlobal,
    EqConst,
    Filter,
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
    Not,
    SclFormula,
    SclSentence,
    conj,
    formula_filters,
    node_constants,
    sentence_conj,
)
from .terms import (
    BOOLEAN,
    DATETIME,
    NUMERIC,
    STRING,
    Term,
    blank,
    boolean,
    effective_datatype,
    iri,
    literal,
    term_value,
)

# Unicode scalar values (codepoints minus surrogates)
ALPHABET_SIZE = 0x110000 - 0x0800
CARDINALITY_CAP = 2**64
_ENUM_LIMIT = 4096


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Cardinality:
    value: Optional[int]  # None means infinite (or beyond the cap)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __repr__(self) -> str:
        return "Cardinality(inf)" if self.is_infinite else f"Cardinality({self.value})"


INFINITE = Cardinality(None)


def _finite(n: int) -> Cardinality:
    return INFINITE if n > CARDINALITY_CAP else Cardinality(n)


@dataclass(frozen=True)
class FilterCombination:
    positive_eq: frozenset[Term] = frozenset()
    negative_eq: frozenset[Term] = frozenset()
    positive_filters: frozenset[FilterName] = frozenset()
    negative_filters: frozenset[FilterName] = frozenset()

    def is_contradictory(self) -> bool:
        """A literal required and excluded at once; gamma treats this as 0."""
        return bool(
            self.positive_eq & self.negative_eq or self.positive_filters & self.negative_filters
        )

    def literals(self) -> list[tuple[bool, object]]:
        out: list[tuple[bool, object]] = []
        out += [(True, c) for c in sorted(self.positive_eq, key=Term.sort_key)]
        out += [(False, c) for c in sorted(self.negative_eq, key=Term.sort_key)]
        out += [(True, f) for f in sorted(self.positive_filters, key=FilterName.sort_key)]
        out += [(False, f) for f in sorted(self.negative_filters, key=FilterName.sort_key)]
        return out

    def formula(self) -> SclFormula:
        parts: list[SclFormula] = []
        for positive, item in self.literals():
            atom = EqConst(item) if isinstance(item, Term) else Filter(item)
            parts.append(atom if positive else Not(atom))
        return conj(parts)


def term_satisfies_combination(combo: FilterCombination, term: Term) -> bool:
    for c in combo.positive_eq:
        if term != c:
            return False
    for c in combo.negative_eq:
        if term == c:
            return False
    for f in combo.positive_filters:
        if not term_satisfies(f, term):
            return False
    for f in combo.negative_filters:
        if term_satisfies(f, term):
            return False
    return True


# --------------------------------------------------------------------------
# Canonical value identity
# --------------------------------------------------------------------------


def canonical_key(term: Term) -> tuple:
    """Terms with the same key denote the same canonical element."""
    if term.is_literal:
        value = term_value(term)
        if value is not None:
            return ("lit", effective_datatype(term), value[0], str(value[1]))
        if term.language:
            return ("lang", term.language.lower(), term.lexical)
        return ("lit", effective_datatype(term), None, term.lexical)
    return (term.kind, term.lexical)


# --------------------------------------------------------------------------
# Constraint record solved out of a combination
# --------------------------------------------------------------------------


@dataclass
class _Bounds:
    lo: Optional[tuple] = None  # (ctype, value, strict)
    hi: Optional[tuple] = None
    impossible: bool = False

    def add_lo(self, ctype: str, value, strict: bool) -> None:
        if self.lo is not None and self.lo[0] != ctype:
            self.impossible = True
            return
        if self.hi is not None and self.hi[0] != ctype:
            self.impossible = True
            return
        if self.lo is None:
            self.lo = (ctype, value, strict)
            return
        _, old, old_strict = self.lo
        if value > old or (value == old and strict and not old_strict):
            self.lo = (ctype, value, strict)

    def add_hi(self, ctype: str, value, strict: bool) -> None:
        if self.hi is not None and self.hi[0] != ctype:
            self.impossible = True
            return
        if self.lo is not None and self.lo[0] != ctype:
            self.impossible = True
            return
        if self.hi is None:
            self.hi = (ctype, value, strict)
            return
        _, old, old_strict = self.hi
        if value < old or (value == old and strict and not old_strict):
            self.hi = (ctype, value, strict)

    @property
    def ctype(self) -> Optional[str]:
        if self.lo is not None:
            return self.lo[0]
        if self.hi is not None:
            return self.hi[0]
        return None


@dataclass
class _Solved:
    kinds: set[str]
    datatype: Optional[str] = None
    neg_datatypes: frozenset = frozenset()
    language: Optional[str] = None
    neg_languages: frozenset = frozenset()
    bounds: Optional[_Bounds] = None  # positive bounds only
    neg_value_filters: tuple = ()
    len_lo: int = 0
    len_hi: Optional[int] = None
    impossible: bool = False


def _solve(combo: FilterCombination) -> _Solved:
    kinds = {"iri", "literal", "blank"}
    sv = _Solved(kinds=kinds, bounds=_Bounds())
    neg_dt: set[str] = set()
    neg_lang: set[str] = set()
    neg_values: list = []
    for f in combo.positive_filters:
        if isinstance(f, IsIri):
            kinds &= {"iri"}
        elif isinstance(f, IsLiteral):
            kinds &= {"literal"}
        elif isinstance(f, IsBlank):
            kinds &= {"blank"}
        elif isinstance(f, HasDatatype):
            kinds &= {"literal"}
            if sv.datatype is not None and sv.datatype != f.datatype:
                sv.impossible = True
            sv.datatype = f.datatype
        elif isinstance(f, HasLanguage):
            kinds &= {"literal"}
            tag = f.tag.lower()
            if sv.language is not None and sv.language != tag:
                sv.impossible = True
            sv.language = tag
        elif isinstance(f, MinValue):
            kinds &= {"literal"}
            value = term_value(f.bound)
            if value is None:
                sv.impossible = True
            else:
                sv.bounds.add_lo(value[0], value[1], f.strict)
        elif isinstance(f, MaxValue):
            kinds &= {"literal"}
            value = term_value(f.bound)
            if value is None:
                sv.impossible = True
            else:
                sv.bounds.add_hi(value[0], value[1], f.strict)
        elif isinstance(f, MinLength):
            kinds -= {"blank"}
            sv.len_lo = max(sv.len_lo, f.bound)
        elif isinstance(f, MaxLength):
            kinds -= {"blank"}
            sv.len_hi = f.bound if sv.len_hi is None else min(sv.len_hi, f.bound)
        elif isinstance(f, Matches):
            kinds -= {"blank"}
    for f in combo.negative_filters:
        if isinstance(f, IsIri):
            kinds -= {"iri"}
        elif isinstance(f, IsLiteral):
            kinds -= {"literal"}
        elif isinstance(f, IsBlank):
            kinds -= {"blank"}
        elif isinstance(f, HasDatatype):
            neg_dt.add(f.datatype)
        elif isinstance(f, HasLanguage):
            neg_lang.add(f.tag.lower())
        elif isinstance(f, (MinValue, MaxValue)):
            neg_values.append(f)
        elif isinstance(f, MinLength):
            # not(len >= n)  <=>  len <= n - 1
            sv.len_hi = f.bound - 1 if sv.len_hi is None else min(sv.len_hi, f.bound - 1)
        elif isinstance(f, MaxLength):
            sv.len_lo = max(sv.len_lo, f.bound + 1)
    sv.kinds = kinds
    sv.neg_datatypes = frozenset(neg_dt)
    sv.neg_languages = frozenset(neg_lang)
    sv.neg_value_filters = tuple(neg_values)
    if sv.bounds.impossible:
        sv.impossible = True
    if sv.len_hi is not None and sv.len_lo > sv.len_hi:
        sv.impossible = True
    if sv.datatype is not None and sv.datatype in neg_dt:
        sv.impossible = True
    if sv.language is not None and sv.language in neg_lang:
        sv.impossible = True
    if sv.datatype is not None and sv.language is not None and sv.datatype != ns.RDF_LANGSTRING:
        sv.impossible = True
    return sv


def _family_bounds(sv: _Solved, ctype: str) -> Optional[_Bounds]:
    """Positive bounds plus flipped negative bounds, for one comparison type."""
    merged = _Bounds()
    if sv.bounds.lo is not None:
        if sv.bounds.lo[0] != ctype:
            return None
        merged.add_lo(ctype, sv.bounds.lo[1], sv.bounds.lo[2])
    if sv.bounds.hi is not None:
        if sv.bounds.hi[0] != ctype:
            return None
        merged.add_hi(ctype, sv.bounds.hi[1], sv.bounds.hi[2])
    for f in sv.neg_value_filters:
        value = term_value(f.bound)
        if value is None or value[0] != ctype:
            continue  # vacuously satisfied by this family
        if isinstance(f, MinValue):
            # not(x > b) -> x <= b ; not(x >= b) -> x < b
            merged.add_hi(ctype, value[1], not f.strict)
        else:
            merged.add_lo(ctype, value[1], not f.strict)
    return None if merged.impossible else merged


def _canonical_integer_term(value: int, datatype: str) -> Term:
    return literal(str(value), datatype)


def _integer_range(bounds: _Bounds, datatype: str) -> Optional[tuple[Optional[int], Optional[int]]]:
    lo, hi = ns.XSD_INTEGER_RANGES[datatype]
    if bounds.lo is not None:
        _, value, strict = bounds.lo
        if value == math.inf:
            return None
        if value != -math.inf:
            candidate = math.floor(value) + 1 if strict else math.ceil(value)
            lo = candidate if lo is None else max(lo, candidate)
    if bounds.hi is not None:
        _, value, strict = bounds.hi
        if value == -math.inf:
            return None
        if value != math.inf:
            if strict:
                candidate = math.ceil(value) - 1
            else:
                candidate = math.floor(value)
            hi = candidate if hi is None else min(hi, candidate)
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def _integer_length_count(lo: int, hi: int, len_lo: int, len_hi: Optional[int]) -> int:
    """Integers in [lo, hi] whose canonical decimal form has an allowed length."""
    total = 0
    max_digits = max(len(str(abs(lo))), len(str(abs(hi)))) + 1
    top = max_digits if len_hi is None else min(len_hi, max_digits)
    for length in range(max(1, len_lo), top + 1):
        # non-negative with `length` digits (no sign)
        if length == 1:
            seg_lo, seg_hi = 0, 9
        else:
            seg_lo, seg_hi = 10 ** (length - 1), 10**length - 1
        a, b = max(lo, seg_lo), min(hi, seg_hi)
        if a <= b:
            total += b - a + 1
        # negative: "-" plus (length - 1) digits
        digits = length - 1
        if digits >= 1:
            if digits == 1:
                seg_lo, seg_hi = -9, -1
            else:
                seg_lo, seg_hi = -(10**digits - 1), -(10 ** (digits - 1))
            a, b = max(lo, seg_lo), min(hi, seg_hi)
            if a <= b:
                total += b - a + 1
    return total


def _string_space(len_lo: int, len_hi: Optional[int]) -> Cardinality:
    if len_hi is None:
        return INFINITE
    total = 0
    for length in range(max(0, len_lo), len_hi + 1):
        total += ALPHABET_SIZE**length
        if total > CARDINALITY_CAP:
            return INFINITE
    return Cardinality(total)


def _dense_interval(bounds: _Bounds) -> str:
    """'empty', 'point', or 'open' for a dense order type."""
    if bounds.lo is None or bounds.hi is None:
        return "open"
    _, lo, lo_strict = bounds.lo
    _, hi, hi_strict = bounds.hi
    if lo > hi:
        return "empty"
    if lo == hi:
        return "empty" if (lo_strict or hi_strict) else "point"
    return "open"


_DENSE_NUMERIC = (ns.XSD_DECIMAL, ns.XSD_DOUBLE, ns.XSD_FLOAT)


def _known_numeric_datatypes() -> list[str]:
    return sorted(ns.XSD_INTEGER_RANGES) + list(_DENSE_NUMERIC)


def _count_family(
    combo: FilterCombination, sv: _Solved, datatype: Optional[str], language: Optional[str]
) -> tuple[Cardinality, list[Term]]:
    """Count canonical literal elements of one family; also return exact
    witnesses when the family is small enough to enumerate."""
    if language is not None:
        if language in sv.neg_languages:
            return Cardinality(0), []
        if sv.bounds.lo is not None or sv.bounds.hi is not None:
            return Cardinality(0), []  # language-tagged strings have no order value
        return _string_space(sv.len_lo, sv.len_hi), []

    if datatype is None:
        return INFINITE, []
    if datatype in sv.neg_datatypes:
        return Cardinality(0), []

    def enumerate_terms(candidates: list[Term]) -> tuple[Cardinality, list[Term]]:
        seen = set()
        kept = []
        for term in candidates:
            if term_satisfies_combination(combo, term):
                key = canonical_key(term)
                if key not in seen:
                    seen.add(key)
                    kept.append(term)
        return Cardinality(len(kept)), kept

    if datatype == ns.XSD_BOOLEAN:
        return enumerate_terms([boolean(False), boolean(True)])

    if datatype in ns.XSD_INTEGER_RANGES:
        bounds = _family_bounds(sv, NUMERIC)
        if bounds is None:
            return Cardinality(0), []
        rng = _integer_range(bounds, datatype)
        if rng is None:
            return Cardinality(0), []
        lo, hi = rng
        if lo is None or hi is None:
            if sv.len_hi is None:
                return INFINITE, []
            # bounded canonical length makes the set finite
            limit = 10**sv.len_hi
            lo = -limit if lo is None else lo
            hi = limit if hi is None else hi
        if hi - lo + 1 <= _ENUM_LIMIT:
            terms = [_canonical_integer_term(v, datatype) for v in range(lo, hi + 1)]
            return enumerate_terms(terms)
        count = hi - lo + 1
        if sv.len_lo > 0 or sv.len_hi is not None:
            count = _integer_length_count(lo, hi, sv.len_lo, sv.len_hi)
        count -= _excluded_in_family(combo, datatype)
        return _finite(max(count, 0)), []

    if datatype in _DENSE_NUMERIC or datatype == ns.XSD_DATETIME:
        ctype = NUMERIC if datatype in _DENSE_NUMERIC else DATETIME
        bounds = _family_bounds(sv, ctype)
        if bounds is None:
            return Cardinality(0), []
        shape = _dense_interval(bounds)
        if shape == "empty":
            return Cardinality(0), []
        if shape == "point":
            point = _point_term(bounds, datatype)
            if point is None:
                return Cardinality(0), []
            return enumerate_terms([point])
        return INFINITE, []

    if datatype == ns.XSD_STRING:
        bounds = _family_bounds(sv, STRING)
        if bounds is None:
            return Cardinality(0), []
        nul_family = _nul_interval_terms(bounds, datatype)
        if nul_family is not None:
            return enumerate_terms(nul_family)
        if bounds.lo is not None and bounds.hi is not None and bounds.lo[1] > bounds.hi[1]:
            return Cardinality(0), []
        return _string_space(sv.len_lo, sv.len_hi), []

    if datatype == ns.RDF_LANGSTRING:
        return Cardinality(0), []  # needs a tag; counted in the language families

    # unknown datatype: unconstrained lexical space, no order values
    if sv.bounds.lo is not None or sv.bounds.hi is not None:
        return Cardinality(0), []
    return INFINITE, []


def _point_term(bounds: _Bounds, datatype: str) -> Optional[Term]:
    value = bounds.lo[1]
    if datatype == ns.XSD_DATETIME:
        return literal(value.isoformat(), datatype)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return literal(str(value.numerator), datatype)
        return literal(str(value.numerator / value.denominator), datatype)
    return None


def _nul_interval_terms(bounds: _Bounds, datatype: str) -> Optional[list[Term]]:
    """The one finite shape of a string interval: upper bound reachable from
    the lower bound by appending NUL characters."""
    if bounds.lo is None or bounds.hi is None:
        return None
    lo, hi = bounds.lo[1], bounds.hi[1]
    if not hi.startswith(lo) or set(hi[len(lo) :]) - {"\x00"}:
        return None
    pad = len(hi) - len(lo)
    return [literal(lo + "\x00" * j) for j in range(pad + 1)]


def _excluded_in_family(combo: FilterCombination, datatype: str) -> int:
    keys = set()
    for c in combo.negative_eq:
        if c.is_literal and effective_datatype(c) == datatype and term_satisfies_combination(
            FilterCombination(
                positive_filters=combo.positive_filters,
                negative_filters=combo.negative_filters,
            ),
            c,
        ):
            keys.add(canonical_key(c))
    return len(keys)


def gamma(combo: FilterCombination) -> Cardinality:
    count, _ = gamma_with_witnesses(combo, 0)
    return count


def gamma_with_witnesses(combo: FilterCombination, want: int) -> tuple[Cardinality, list[Term]]:
    """Cardinality plus up to `want` witness terms (distinct canonical
    elements, also distinct from every constant mentioned in the combo)."""
    if combo.is_contradictory():
        return Cardinality(0), []
    if combo.positive_eq:
        if len(combo.positive_eq) > 1:
            return Cardinality(0), []
        c = next(iter(combo.positive_eq))
        if term_satisfies_combination(combo, c):
            return Cardinality(1), [c]
        return Cardinality(0), []

    sv = _solve(combo)
    if sv.impossible or not sv.kinds:
        return Cardinality(0), []

    total = 0
    infinite = False
    witnesses: list[Term] = []
    used_keys = {canonical_key(c) for c in combo.negative_eq}

    def note(card: Cardinality, terms: list[Term], sampler=None) -> None:
        nonlocal total, infinite
        if card.is_infinite:
            infinite = True
        else:
            total += card.value
        pool = list(terms)
        if sampler is not None and len(witnesses) < want:
            pool += sampler(want * 3 + 8)
        for term in pool:
            if len(witnesses) >= want:
                break
            key = canonical_key(term)
            if key in used_keys:
                continue
            if term_satisfies_combination(combo, term):
                used_keys.add(key)
                witnesses.append(term)

    if "blank" in sv.kinds:
        has_positive_nonkind = any(
            not isinstance(f, (IsIri, IsLiteral, IsBlank)) for f in combo.positive_filters
        )
        if not has_positive_nonkind:
            note(INFINITE, [], lambda n: [blank(f"w{i}") for i in range(n)])

    if "iri" in sv.kinds and sv.datatype is None and sv.language is None and (
        sv.bounds.lo is None and sv.bounds.hi is None
    ):
        space = _string_space(sv.len_lo, sv.len_hi)

        def iri_sampler(n: int) -> list[Term]:
            base = ns.GEN_NS + "fresh:"
            out = []
            for i in range(n):
                name = f"{base}{i}"
                if len(name) < sv.len_lo:
                    name = name + "x" * (sv.len_lo - len(name))
                if sv.len_hi is not None and len(name) > sv.len_hi:
                    name = f"u{i}"[: sv.len_hi]
                out.append(iri(name))
            return out

        note(space, [], iri_sampler)

    if "literal" in sv.kinds:
        if sv.language is not None:
            card, terms = _count_family(combo, sv, None, sv.language)
            note(
                card,
                terms,
                lambda n: [
                    literal(s, language=sv.language)
                    for s in _strings_within(sv.len_lo, sv.len_hi, n)
                ],
            )
        elif sv.datatype is not None:
            card, terms = _count_family(combo, sv, sv.datatype, None)
            note(card, terms, _family_sampler(sv, sv.datatype))
        else:
            # no pinned datatype or tag
            if sv.bounds.lo is not None or sv.bounds.hi is not None:
                ctype = sv.bounds.ctype
                families: list[str] = []
                if ctype == NUMERIC:
                    families = _known_numeric_datatypes()
                elif ctype == BOOLEAN:
                    families = [ns.XSD_BOOLEAN]
                elif ctype == DATETIME:
                    families = [ns.XSD_DATETIME]
                elif ctype == STRING:
                    families = [ns.XSD_STRING]
                for datatype in families:
                    card, terms = _count_family(combo, sv, datatype, None)
                    note(card, terms, _family_sampler(sv, datatype))
            else:

                def mixed_literals(n: int) -> list[Term]:
                    plain = [literal(s) for s in _strings_within(sv.len_lo, sv.len_hi, n)]
                    tagged = [
                        literal(s, language=f"x-t{i}")
                        for i, s in enumerate(_strings_within(sv.len_lo, sv.len_hi, 1) * n)
                    ]
                    numbers = [
                        literal(str(i), ns.XSD_INTEGER)
                        for i in range(n)
                        if sv.len_lo <= len(str(i)) and (sv.len_hi is None or len(str(i)) <= sv.len_hi)
                    ]
                    return plain + tagged + numbers

                note(INFINITE, [], mixed_literals)

    if infinite:
        return INFINITE, witnesses
    total -= 0  # negative_eq exclusions are handled inside the family counts
    return _finite(max(total, 0)), witnesses


_SAMPLE_ALPHABET = "abcdefghijklmnopqrstuvwxyz0123456789"


def _strings_within(len_lo: int, len_hi: Optional[int], n: int) -> list[str]:
    """Up to n distinct strings whose length falls inside the bounds."""
    lo = max(0, len_lo)
    if len_hi is not None and lo > len_hi:
        return []
    if len_hi is None:
        out = []
        for i in range(n):
            s = f"s{i}"
            if len(s) < lo:
                s += "x" * (lo - len(s))
            out.append(s)
        return out
    length = len_hi  # the widest allowed length has the most room
    if length == 0:
        return [""]
    base = len(_SAMPLE_ALPHABET)
    out = []
    for i in range(min(n, base**min(length, 8))):
        digits = []
        value = i
        for _ in range(length):
            digits.append(_SAMPLE_ALPHABET[value % base])
            value //= base
        out.append("".join(digits))
    return out


def _family_sampler(sv: _Solved, datatype: str):
    if datatype in ns.XSD_INTEGER_RANGES:

        def sample(n: int) -> list[Term]:
            bounds = _family_bounds(sv, NUMERIC)
            if bounds is None:
                return []
            rng = _integer_range(bounds, datatype)
            if rng is None:
                return []
            lo, hi = rng
            start = lo if lo is not None else (min(hi, 0) - n if hi is not None else 0)
            out = []
            v = start
            while len(out) < n and (hi is None or v <= hi):
                out.append(_canonical_integer_term(v, datatype))
                v += 1
            return out

        return sample
    if datatype in _DENSE_NUMERIC:

        def sample_dense(n: int) -> list[Term]:
            bounds = _family_bounds(sv, NUMERIC)
            if bounds is None:
                return []
            lo = bounds.lo[1] if bounds.lo is not None else Fraction(0)
            hi = bounds.hi[1] if bounds.hi is not None else lo + n + 1
            if lo == math.inf or hi == -math.inf:
                return []
            lo = Fraction(0) if lo == -math.inf else Fraction(lo)
            hi = lo + n + 1 if hi == math.inf else Fraction(hi)
            if hi < lo:
                return []
            out = []
            for i in range(1, n + 1):
                value = lo + (hi - lo) * Fraction(i, n + 1)
                out.append(literal(str(float(value)), datatype))
            return out

        return sample_dense
    if datatype == ns.XSD_STRING:
        return lambda n: [literal(s) for s in _strings_within(sv.len_lo, sv.len_hi, n)]
    if datatype == ns.XSD_DATETIME:
        return lambda n: [
            literal(f"2020-01-{day:02d}T00:00:00", ns.XSD_DATETIME) for day in range(1, n + 1)
        ]
    if datatype == ns.XSD_BOOLEAN:
        return lambda n: [boolean(False), boolean(True)]
    return lambda n: [literal(f"v{i}", datatype) for i in range(n)]


# --------------------------------------------------------------------------
# Combination enumeration and the axiomatization
# --------------------------------------------------------------------------


def filter_alphabet(sentence: SclSentence) -> tuple[list[FilterName], list[Term]]:
    """Filters and constants occurring in a sentence; pattern filters are
    left out of the combination alphabet."""
    filters = sorted(
        (f for f in formula_filters(sentence) if not isinstance(f, Matches)),
        key=FilterName.sort_key,
    )
    constants = sorted(node_constants(sentence), key=Term.sort_key)
    return filters, constants


def has_pattern_filters(sentence: SclSentence) -> bool:
    return any(isinstance(f, Matches) for f in formula_filters(sentence))


def _literal_incompatible(a: tuple[bool, object], b: tuple[bool, object]) -> bool:
    """Cheap pairwise unsatisfiability test between two positive literals."""
    (pa, ia), (pb, ib) = a, b
    if not (pa and pb):
        return False
    if isinstance(ia, Term) and isinstance(ib, Term):
        return ia != ib
    if isinstance(ia, Term) and isinstance(ib, FilterName):
        return not term_satisfies(ib, ia)
    if isinstance(ib, Term) and isinstance(ia, FilterName):
        return not term_satisfies(ia, ib)
    combo = FilterCombination(positive_filters=frozenset({ia, ib}))
    solved = _solve(combo)
    return solved.impossible or not solved.kinds


def incompatible_pairs(filters: list[FilterName], constants: list[Term]) -> list[tuple]:
    items: list[tuple[bool, object]] = [(True, c) for c in constants] + [
        (True, f) for f in filters
    ]
    out = []
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if _literal_incompatible(items[i], items[j]):
                out.append((items[i][1], items[j][1]))
    return out


def collect_combinations(sentence: SclSentence, cap: int = 4096) -> Iterator[FilterCombination]:
    """Full-sign combinations over the sentence's filter/constant alphabet,
    skipping those already ruled out by a pairwise incompatibility."""
    filters, constants = filter_alphabet(sentence)
    incompat = {
        frozenset((repr_key(a), repr_key(b))) for a, b in incompatible_pairs(filters, constants)
    }
    items: list[object] = list(constants) + list(filters)
    emitted = 0
    for signs in product((True, False), repeat=len(items)):
        positives = [item for item, sign in zip(items, signs) if sign]
        if _has_incompatible_pair(positives, incompat):
            continue
        combo = FilterCombination(
            positive_eq=frozenset(i for i in positives if isinstance(i, Term)),
            negative_eq=frozenset(
                i for i, sign in zip(items, signs) if isinstance(i, Term) and not sign
            ),
            positive_filters=frozenset(i for i in positives if isinstance(i, FilterName)),
            negative_filters=frozenset(
                i for i, sign in zip(items, signs) if isinstance(i, FilterName) and not sign
            ),
        )
        emitted += 1
        if emitted > cap:
            raise CapExceeded(f"more than {cap} filter combinations")
        yield combo


def repr_key(item: object) -> tuple:
    if isinstance(item, Term):
        return ("term",) + item.sort_key()
    return ("filter",) + item.sort_key()  # type: ignore[union-attr]


def _has_incompatible_pair(positives: list, incompat: set) -> bool:
    for i in range(len(positives)):
        for j in range(i + 1, len(positives)):
            if frozenset((repr_key(positives[i]), repr_key(positives[j]))) in incompat:
                return True
    return False


def axiomatize(sentence: SclSentence, cap: int = 4096) -> SclSentence:
    """Conjoin the upper-bound counting sentences that force uninterpreted
    filters to respect the canonical cardinalities."""
    filters, constants = filter_alphabet(sentence)
    parts: list[SclSentence] = [sentence]
    for a, b in incompatible_pairs(filters, constants):
        pair = conj(
            [
                EqConst(a) if isinstance(a, Term) else Filter(a),
                EqConst(b) if isinstance(b, Term) else Filter(b),
            ]
        )
        parts.append(AtMostGlobal(0, pair))
    for combo in collect_combinations(sentence, cap):
        card = gamma(combo)
        if card.is_infinite:
            continue
        parts.append(AtMostGlobal(card.value, combo.formula()))
    return sentence_conj(parts)
