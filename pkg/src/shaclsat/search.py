"""Exact bounded finite-model search.

The sentence is grounded over a fixed domain size into CNF and decided by
a small conflict-driven solver with a static branching order, so the
first model found is the least one in the canonical enumeration order
(domain assignments before relation edges, absent before present).

Two modes:

* ``canonical`` — domain elements are RDF terms.  Constants occupy fixed
  slots; every free slot picks a term from a generated catalog (fresh
  IRIs, filter-combination witnesses, orderable literals), so filters,
  equalities and orders are computed, never guessed.
* ``uninterpreted`` — elements are abstract.  Constants may co-denote,
  filters are free monadic relations, and orders are enumerated as a
  partition into blocks carrying strict total orders.

hasShape is always defined by its definition, never enumerated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import namespaces as ns
from .filter_semantics import term_satisfies
from .filters import CapExceeded, FilterCombination, canonical_key, gamma_with_witnesses
from .scl import (
    Alt,
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
    conjuncts,
    formula_filters,
    node_constants,
    relation_names,
    shape_definitions,
    walk_formulas,
    sentence_formulas,
)
from .structures import Evaluator, FiniteStructure, OrderBlock, compute_shape_assignment
from .terms import ComparisonVerdict, Term, compare_terms, iri, literal

CANONICAL = "canonical"
UNINTERPRETED = "uninterpreted"


class SearchBudgetExceeded(Exception):
    pass


class ModelConfirmationError(RuntimeError):
    """The decoded structure failed re-evaluation; an engine invariant broke."""


@dataclass
class SatVerdict:
    outcome: str  # "Sat" | "UnsatUpTo" | "Aborted"
    model: Optional[FiniteStructure] = None
    bound: Optional[int] = None
    reason: Optional[str] = None

    @property
    def is_sat(self) -> bool:
        return self.outcome == "Sat"

    def to_json(self) -> dict:
        out: dict = {"outcome": self.outcome}
        if self.model is not None:
            out["model"] = self.model.to_json()
        if self.bound is not None:
            out["bound"] = self.bound
        if self.reason is not None:
            out["reason"] = self.reason
        return out


# --------------------------------------------------------------------------
# CDCL solver with static branching
# --------------------------------------------------------------------------


class _Solver:
    def __init__(self, n_vars: int, clauses: list[list[int]], deadline: Optional[float]):
        self.n = n_vars
        self.assign = [0] * (n_vars + 1)  # 0 unknown, 1 true, -1 false
        self.level = [0] * (n_vars + 1)
        self.reason: list[Optional[list[int]]] = [None] * (n_vars + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: dict[int, list[list[int]]] = {}
        self.clauses: list[list[int]] = []
        self.deadline = deadline
        self.propagations = 0
        self.ok = True
        for clause in clauses:
            self.add_clause(clause)

    # clause plumbing -------------------------------------------------

    def add_clause(self, lits: list[int]) -> None:
        if not self.ok:
            return
        clause = list(dict.fromkeys(lits))
        if any(-lit in clause for lit in clause):
            return  # tautology
        if not clause:
            self.ok = False
            return
        if len(clause) == 1:
            if not self._enqueue(clause[0], None):
                self.ok = False
            return
        self.clauses.append(clause)
        self.watches.setdefault(clause[0], []).append(clause)
        self.watches.setdefault(clause[1], []).append(clause)

    def _value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        return v if lit > 0 else -v

    def _enqueue(self, lit: int, reason: Optional[list[int]]) -> bool:
        value = self._value(lit)
        if value == 1:
            return True
        if value == -1:
            return False
        var = abs(lit)
        self.assign[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)
        return True

    def _propagate(self) -> Optional[list[int]]:
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            if self.deadline is not None and self.propagations % 4096 == 0:
                if time.monotonic() > self.deadline:
                    raise SearchBudgetExceeded()
            falsified = -lit
            watchers = self.watches.get(falsified, [])
            i = 0
            while i < len(watchers):
                clause = watchers[i]
                # normalize: watched literals are clause[0], clause[1]
                if clause[0] == falsified:
                    clause[0], clause[1] = clause[1], clause[0]
                if self._value(clause[0]) == 1:
                    i += 1
                    continue
                moved = False
                for j in range(2, len(clause)):
                    if self._value(clause[j]) != -1:
                        clause[1], clause[j] = clause[j], clause[1]
                        self.watches.setdefault(clause[1], []).append(clause)
                        watchers[i] = watchers[-1]
                        watchers.pop()
                        moved = True
                        break
                if moved:
                    continue
                # unit or conflict on clause[0]
                if not self._enqueue(clause[0], clause):
                    return clause
                i += 1
        return None

    # conflict analysis ------------------------------------------------

    def _analyze(self, conflict: list[int]) -> tuple[list[int], int]:
        learned: list[int] = []
        seen = [False] * (self.n + 1)
        counter = 0
        p: Optional[int] = None  # trail literal currently being expanded
        clause = conflict
        index = len(self.trail) - 1
        current_level = len(self.trail_lim)
        while True:
            for q in clause:
                if p is not None and q == p:
                    continue
                var = abs(q)
                if not seen[var] and self.level[var] > 0:
                    seen[var] = True
                    if self.level[var] >= current_level:
                        counter += 1
                    else:
                        learned.append(q)
            while True:
                p = self.trail[index]
                index -= 1
                if seen[abs(p)]:
                    break
            counter -= 1
            seen[abs(p)] = False
            if counter == 0:
                learned.append(-p)
                break
            clause = self.reason[abs(p)] or []
        if len(learned) == 1:
            return learned, 0
        levels = sorted({self.level[abs(q)] for q in learned[:-1]}, reverse=True)
        return learned, levels[0]

    def _backjump(self, target_level: int) -> None:
        while len(self.trail_lim) > target_level:
            mark = self.trail_lim.pop()
            while len(self.trail) > mark:
                lit = self.trail.pop()
                var = abs(lit)
                self.assign[var] = 0
                self.reason[var] = None
            self.qhead = min(self.qhead, len(self.trail))

    # main loop ----------------------------------------------------------

    def solve(self, decisions: list[int], preferred: dict[int, bool]) -> Optional[list[int]]:
        """Returns assignment list (index by var, -1/1) or None if unsat."""
        if not self.ok:
            return None
        conflict = self._propagate()
        if conflict is not None:
            return None
        cursor = 0
        while True:
            # pick the first unassigned decision variable in static order
            while cursor < len(decisions) and self.assign[decisions[cursor]] != 0:
                cursor += 1
            if cursor >= len(decisions):
                # aux variables are determined by the decisions; propagate
                # has already run, so anything unassigned is unconstrained
                for var in range(1, self.n + 1):
                    if self.assign[var] == 0:
                        self.assign[var] = -1
                return list(self.assign)
            var = decisions[cursor]
            lit = var if preferred.get(var, False) else -var
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)
            while True:
                conflict = self._propagate()
                if conflict is None:
                    break
                if not self.trail_lim:
                    return None
                learned, target = self._analyze(conflict)
                self._backjump(target)
                if len(learned) == 1:
                    if not self._enqueue(learned[0], None):
                        return None
                else:
                    learned.sort(key=lambda q: -self.level[abs(q)])
                    self.clauses.append(learned)
                    self.watches.setdefault(learned[0], []).append(learned)
                    self.watches.setdefault(learned[1], []).append(learned)
                    self._enqueue(learned[0], learned)
                cursor = 0
        # unreachable


def _solve_once(
    n_vars: int,
    clauses: list[list[int]],
    decisions: list[int],
    preferred: dict[int, bool],
    deadline: Optional[float],
    fixed: list[int] = (),
) -> Optional[list[int]]:
    solver = _Solver(n_vars, clauses, deadline)
    for lit in fixed:
        if not solver._enqueue(lit, None):
            return None
    return solver.solve(decisions, preferred)


def _solve_lex_least(
    n_vars: int,
    clauses: list[list[int]],
    decisions: list[int],
    preferred: dict[int, bool],
    deadline: Optional[float],
    minimize: bool,
) -> Optional[list[int]]:
    model = _solve_once(n_vars, clauses, decisions, preferred, deadline)
    if model is None or not minimize:
        return model
    prefix: list[int] = []
    for var in decisions:
        want = var if preferred.get(var, False) else -var
        have = model[var] * var if model[var] != 0 else -var
        if (have > 0) == (want > 0):
            prefix.append(want)
            continue
        attempt = _solve_once(
            n_vars, clauses, decisions, preferred, deadline, fixed=prefix + [want]
        )
        if attempt is not None:
            model = attempt
            prefix.append(want)
        else:
            prefix.append(-want)
    return model


# --------------------------------------------------------------------------
# Grounding
# --------------------------------------------------------------------------


class _Cnf:
    def __init__(self) -> None:
        self.n_vars = 0
        self.clauses: list[list[int]] = []
        self.true_lit = self.new_var()
        self.add([self.true_lit])

    def new_var(self) -> int:
        self.n_vars += 1
        return self.n_vars

    def add(self, clause: list[int]) -> None:
        self.clauses.append(list(clause))

    @property
    def false_lit(self) -> int:
        return -self.true_lit

    def aux_and(self, lits: list[int]) -> int:
        lits = [l for l in lits if l != self.true_lit]
        if any(l == self.false_lit for l in lits):
            return self.false_lit
        if not lits:
            return self.true_lit
        if len(lits) == 1:
            return lits[0]
        v = self.new_var()
        for l in lits:
            self.add([-v, l])
        self.add([v] + [-l for l in lits])
        return v

    def aux_or(self, lits: list[int]) -> int:
        return -self.aux_and([-l for l in lits])

    def aux_iff(self, a: int, b: int) -> int:
        if a == self.true_lit:
            return b
        if b == self.true_lit:
            return a
        if a == self.false_lit:
            return -b
        if b == self.false_lit:
            return -a
        v = self.new_var()
        self.add([-v, -a, b])
        self.add([-v, a, -b])
        self.add([v, a, b])
        self.add([v, -a, -b])
        return v

    def at_most(self, lits: list[int], bound: int) -> None:
        if bound >= len(lits):
            return
        for subset in combinations(lits, bound + 1):
            self.add([-l for l in subset])


def _order_atoms_present(sentence: SclSentence) -> bool:
    for root in sentence_formulas(sentence):
        for f in walk_formulas(root):
            if isinstance(f, OrderCmp):
                return True
    return False


_ORDER_WITNESS_FAMILIES = ("integer", "string", "dateTime", "boolean")


def _order_witnesses(count: int) -> list[Term]:
    out: list[Term] = []
    for i in range(count):
        out.append(literal(str(7100 + i), ns.XSD_INTEGER))
    for i in range(count):
        out.append(literal(f"ow{i}"))
    for i in range(min(count, 27)):
        out.append(literal(f"2021-03-{(i % 27) + 1:02d}T12:00:00", ns.XSD_DATETIME))
    out.append(literal("true", ns.XSD_BOOLEAN))
    out.append(literal("false", ns.XSD_BOOLEAN))
    return out


def _build_catalog(
    constants: list[Term],
    filters: list,
    fresh_count: int,
    order_needed: bool,
    cap: int = 1 << 12,
) -> list[Term]:
    """Candidate terms for free domain slots in canonical mode."""
    taken = {canonical_key(c) for c in constants}
    catalog: list[Term] = []

    def push(term: Term) -> None:
        key = canonical_key(term)
        if key not in taken:
            taken.add(key)
            catalog.append(term)

    for i in range(fresh_count):
        push(iri(f"{ns.GEN_NS}elem:{i}"))
    if filters:
        if 2 ** len(filters) > cap:
            raise CapExceeded(f"filter alphabet too large for catalog ({len(filters)} filters)")
        from itertools import product

        for signs in product((True, False), repeat=len(filters)):
            combo = FilterCombination(
                positive_filters=frozenset(f for f, s in zip(filters, signs) if s),
                negative_filters=frozenset(f for f, s in zip(filters, signs) if not s),
                negative_eq=frozenset(constants),
            )
            _, witnesses = gamma_with_witnesses(combo, fresh_count)
            for term in witnesses:
                push(term)
    if order_needed:
        for term in _order_witnesses(fresh_count):
            push(term)
    return catalog


class _Grounder:
    def __init__(
        self, sentence: SclSentence, k: int, mode: str, scan: Optional[SclSentence] = None
    ):
        self.sentence = sentence
        self.k = k
        self.mode = mode
        self.cnf = _Cnf()
        scan = scan if scan is not None else sentence
        self.relations = sorted(relation_names(scan), key=Term.sort_key)
        self.constants = sorted(node_constants(scan), key=Term.sort_key)
        self.filters = sorted(formula_filters(scan), key=lambda f: f.sort_key())
        seen_defs: dict[Term, ShapeDef] = {}
        for d in shape_definitions(scan):
            seen_defs.setdefault(d.name, d)
        self.defs = list(seen_defs.values())
        self.order_needed = _order_atoms_present(scan)

        self.decision_vars: list[int] = []
        self.preferred: dict[int, bool] = {}

        self.slot_terms: list[Optional[Term]] = [None] * k
        self.const_slot: dict[Term, int] = {}
        self.catalog: list[Term] = []
        self.ch: dict[tuple[int, int], int] = {}
        self.den: dict[tuple[Term, int], int] = {}
        self.rel: dict[tuple[Term, int, int], int] = {}
        self.filt: dict[tuple[object, int], int] = {}
        self.inb: dict[int, int] = {}
        self.sb: dict[tuple[int, int], int] = {}
        self.lt: dict[tuple[int, int], int] = {}
        self.hs: dict[tuple[Term, int], int] = {}
        self._formula_lit: dict[tuple[int, int], int] = {}
        self._path_mat: dict[int, list[list[int]]] = {}
        self._sigma_cache: dict[tuple[int, int, bool], int] = {}
        self._keepalive: list[object] = []

        if mode == CANONICAL:
            self._setup_canonical()
        else:
            self._setup_uninterpreted()
        self._setup_relations()
        if mode == UNINTERPRETED and self.filters:
            self._setup_filter_vars()
        if mode == UNINTERPRETED and self.order_needed:
            self._setup_order_vars()
        self._setup_shape_vars()
        self._assert_sentence()
        if mode == UNINTERPRETED:
            self._symmetry_leader()

    # ---- variable setup -------------------------------------------------

    def _setup_canonical(self) -> None:
        m = len(self.constants)
        if m > self.k:
            raise ValueError("domain too small for the constants")
        for i, c in enumerate(self.constants):
            self.slot_terms[i] = c
            self.const_slot[c] = i
        fresh = self.k - m
        self.catalog = _build_catalog(self.constants, self.filters, fresh, self.order_needed)
        if fresh > len(self.catalog):
            # not enough distinct candidate terms; extend with plain IRIs
            base = len(self.catalog)
            for i in range(fresh - base):
                self.catalog.append(iri(f"{ns.GEN_NS}extra:{i}"))
        for s in range(m, self.k):
            for t in range(len(self.catalog)):
                v = self.cnf.new_var()
                self.ch[(s, t)] = v
                self.decision_vars.append(v)
                self.preferred[v] = True if t == 0 else False
        for s in range(m, self.k):
            row = [self.ch[(s, t)] for t in range(len(self.catalog))]
            self.cnf.add(row)  # at least one
            self.cnf.at_most(row, 1)
        for t in range(len(self.catalog)):
            col = [self.ch[(s, t)] for s in range(m, self.k)]
            self.cnf.at_most(col, 1)
        # fixed slot order: catalog indices ascend across free slots
        for s in range(m, self.k - 1):
            for a in range(len(self.catalog)):
                for b in range(a + 1):
                    self.cnf.add([-self.ch[(s, a)], -self.ch[(s + 1, b)]])

    def _setup_uninterpreted(self) -> None:
        for c in self.constants:
            for i in range(self.k):
                v = self.cnf.new_var()
                self.den[(c, i)] = v
                self.decision_vars.append(v)
                self.preferred[v] = i == 0
            row = [self.den[(c, i)] for i in range(self.k)]
            self.cnf.add(row)
            self.cnf.at_most(row, 1)

    def _setup_relations(self) -> None:
        for r in self.relations:
            for i in range(self.k):
                for j in range(self.k):
                    v = self.cnf.new_var()
                    self.rel[(r, i, j)] = v
                    self.decision_vars.append(v)
                    self.preferred[v] = False

    def _setup_filter_vars(self) -> None:
        for f in self.filters:
            for i in range(self.k):
                v = self.cnf.new_var()
                self.filt[(f, i)] = v
                self.decision_vars.append(v)
                self.preferred[v] = False

    def _setup_order_vars(self) -> None:
        k = self.k
        for i in range(k):
            v = self.cnf.new_var()
            self.inb[i] = v
            self.decision_vars.append(v)
            self.preferred[v] = False
        for i in range(k):
            for j in range(i + 1, k):
                v = self.cnf.new_var()
                self.sb[(i, j)] = v
                self.decision_vars.append(v)
                self.preferred[v] = False
        for i in range(k):
            for j in range(k):
                if i != j:
                    v = self.cnf.new_var()
                    self.lt[(i, j)] = v
                    self.decision_vars.append(v)
                    self.preferred[v] = False
        sb = lambda i, j: self.sb[(min(i, j), max(i, j))]
        for i in range(k):
            for j in range(i + 1, k):
                self.cnf.add([-sb(i, j), self.inb[i]])
                self.cnf.add([-sb(i, j), self.inb[j]])
                # same block is total: one strict direction
                self.cnf.add([-sb(i, j), self.lt[(i, j)], self.lt[(j, i)]])
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                self.cnf.add([-self.lt[(i, j)], sb(i, j)])
                if i < j:
                    self.cnf.add([-self.lt[(i, j)], -self.lt[(j, i)]])
        for i in range(k):
            for j in range(k):
                for l in range(k):
                    if len({i, j, l}) == 3:
                        self.cnf.add(
                            [-self.lt[(i, j)], -self.lt[(j, l)], self.lt[(i, l)]]
                        )
        # block membership is transitive as an equivalence on ordered elements
        for i in range(k):
            for j in range(k):
                for l in range(k):
                    if i < j and j != l and i != l:
                        a, b = min(j, l), max(j, l)
                        c, d = min(i, l), max(i, l)
                        self.cnf.add([-sb(i, j), -self.sb[(a, b)], self.sb[(c, d)]])

    def _setup_shape_vars(self) -> None:
        for d in self.defs:
            for i in range(self.k):
                self.hs[(d.name, i)] = self.cnf.new_var()

    # ---- atoms -----------------------------------------------------------

    def _eq_const_lit(self, c: Term, i: int) -> int:
        if self.mode == CANONICAL:
            return self.cnf.true_lit if self.const_slot.get(c) == i else self.cnf.false_lit
        if (c, i) not in self.den:
            # constant absent from the scanned constant set (defensive)
            raise KeyError(f"unknown constant {c}")
        return self.den[(c, i)]

    def _filter_lit(self, name, i: int) -> int:
        key = (name, i)
        if key in self.filt:
            return self.filt[key]
        if self.mode == UNINTERPRETED:
            raise KeyError(f"filter {name} not set up")
        term = self.slot_terms[i]
        if term is not None:
            return self.cnf.true_lit if term_satisfies(name, term) else self.cnf.false_lit
        lits = [
            self.ch[(i, t)]
            for t, cand in enumerate(self.catalog)
            if term_satisfies(name, cand)
        ]
        lit = self.cnf.aux_or(lits) if lits else self.cnf.false_lit
        self.filt[key] = lit
        return lit

    def _sigma_lit(self, a: int, b: int, strict: bool) -> int:
        """y <= z (or <) between slots a and b."""
        key = (a, b, strict)
        if key in self._sigma_cache:
            return self._sigma_cache[key]
        if self.mode == UNINTERPRETED:
            if a == b:
                lit = self.cnf.false_lit if strict else self.inb[a]
            else:
                lit = self.lt[(a, b)]
            self._sigma_cache[key] = lit
            return lit
        lit = self._sigma_canonical(a, b, strict)
        self._sigma_cache[key] = lit
        return lit

    def _verdict_ok(self, verdict: ComparisonVerdict, strict: bool) -> bool:
        if strict:
            return verdict is ComparisonVerdict.LT
        return verdict in (ComparisonVerdict.LT, ComparisonVerdict.EQ)

    def _sigma_canonical(self, a: int, b: int, strict: bool) -> int:
        ta, tb = self.slot_terms[a], self.slot_terms[b]
        if ta is not None and tb is not None:
            ok = self._verdict_ok(compare_terms(ta, tb), strict)
            return self.cnf.true_lit if ok else self.cnf.false_lit
        if ta is not None and tb is None:
            lits = [
                self.ch[(b, t)]
                for t, cand in enumerate(self.catalog)
                if self._verdict_ok(compare_terms(ta, cand), strict)
            ]
            return self.cnf.aux_or(lits) if lits else self.cnf.false_lit
        if ta is None and tb is not None:
            lits = [
                self.ch[(a, t)]
                for t, cand in enumerate(self.catalog)
                if self._verdict_ok(compare_terms(cand, tb), strict)
            ]
            return self.cnf.aux_or(lits) if lits else self.cnf.false_lit
        if a == b:
            verdicts = [
                self.ch[(a, t)]
                for t, cand in enumerate(self.catalog)
                if self._verdict_ok(compare_terms(cand, cand), strict)
            ]
            return self.cnf.aux_or(verdicts) if verdicts else self.cnf.false_lit
        pair_lits = []
        for t, cand_a in enumerate(self.catalog):
            for u, cand_b in enumerate(self.catalog):
                if t == u:
                    continue  # two slots never hold the same catalog term
                if self._verdict_ok(compare_terms(cand_a, cand_b), strict):
                    pair_lits.append(self.cnf.aux_and([self.ch[(a, t)], self.ch[(b, u)]]))
        return self.cnf.aux_or(pair_lits) if pair_lits else self.cnf.false_lit

    # ---- paths ------------------------------------------------------------

    def _rel_matrix(self, name: Term, inverted: bool) -> list[list[int]]:
        k = self.k
        if inverted:
            return [[self.rel[(name, j, i)] for j in range(k)] for i in range(k)]
        return [[self.rel[(name, i, j)] for j in range(k)] for i in range(k)]

    def _compose(self, left: list[list[int]], right: list[list[int]]) -> list[list[int]]:
        k = self.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                terms = [self.cnf.aux_and([left[i][m], right[m][j]]) for m in range(k)]
                row.append(self.cnf.aux_or(terms))
            out.append(row)
        return out

    def _union(self, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
        return [
            [self.cnf.aux_or([a[i][j], b[i][j]]) for j in range(self.k)] for i in range(self.k)
        ]

    def path_matrix(self, path: PathExpr) -> list[list[int]]:
        key = id(path)
        if key in self._path_mat:
            return self._path_mat[key]
        self._keepalive.append(path)
        if isinstance(path, Rel):
            mat = self._rel_matrix(path.name, path.inverted)
        elif isinstance(path, Seq):
            mat = self._compose(self.path_matrix(path.left), self.path_matrix(path.right))
        elif isinstance(path, Alt):
            mat = self._union(self.path_matrix(path.left), self.path_matrix(path.right))
        elif isinstance(path, Opt):
            inner = self.path_matrix(path.inner)
            mat = [
                [
                    self.cnf.true_lit if i == j else inner[i][j]
                    for j in range(self.k)
                ]
                for i in range(self.k)
            ]
        elif isinstance(path, Star):
            inner = self.path_matrix(path.inner)
            mat = [
                [self.cnf.true_lit if i == j else inner[i][j] for j in range(self.k)]
                for i in range(self.k)
            ]
            steps = 1
            while steps < self.k - 1:
                mat = self._compose(mat, mat)
                steps *= 2
        else:  # pragma: no cover
            raise TypeError(f"unknown path {path!r}")
        self._path_mat[key] = mat
        return mat

    # ---- formulas -----------------------------------------------------------

    def formula_lit(self, f: SclFormula, i: int) -> int:
        key = (id(f), i)
        if key in self._formula_lit:
            return self._formula_lit[key]
        self._keepalive.append(f)
        lit = self._formula_lit_raw(f, i)
        self._formula_lit[key] = lit
        return lit

    def _formula_lit_raw(self, f: SclFormula, x: int) -> int:
        cnf = self.cnf
        if isinstance(f, Top):
            return cnf.true_lit
        if isinstance(f, EqConst):
            return self._eq_const_lit(f.constant, x)
        if isinstance(f, Filter):
            return self._filter_lit(f.name, x)
        if isinstance(f, HasShape):
            if (f.shape, x) not in self.hs:
                raise KeyError(f"undefined shape name {f.shape}")
            return self.hs[(f.shape, x)]
        if isinstance(f, Not):
            return -self.formula_lit(f.body, x)
        if isinstance(f, And):
            return cnf.aux_and([self.formula_lit(f.left, x), self.formula_lit(f.right, x)])
        if isinstance(f, CountExists):
            mat = self.path_matrix(f.path)
            hits = [
                cnf.aux_and([mat[x][j], self.formula_lit(f.body, j)]) for j in range(self.k)
            ]
            if f.threshold > self.k:
                return cnf.false_lit
            if f.threshold == 1:
                return cnf.aux_or(hits)
            options = [
                cnf.aux_and(list(subset)) for subset in combinations(hits, f.threshold)
            ]
            return cnf.aux_or(options)
        if isinstance(f, Disjoint):
            mat = self.path_matrix(f.path)
            rel = self._rel_matrix(f.relation, False)
            overlap = [cnf.aux_and([mat[x][j], rel[x][j]]) for j in range(self.k)]
            return -cnf.aux_or(overlap)
        if isinstance(f, Equals):
            mat = self.path_matrix(f.path)
            rel = self._rel_matrix(f.relation, False)
            agrees = [cnf.aux_iff(mat[x][j], rel[x][j]) for j in range(self.k)]
            return cnf.aux_and(agrees)
        if isinstance(f, OrderCmp):
            mat = self.path_matrix(f.path)
            rel = self._rel_matrix(f.relation, False)
            checks = []
            for j in range(self.k):
                for l in range(self.k):
                    a, b = (l, j) if f.inverted else (j, l)
                    sigma = self._sigma_lit(a, b, f.strict)
                    checks.append(cnf.aux_or([-mat[x][j], -rel[x][l], sigma]))
            return cnf.aux_and(checks)
        raise TypeError(f"unknown formula {f!r}")

    # ---- sentences -------------------------------------------------------------

    def sentence_lit(self, part: SclSentence) -> int:
        cnf = self.cnf
        if isinstance(part, AtConst):
            if self.mode == CANONICAL:
                return self.formula_lit(part.body, self.const_slot[part.constant])
            per_slot = [
                cnf.aux_or([-self.den[(part.constant, i)], self.formula_lit(part.body, i)])
                for i in range(self.k)
            ]
            return cnf.aux_and(per_slot)
        if isinstance(part, ForClass):
            is_a = iri(ns.RDF_TYPE)
            checks = []
            if self.mode == CANONICAL:
                c = self.const_slot[part.cls]
                for i in range(self.k):
                    checks.append(
                        cnf.aux_or([-self.rel[(is_a, i, c)], self.formula_lit(part.body, i)])
                    )
            else:
                for i in range(self.k):
                    for j in range(self.k):
                        checks.append(
                            cnf.aux_or(
                                [
                                    -self.rel[(is_a, i, j)],
                                    -self.den[(part.cls, j)],
                                    self.formula_lit(part.body, i),
                                ]
                            )
                        )
            return cnf.aux_and(checks)
        if isinstance(part, ForSubjectsOf):
            checks = []
            for i in range(self.k):
                for j in range(self.k):
                    edge = (
                        self.rel[(part.relation, j, i)]
                        if part.inverted
                        else self.rel[(part.relation, i, j)]
                    )
                    checks.append(cnf.aux_or([-edge, self.formula_lit(part.body, i)]))
            return cnf.aux_and(checks)
        if isinstance(part, ShapeDef):
            checks = [
                cnf.aux_iff(self.hs[(part.name, i)], self.formula_lit(part.body, i))
                for i in range(self.k)
            ]
            return cnf.aux_and(checks)
        if isinstance(part, AtMostGlobal):
            hits = [self.formula_lit(part.body, i) for i in range(self.k)]
            violations = [
                cnf.aux_and(list(subset)) for subset in combinations(hits, part.bound + 1)
            ]
            if not violations:
                return cnf.true_lit
            return -cnf.aux_or(violations)
        raise TypeError(f"unknown sentence {part!r}")

    def _assert_sentence(self) -> None:
        for part in conjuncts(self.sentence):
            self.cnf.add([self.sentence_lit(part)])

    # ---- symmetry ----------------------------------------------------------------

    def _permuted_var(self, var_key, swap: tuple[int, int]):
        a, b = swap

        def sigma(i: int) -> int:
            return b if i == a else a if i == b else i

        kind, payload = var_key
        if kind == "den":
            c, i = payload
            return ("den", (c, sigma(i)))
        if kind == "rel":
            r, i, j = payload
            return ("rel", (r, sigma(i), sigma(j)))
        if kind == "filt":
            f, i = payload
            return ("filt", (f, sigma(i)))
        if kind == "inb":
            return ("inb", sigma(payload))
        if kind == "sb":
            i, j = payload
            x, y = sigma(i), sigma(j)
            return ("sb", (min(x, y), max(x, y)))
        if kind == "lt":
            i, j = payload
            return ("lt", (sigma(i), sigma(j)))
        raise KeyError(kind)

    def _symmetry_leader(self) -> None:
        """Lexicographic leader constraints for adjacent slot swaps."""
        var_key: dict[int, tuple] = {}
        for (c, i), v in self.den.items():
            var_key[v] = ("den", (c, i))
        for (r, i, j), v in self.rel.items():
            var_key[v] = ("rel", (r, i, j))
        for (f, i), v in self.filt.items():
            var_key[v] = ("filt", (f, i))
        for i, v in self.inb.items():
            var_key[v] = ("inb", i)
        for (i, j), v in self.sb.items():
            var_key[v] = ("sb", (i, j))
        for (i, j), v in self.lt.items():
            var_key[v] = ("lt", (i, j))
        lookup = {key: var for var, key in var_key.items()}

        for e in range(self.k - 1):
            swap = (e, e + 1)
            prefix_eq = self.cnf.true_lit
            for var in self.decision_vars:
                key = var_key.get(var)
                if key is None:
                    continue
                other = lookup[self._permuted_var(key, swap)]
                if other == var:
                    continue
                # both positions compare under the current position's
                # preference polarity: bit_t(M) <= bit_t(swapped M)
                if self.preferred.get(var, False):
                    bit, other_bit = -var, -other
                else:
                    bit, other_bit = var, other
                self.cnf.add([-prefix_eq, -bit, other_bit])
                prefix_eq = self.cnf.aux_and([prefix_eq, self.cnf.aux_iff(var, other)])

    # ---- decode ---------------------------------------------------------------------

    def decode(self, assignment: list[int]) -> FiniteStructure:
        def truth(lit: int) -> bool:
            if lit == self.cnf.true_lit:
                return True
            if lit == self.cnf.false_lit:
                return False
            return assignment[abs(lit)] == (1 if lit > 0 else -1)

        if self.mode == CANONICAL:
            terms: list[Term] = []
            for s in range(self.k):
                if self.slot_terms[s] is not None:
                    terms.append(self.slot_terms[s])
                else:
                    chosen = None
                    for t in range(len(self.catalog)):
                        if truth(self.ch[(s, t)]):
                            chosen = self.catalog[t]
                            break
                    if chosen is None:  # pragma: no cover - exactly-one guarantees
                        raise ModelConfirmationError("free slot without a term")
                    terms.append(chosen)
            constants_map: dict[Term, Term] = {}
            filter_interp = None
            order_blocks = None
        else:
            terms = [iri(f"{ns.GEN_NS}elem:{i}") for i in range(self.k)]
            constants_map = {}
            for c in self.constants:
                for i in range(self.k):
                    if truth(self.den[(c, i)]):
                        constants_map[c] = terms[i]
                        break
            filter_interp = {
                f: frozenset(
                    terms[i] for i in range(self.k) if truth(self.filt[(f, i)])
                )
                for f in self.filters
            }
            order_blocks = self._decode_blocks(truth, terms)

        relations = {}
        for r in self.relations:
            pairs = {
                (terms[i], terms[j])
                for i in range(self.k)
                for j in range(self.k)
                if truth(self.rel[(r, i, j)])
            }
            if pairs:
                relations[r] = frozenset(pairs)
        has_shape = frozenset(
            (terms[i], name)
            for (name, i), var in self.hs.items()
            if truth(var)
        )
        return FiniteStructure(
            domain=tuple(terms),
            relations=relations,
            has_shape=has_shape,
            filter_interp=filter_interp,
            order_blocks=order_blocks,
            constants=constants_map,
        )

    def _decode_blocks(self, truth, terms: list[Term]) -> Optional[tuple[OrderBlock, ...]]:
        if not self.order_needed:
            return ()
        members = [i for i in range(self.k) if truth(self.inb[i])]
        blocks: list[list[int]] = []
        seen: set[int] = set()
        for i in members:
            if i in seen:
                continue
            block = [i]
            seen.add(i)
            for j in members:
                if j in seen or j == i:
                    continue
                a, b = min(i, j), max(i, j)
                if truth(self.sb[(a, b)]):
                    block.append(j)
                    seen.add(j)
            blocks.append(block)
        out = []
        for b, block in enumerate(blocks):
            ordered = sorted(
                block,
                key=lambda i: sum(
                    1 for j in block if j != i and truth(self.lt[(j, i)])
                ),
            )
            out.append(OrderBlock(f"block{b}", tuple(terms[i] for i in ordered)))
        return tuple(out)


# --------------------------------------------------------------------------
# Public entry points
# --------------------------------------------------------------------------


def bounded_sat(
    sentence: SclSentence,
    max_domain: int = 4,
    budget: float = 10.0,
    mode: str = CANONICAL,
    minimize: bool = True,
    extra_clause_builder=None,
) -> SatVerdict:
    """Search for a model with at most `max_domain` elements.

    Returns the canonically least model over the smallest satisfiable
    domain size, UnsatUpTo(max_domain) when sizes 1..max_domain are
    exhausted, or Aborted on budget exhaustion.
    """
    deadline = time.monotonic() + budget if budget else None
    constants = node_constants(sentence)
    lower = 1
    if mode == CANONICAL:
        lower = max(1, len(constants))
        if lower > max_domain:
            return SatVerdict("UnsatUpTo", bound=max_domain)
    try:
        for k in range(lower, max_domain + 1):
            grounder = _Grounder(sentence, k, mode)
            if extra_clause_builder is not None:
                extra_clause_builder(grounder)
            assignment = _solve_lex_least(
                grounder.cnf.n_vars,
                grounder.cnf.clauses,
                grounder.decision_vars,
                grounder.preferred,
                deadline,
                minimize,
            )
            if assignment is None:
                continue
            structure = grounder.decode(assignment)
            confirmed = compute_shape_assignment(
                FiniteStructure(
                    domain=structure.domain,
                    relations=structure.relations,
                    filter_interp=structure.filter_interp,
                    order_blocks=structure.order_blocks,
                    constants=structure.constants,
                ),
                _definitions_of(sentence),
            )
            if not Evaluator(confirmed).sentence(sentence):
                raise ModelConfirmationError(
                    "decoded model failed re-evaluation at size %d" % k
                )
            return SatVerdict("Sat", model=confirmed)
        return SatVerdict("UnsatUpTo", bound=max_domain)
    except SearchBudgetExceeded:
        return SatVerdict("Aborted", reason="budget exhausted")


def _definitions_of(sentence: SclSentence) -> SclSentence:
    from .translate import extract_definitions

    return extract_definitions(sentence)
