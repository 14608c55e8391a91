"""Covering-grammar construction for error-correcting parsing.

Starting from a CNF grammar, every way an input string can deviate from
the language is priced into the grammar itself: one new nonterminal
("Skip") derives any single input character at cost 1, a second
("Skips") derives a run of them, and every nonterminal with a terminal
production learns to absorb adjacent runs, to stand for a wrong
character, or to stand for a missing one.  Epsilon and unit productions
introduced along the way are then folded out so the result is CNF with
costs, which is what the chart algorithms consume.

Every production carries a repair template describing, left to right,
how its expansion maps onto the input: which characters match, which
input characters are dropped, which are rewritten, and which corrected
characters appear out of thin air.  Templates are what turn a minimum
cost parse back into a corrected string plus an edit script.

Template items:
    ("match",)      copy the current input character
    ("consume",)    drop the current input character
    ("sub", c)      rewrite the current input character to c
    ("emit", c)     produce c without touching the input
    ("child", k)    splice in the k-th right-hand-side symbol
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .grammar import (
    AlphabetError,
    EmptyLanguageError,
    GrammarError,
    Production,
    Symbol,
    WeightedGrammar,
    nt,
    t,
    to_cnf,
)

Template = tuple[tuple, ...]

# cost infinity: larger than any real repair cost, small enough that sums
# of a few of them stay well inside int64
INF = 1 << 40

MATCH: tuple = ("match",)
CONSUME: tuple = ("consume",)


def emit(ch: str) -> tuple:
    return ("emit", ch)


def sub(ch: str) -> tuple:
    return ("sub", ch)


def child(k: int) -> tuple:
    return ("child", k)


def template_cost(tpl: Template) -> int:
    """Each priced unit of a production is exactly one edit in its template."""
    return sum(item[0] in ("consume", "sub", "emit") for item in tpl)


@dataclass(frozen=True)
class NullInfo:
    nonterminal: str
    mnullcount: int
    witness: str


@dataclass(frozen=True)
class ErrorGrammar:
    """Intermediate pipeline state: weighted productions plus repair templates."""

    grammar: WeightedGrammar
    annotations: Mapping[Production, Template]
    skip_one: str
    skip_run: str


@dataclass(frozen=True)
class CoveringGrammar:
    """CNF-with-costs grammar ready for the chart algorithms.

    grammar:     epsilon-free, unit-free, deduplicated weighted CNF
    annotations: repair template per production
    nullinfo:    cheapest way each original nonterminal derives nothing
    base:        the CNF grammar the covering was built from
    """

    grammar: WeightedGrammar
    annotations: Mapping[Production, Template]
    nullinfo: Mapping[str, NullInfo]
    base: WeightedGrammar
    skip_one: str = "Skip"
    skip_run: str = "Skips"

    # --- derived lookup structures used by the hot paths ---

    @cached_property
    def nt_names(self) -> tuple[str, ...]:
        return tuple(sorted(self.grammar.nonterminals))

    @cached_property
    def nt_id(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.nt_names)}

    @property
    def num_nt(self) -> int:
        return len(self.nt_names)

    @cached_property
    def start_id(self) -> int:
        return self.nt_id[self.grammar.start]

    @cached_property
    def binary_prods(self) -> tuple[tuple[int, int, int, int], ...]:
        """(lhs_id, left_id, right_id, cost) per binary production, sorted."""
        out = []
        for p in self.grammar.productions:
            if len(p.rhs) == 2:
                out.append(
                    (
                        self.nt_id[p.lhs],
                        self.nt_id[p.rhs[0].name],
                        self.nt_id[p.rhs[1].name],
                        p.cost,
                    )
                )
        return tuple(out)

    @cached_property
    def binary_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        lhs, left, right, cost = zip(*self.binary_prods)
        return (
            np.array(lhs, dtype=np.int64),
            np.array(left, dtype=np.int64),
            np.array(right, dtype=np.int64),
            np.array(cost, dtype=np.int64),
        )

    @cached_property
    def binary_pairs(self) -> tuple[tuple[int, int], ...]:
        """Distinct (left_id, right_id) pairs appearing in binary productions."""
        return tuple(sorted({(b, c) for _, b, c, _ in self.binary_prods}))

    @cached_property
    def terminal_by_char(self) -> dict[str, tuple[tuple[int, int], ...]]:
        """char -> ((lhs_id, cost), ...) over terminal productions."""
        out: dict[str, list[tuple[int, int]]] = {ch: [] for ch in self.grammar.terminals}
        for p in self.grammar.productions:
            if len(p.rhs) == 1:
                out[p.rhs[0].name].append((self.nt_id[p.lhs], p.cost))
        return {ch: tuple(v) for ch, v in out.items()}

    @cached_property
    def binary_by_lhs(self) -> dict[int, tuple[tuple[Production, int, int, int], ...]]:
        """lhs_id -> ((production, left_id, right_id, cost), ...), sorted."""
        out: dict[int, list] = {}
        for p in self.grammar.productions:
            if len(p.rhs) == 2:
                out.setdefault(self.nt_id[p.lhs], []).append(
                    (p, self.nt_id[p.rhs[0].name], self.nt_id[p.rhs[1].name], p.cost)
                )
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def terminal_by_lhs_char(self) -> dict[tuple[int, str], tuple[Production, ...]]:
        out: dict[tuple[int, str], list[Production]] = {}
        for p in self.grammar.productions:
            if len(p.rhs) == 1:
                out.setdefault((self.nt_id[p.lhs], p.rhs[0].name), []).append(p)
        return {k: tuple(v) for k, v in out.items()}

    def check_alphabet(self, s: str) -> None:
        for ch in s:
            if ch not in self.grammar.terminals:
                raise AlphabetError(
                    f"input character {ch!r} is not in the grammar alphabet"
                )


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    i = 2
    while name in taken:
        name = f"{base}{i}"
        i += 1
    taken.add(name)
    return name


# === stage 1: error productions ===


def add_error_productions(g: WeightedGrammar) -> ErrorGrammar:
    """Augment a CNF grammar with priced productions for every repair.

    Adds, writing R for the run symbol and D for the single-skip symbol:
      R -> R D | D, D ->(1) c for every terminal c        (dropped runs)
    and for every base terminal production A -> a:
      A ->(1) b for every other terminal b                (rewrites)
      A ->(1) eps                                         (missing a)
      A -> A R | R A                                      (adjacent runs)
    """
    if any(p.cost != 0 for p in g.productions):
        raise GrammarError("error productions expect an unweighted CNF base")
    taken = set(g.nonterminals) | set(g.terminals)
    skip_run = _fresh("Skips", taken)
    skip_one = _fresh("Skip", taken)

    entries: dict[tuple[str, tuple[Symbol, ...]], tuple[int, Template]] = {}

    def put(lhs: str, rhs: tuple[Symbol, ...], cost: int, tpl: Template) -> None:
        old = entries.get((lhs, rhs))
        if old is None or cost < old[0]:
            entries[(lhs, rhs)] = (cost, tpl)

    for p in g.productions:
        if len(p.rhs) == 2:
            put(p.lhs, p.rhs, 0, (child(0), child(1)))
        else:
            put(p.lhs, p.rhs, 0, (MATCH,))

    alphabet = sorted(g.terminals)
    put(skip_run, (nt(skip_run), nt(skip_one)), 0, (child(0), child(1)))
    put(skip_run, (nt(skip_one),), 0, (child(0),))
    for ch in alphabet:
        put(skip_one, (t(ch),), 1, (CONSUME,))

    for p in sorted(g.productions, key=Production.key):
        if len(p.rhs) != 1:
            continue
        a = p.rhs[0].name
        for b in alphabet:
            if b != a:
                put(p.lhs, (t(b),), 1, (sub(a),))
        put(p.lhs, (), 1, (emit(a),))
        put(p.lhs, (nt(p.lhs), nt(skip_run)), 0, (child(0), child(1)))
        put(p.lhs, (nt(skip_run), nt(p.lhs)), 0, (child(0), child(1)))

    prods = {}
    annotations = {}
    for (lhs, rhs), (cost, tpl) in entries.items():
        prod = Production(lhs, rhs, cost)
        prods[(lhs, rhs)] = prod
        annotations[prod] = tpl
    grammar = WeightedGrammar.make(g.start, prods.values())
    return ErrorGrammar(grammar, annotations, skip_one, skip_run)


# === stage 2: null costs ===


def compute_nullables(eg: ErrorGrammar) -> dict[str, NullInfo]:
    """Cheapest cost (and lexicographically least witness) of deriving nothing.

    Fixpoint over productions whose right-hand sides are entirely nullable
    nonterminals; the only priced steps are the epsilon productions, each
    of which contributes exactly one emitted character, so witness length
    always equals the cost and the relaxation terminates.
    """
    best: dict[str, tuple[int, str]] = {}
    prods = [p for p in eg.grammar.productions if all(not s.terminal for s in p.rhs)]
    changed = True
    while changed:
        changed = False
        for p in prods:
            infos = []
            ok = True
            for s in p.rhs:
                got = best.get(s.name)
                if got is None:
                    ok = False
                    break
                infos.append(got)
            if not ok:
                continue
            cost = p.cost + sum(c for c, _ in infos)
            parts = []
            for item in eg.annotations[p]:
                if item[0] == "emit":
                    parts.append(item[1])
                elif item[0] == "child":
                    parts.append(infos[item[1]][1])
                else:
                    raise AssertionError(f"input-consuming item in nullable rule {p!r}")
            witness = "".join(parts)
            old = best.get(p.lhs)
            if old is None or (cost, witness) < old:
                best[p.lhs] = (cost, witness)
                changed = True
    return {
        name: NullInfo(name, cost, witness)
        for name, (cost, witness) in sorted(best.items())
    }


# === stage 3: epsilon elimination ===


def eliminate_epsilon(eg: ErrorGrammar, nulls: Mapping[str, NullInfo]) -> ErrorGrammar:
    """Replace nullable children of binary rules with priced unit rules.

    For A ->(k) B C, a nullable B yields A ->(k + nullcost(B)) C with B's
    witness emitted on the left, and symmetrically for C; both are added
    when both children are nullable.  All epsilon productions then go away
    (their effect survives in the null info and in the new unit rules).
    """
    entries: dict[tuple[str, tuple[Symbol, ...]], tuple[int, Template]] = {}

    def put(lhs: str, rhs: tuple[Symbol, ...], cost: int, tpl: Template) -> None:
        old = entries.get((lhs, rhs))
        if old is None or cost < old[0]:
            entries[(lhs, rhs)] = (cost, tpl)

    for p in eg.grammar.productions:
        if len(p.rhs) == 0:
            continue
        put(p.lhs, p.rhs, p.cost, eg.annotations[p])

    for p in eg.grammar.productions:
        if len(p.rhs) != 2:
            continue
        left, right = p.rhs[0].name, p.rhs[1].name
        if left in nulls:
            info = nulls[left]
            tpl = tuple(emit(ch) for ch in info.witness) + (child(0),)
            put(p.lhs, (p.rhs[1],), p.cost + info.mnullcount, tpl)
        if right in nulls:
            info = nulls[right]
            tpl = (child(0),) + tuple(emit(ch) for ch in info.witness)
            put(p.lhs, (p.rhs[0],), p.cost + info.mnullcount, tpl)

    prods = {}
    annotations = {}
    for (lhs, rhs), (cost, tpl) in entries.items():
        prod = Production(lhs, rhs, cost)
        prods[(lhs, rhs)] = prod
        annotations[prod] = tpl
    grammar = WeightedGrammar.make(eg.grammar.start, prods.values())
    return ErrorGrammar(grammar, annotations, eg.skip_one, eg.skip_run)


# === stage 4: unit elimination ===


def _compose(outer: Template, inner: Template) -> Template:
    """Substitute inner for the single child slot of a unit-rule template."""
    out: list[tuple] = []
    spliced = False
    for item in outer:
        if item[0] == "child":
            assert not spliced, "unit template with two child slots"
            out.extend(inner)
            spliced = True
        else:
            out.append(item)
    assert spliced, "unit template without a child slot"
    return tuple(out)


def _unit_closure(
    units: Mapping[str, list[tuple[int, str, Template]]], source: str
) -> dict[str, tuple[int, Template]]:
    """Dijkstra over unit rules: cheapest chain and its composed template."""
    best: dict[str, tuple[int, Template]] = {source: (0, (child(0),))}
    heap: list[tuple[int, str]] = [(0, source)]
    done: set[str] = set()
    while heap:
        dist, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        dist, tpl = best[u]
        for cost, v, etpl in units.get(u, ()):
            cand = dist + cost
            got = best.get(v)
            if got is None or cand < got[0]:
                best[v] = (cand, _compose(tpl, etpl))
                heapq.heappush(heap, (cand, v))
    return best


def eliminate_units(
    eg: ErrorGrammar, nulls: Mapping[str, NullInfo], base: WeightedGrammar
) -> CoveringGrammar:
    """Fold every cheapest unit chain into the non-unit rules it reaches.

    For each nonterminal the cheapest chain to every other nonterminal is
    combined with each of the target's non-unit productions, costs added
    and templates composed; per left/right pair only the cheapest
    surviving production is kept, and unit rules are dropped.
    """
    units: dict[str, list[tuple[int, str, Template]]] = {}
    nonunits: dict[str, list[tuple[Production, Template]]] = {}
    for p in eg.grammar.productions:
        if len(p.rhs) == 1 and not p.rhs[0].terminal:
            units.setdefault(p.lhs, []).append(
                (p.cost, p.rhs[0].name, eg.annotations[p])
            )
        else:
            if len(p.rhs) == 0:
                raise GrammarError("unit elimination ran before epsilon elimination")
            nonunits.setdefault(p.lhs, []).append((p, eg.annotations[p]))
    for edges in units.values():
        edges.sort(key=lambda e: (e[0], e[1]))

    entries: dict[tuple[str, tuple[Symbol, ...]], tuple[int, Template]] = {}

    def put(lhs: str, rhs: tuple[Symbol, ...], cost: int, tpl: Template) -> None:
        old = entries.get((lhs, rhs))
        if old is None or cost < old[0]:
            entries[(lhs, rhs)] = (cost, tpl)

    for source in sorted(eg.grammar.nonterminals):
        closure = _unit_closure(units, source)
        for target in sorted(closure):
            dist, chain_tpl = closure[target]
            for p, tpl in nonunits.get(target, ()):
                put(source, p.rhs, dist + p.cost, _compose(chain_tpl, tpl))

    prods = {}
    annotations = {}
    for (lhs, rhs), (cost, tpl) in entries.items():
        prod = Production(lhs, rhs, cost)
        prods[(lhs, rhs)] = prod
        annotations[prod] = tpl
    grammar = WeightedGrammar.make(eg.grammar.start, prods.values())

    for p in grammar.productions:
        tpl = annotations[p]
        if template_cost(tpl) != p.cost:
            raise AssertionError(
                f"template of {p!r} prices {template_cost(tpl)} edits, cost is {p.cost}"
            )
        if len(p.rhs) == 1 and not p.rhs[0].terminal:
            raise AssertionError(f"unit production survived elimination: {p!r}")
        if len(p.rhs) == 0:
            raise AssertionError(f"epsilon production survived elimination: {p!r}")

    return CoveringGrammar(
        grammar=grammar,
        annotations=annotations,
        nullinfo=dict(nulls),
        base=base,
        skip_one=eg.skip_one,
        skip_run=eg.skip_run,
    )


# === pipeline ===


def _check_nonempty(g: WeightedGrammar) -> None:
    generating: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs in generating:
                continue
            if all(s.terminal or s.name in generating for s in p.rhs):
                if len(p.rhs) > 0:
                    generating.add(p.lhs)
                    changed = True
    if g.start not in generating:
        raise EmptyLanguageError("empty language")


def build_covering(g: WeightedGrammar) -> CoveringGrammar:
    """CNF-convert, inject error productions, fold out epsilon and units."""
    cnf = to_cnf(g)
    _check_nonempty(cnf)
    eg = add_error_productions(cnf)
    nulls = compute_nullables(eg)
    eg2 = eliminate_epsilon(eg, nulls)
    return eliminate_units(eg2, nulls, cnf)
