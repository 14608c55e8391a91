"""Context-free grammar model, text format, CNF conversion, membership.

Grammar files are UTF-8 text::

    # comment
    start: S
    S -> A A1 | A B
    A1 -> S B
    A -> 'a'
    B -> 'b'

A production line is ``NT -> alt | alt``.  Each alternative is a
whitespace-separated mix of nonterminal identifiers and single-quoted
terminal characters; the keyword ``eps`` denotes the empty alternative.
Nonterminals are declared by appearing on a left-hand side.  Terminals
are single characters.  Languages handled here are character-level and
must not contain the empty string.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping


class GrammarError(ValueError):
    """Raised for malformed grammar text or unusable grammars."""


class EmptyLanguageError(GrammarError):
    """Raised when the grammar derives no terminal string at all."""


class AlphabetError(ValueError):
    """Raised when an input string uses characters outside the alphabet."""


@dataclass(frozen=True, slots=True)
class Symbol:
    """Terminal character or nonterminal name; the two namespaces are disjoint."""

    terminal: bool
    name: str

    def __repr__(self) -> str:
        return f"'{self.name}'" if self.terminal else self.name

    def key(self) -> tuple[bool, str]:
        return (self.terminal, self.name)


def t(ch: str) -> Symbol:
    return Symbol(True, ch)


def nt(name: str) -> Symbol:
    return Symbol(False, name)


@dataclass(frozen=True, slots=True)
class Production:
    lhs: str
    rhs: tuple[Symbol, ...]
    cost: int = 0

    def __repr__(self) -> str:
        body = " ".join(repr(s) for s in self.rhs) if self.rhs else "eps"
        mark = f" +{self.cost}" if self.cost else ""
        return f"<{self.lhs} -> {body}{mark}>"

    def key(self) -> tuple:
        return (self.lhs, tuple(s.key() for s in self.rhs), self.cost)


def _sorted_productions(productions: Iterable[Production]) -> tuple[Production, ...]:
    return tuple(sorted(productions, key=Production.key))


@dataclass(frozen=True)
class WeightedGrammar:
    """A CFG with a nonnegative integer cost on every production.

    ``productions`` is kept deduplicated (minimum cost per distinct
    left/right pair) and in sorted order so that every downstream
    computation is deterministic.
    """

    start: str
    terminals: frozenset[str]
    nonterminals: frozenset[str]
    productions: tuple[Production, ...]

    @staticmethod
    def make(start: str, productions: Iterable[Production]) -> "WeightedGrammar":
        """Validate, deduplicate (min cost wins) and sort the productions."""
        by_shape: dict[tuple[str, tuple], Production] = {}
        for p in sorted(productions, key=Production.key):
            if p.cost < 0:
                raise GrammarError(f"negative cost on production {p!r}")
            shape = (p.lhs, tuple(s.key() for s in p.rhs))
            old = by_shape.get(shape)
            if old is None or p.cost < old.cost:
                by_shape[shape] = p
        prods = _sorted_productions(by_shape.values())
        nonterminals = frozenset(p.lhs for p in prods)
        terminals = frozenset(
            s.name for p in prods for s in p.rhs if s.terminal
        )
        if start not in nonterminals:
            raise GrammarError(f"start symbol {start!r} has no productions")
        for p in prods:
            for s in p.rhs:
                if s.terminal:
                    if len(s.name) != 1:
                        raise GrammarError(
                            f"terminal {s.name!r} is not a single character"
                        )
                else:
                    if s.name not in nonterminals:
                        raise GrammarError(f"undeclared nonterminal {s.name!r}")
        clash = terminals & nonterminals
        if clash:
            raise GrammarError(
                f"names used both as terminal and nonterminal: {sorted(clash)}"
            )
        return WeightedGrammar(start, terminals, nonterminals, prods)

    def by_lhs(self) -> Mapping[str, tuple[Production, ...]]:
        out: dict[str, list[Production]] = {n: [] for n in self.nonterminals}
        for p in self.productions:
            out[p.lhs].append(p)
        return {k: tuple(v) for k, v in out.items()}

    def __hash__(self) -> int:
        return hash((self.start, self.terminals, self.nonterminals, self.productions))


# === text format ===

_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_QUOTED_RE = re.compile(r"^'(.)'$")


def _strip_comment(line: str) -> str:
    # terminals are single quoted chars, so '#' can only introduce a comment
    # when it is not the quoted char itself
    out = []
    i = 0
    while i < len(line):
        ch = line[i]
        if ch == "#" and not (i >= 1 and line[i - 1] == "'" and line[i : i + 2] == "#'"):
            break
        out.append(ch)
        i += 1
    return "".join(out)


def parse_grammar(text: str) -> WeightedGrammar:
    """Parse grammar text; reject bad syntax, undeclared names and eps in L(G)."""
    start: str | None = None
    raw_rules: list[tuple[int, str, list[list[str]]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("start:"):
            if start is not None:
                raise GrammarError(f"line {lineno}: duplicate start declaration")
            start = line[len("start:") :].strip()
            if not _ID_RE.match(start):
                raise GrammarError(f"line {lineno}: bad start symbol {start!r}")
            continue
        if "->" not in line:
            raise GrammarError(f"line {lineno}: expected 'NT -> ...' in {line!r}")
        lhs_txt, rhs_txt = line.split("->", 1)
        lhs = lhs_txt.strip()
        if not _ID_RE.match(lhs) or lhs == "eps":
            raise GrammarError(f"line {lineno}: bad nonterminal name {lhs!r}")
        alts = [alt.strip().split() for alt in rhs_txt.split("|")]
        if any(not alt for alt in alts):
            raise GrammarError(f"line {lineno}: empty alternative")
        raw_rules.append((lineno, lhs, alts))
    if start is None:
        raise GrammarError("missing 'start: <NT>' header line")
    if not raw_rules:
        raise GrammarError("grammar has no productions")

    declared = {lhs for _, lhs, _ in raw_rules}
    productions: list[Production] = []
    for lineno, lhs, alts in raw_rules:
        for alt in alts:
            if alt == ["eps"]:
                productions.append(Production(lhs, ()))
                continue
            rhs: list[Symbol] = []
            for tok in alt:
                m = _QUOTED_RE.match(tok)
                if m:
                    rhs.append(t(m.group(1)))
                elif _ID_RE.match(tok) and tok != "eps":
                    if tok not in declared:
                        raise GrammarError(
                            f"line {lineno}: undeclared symbol {tok!r}"
                        )
                    rhs.append(nt(tok))
                else:
                    raise GrammarError(f"line {lineno}: bad token {tok!r}")
            productions.append(Production(lhs, tuple(rhs)))
    g = WeightedGrammar.make(start, productions)
    if start not in g.nonterminals:
        raise GrammarError(f"start symbol {start!r} has no productions")
    if g.start in _nullable_names(g):
        raise GrammarError("language contains epsilon")
    return g


def load_grammar(path: str | Path) -> WeightedGrammar:
    return parse_grammar(Path(path).read_text(encoding="utf-8"))


# === CNF conversion ===


def _nullable_names(g: WeightedGrammar) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs in nullable:
                continue
            if all((not s.terminal) and s.name in nullable for s in p.rhs):
                nullable.add(p.lhs)
                changed = True
    return nullable


def _fresh_names(taken: set[str]):
    i = 1
    while True:
        name = f"X{i}"
        i += 1
        if name not in taken:
            taken.add(name)
            yield name


def is_cnf(g: WeightedGrammar) -> bool:
    for p in g.productions:
        if len(p.rhs) == 1 and p.rhs[0].terminal:
            continue
        if len(p.rhs) == 2 and not p.rhs[0].terminal and not p.rhs[1].terminal:
            continue
        return False
    return True


def to_cnf(g: WeightedGrammar) -> WeightedGrammar:
    """Chomsky normal form for an epsilon-free cost-zero language.

    Order: epsilon elimination, long-rule breakup with deterministic fresh
    names (X1, X2, ...), terminal promotion inside two-symbol rules, unit
    elimination.  A grammar already in CNF comes back unchanged.
    """
    if any(p.cost != 0 for p in g.productions):
        raise GrammarError("to_cnf expects an unweighted grammar")
    if g.start in _nullable_names(g):
        raise GrammarError("language contains epsilon")
    if is_cnf(g):
        return g

    # epsilon elimination: expand over nullable rhs occurrences
    nullable = _nullable_names(g)
    expanded: set[tuple[str, tuple[Symbol, ...]]] = set()
    for p in g.productions:
        slots = [i for i, s in enumerate(p.rhs) if not s.terminal and s.name in nullable]
        for mask in range(1 << len(slots)):
            drop = {slots[b] for b in range(len(slots)) if mask >> b & 1}
            rhs = tuple(s for i, s in enumerate(p.rhs) if i not in drop)
            if rhs:
                expanded.add((p.lhs, rhs))
    rules = sorted(expanded, key=lambda r: (r[0], tuple(s.key() for s in r[1])))

    # long-rule breakup
    taken = {x for x, _ in rules} | set(g.nonterminals) | {"eps"}
    fresh = _fresh_names(taken)
    short: list[tuple[str, tuple[Symbol, ...]]] = []
    for lhs, rhs in rules:
        while len(rhs) > 2:
            aux = next(fresh)
            short.append((lhs, (rhs[0], nt(aux))))
            lhs, rhs = aux, rhs[1:]
        short.append((lhs, rhs))

    # terminal promotion inside two-symbol rules
    promoted: dict[str, str] = {}
    final: list[tuple[str, tuple[Symbol, ...]]] = []
    for lhs, rhs in short:
        if len(rhs) == 2:
            fixed = []
            for s in rhs:
                if s.terminal:
                    if s.name not in promoted:
                        promoted[s.name] = next(fresh)
                        final.append((promoted[s.name], (s,)))
                    fixed.append(nt(promoted[s.name]))
                else:
                    fixed.append(s)
            final.append((lhs, tuple(fixed)))
        else:
            final.append((lhs, rhs))

    # unit elimination via reachability over unit rules
    units: dict[str, set[str]] = {}
    nonunit: list[tuple[str, tuple[Symbol, ...]]] = []
    for lhs, rhs in final:
        if len(rhs) == 1 and not rhs[0].terminal:
            units.setdefault(lhs, set()).add(rhs[0].name)
        else:
            nonunit.append((lhs, rhs))
    reach: dict[str, set[str]] = {}

    def reachable(a: str) -> set[str]:
        if a in reach:
            return reach[a]
        seen = {a}
        frontier = [a]
        while frontier:
            u = frontier.pop()
            for v in units.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        reach[a] = seen
        return seen

    result: set[tuple[str, tuple[Symbol, ...]]] = set()
    heads = {lhs for lhs, _ in final}
    for a in heads:
        for b in reachable(a):
            for lhs, rhs in nonunit:
                if lhs == b:
                    result.add((a, rhs))

    # a symbol left without productions derives nothing; rules that mention
    # it are dead and must go, possibly emptying further symbols
    while True:
        alive = {lhs for lhs, _ in result}
        pruned = {
            (lhs, rhs)
            for lhs, rhs in result
            if all(s.terminal or s.name in alive for s in rhs)
        }
        if pruned == result:
            break
        result = pruned
    if not any(lhs == g.start for lhs, _ in result):
        raise EmptyLanguageError("empty language")

    out = WeightedGrammar.make(
        g.start, [Production(lhs, rhs) for lhs, rhs in result]
    )
    if not is_cnf(out):
        raise GrammarError("CNF conversion failed to normalize the grammar")
    return out


def rename_nonterminals(g: WeightedGrammar, mapping: Mapping[str, str]) -> WeightedGrammar:
    """Rename nonterminals; names absent from the mapping stay as they are."""

    def ren(name: str) -> str:
        return mapping.get(name, name)

    prods = [
        Production(
            ren(p.lhs),
            tuple(s if s.terminal else nt(ren(s.name)) for s in p.rhs),
            p.cost,
        )
        for p in g.productions
    ]
    return WeightedGrammar.make(ren(g.start), prods)


# === membership and enumeration ===


def recognizes(g: WeightedGrammar, s: str) -> bool:
    """CYK membership for a CNF grammar; the empty string is never a member."""
    if not is_cnf(g):
        raise GrammarError("recognizes expects a CNF grammar")
    n = len(s)
    if n == 0:
        return False
    if any(ch not in g.terminals for ch in s):
        return False
    term: dict[str, set[str]] = {}
    binary: list[tuple[str, str, str]] = []
    for p in g.productions:
        if len(p.rhs) == 1:
            term.setdefault(p.rhs[0].name, set()).add(p.lhs)
        else:
            binary.append((p.lhs, p.rhs[0].name, p.rhs[1].name))
    cell: dict[tuple[int, int], set[str]] = {}
    for i, ch in enumerate(s):
        cell[(i, i + 1)] = set(term.get(ch, ()))
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span
            acc: set[str] = set()
            for k in range(i + 1, j):
                left, right = cell[(i, k)], cell[(k, j)]
                if left and right:
                    for a, b, c in binary:
                        if b in left and c in right:
                            acc.add(a)
            cell[(i, j)] = acc
    return g.start in cell[(0, n)]


@functools.lru_cache(maxsize=None)
def enumerate_language(g: WeightedGrammar, maxlen: int) -> frozenset[str]:
    """All members of L(g) with length <= maxlen, for a CNF grammar."""
    if not is_cnf(g):
        raise GrammarError("enumerate_language expects a CNF grammar")
    gen: dict[str, list[set[str]]] = {
        a: [set() for _ in range(maxlen + 1)] for a in g.nonterminals
    }
    binary = [
        (p.lhs, p.rhs[0].name, p.rhs[1].name)
        for p in g.productions
        if len(p.rhs) == 2
    ]
    if maxlen >= 1:
        for p in g.productions:
            if len(p.rhs) == 1:
                gen[p.lhs][1].add(p.rhs[0].name)
    for length in range(2, maxlen + 1):
        for a, b, c in binary:
            bucket = gen[a][length]
            for l1 in range(1, length):
                left, right = gen[b][l1], gen[c][length - l1]
                if left and right:
                    bucket.update(x + y for x in left for y in right)
    return frozenset(w for bucket in gen[g.start] for w in bucket)


def shortest_word_length(g: WeightedGrammar) -> int:
    """Length of a shortest member of L(g), for a CNF grammar."""
    if not is_cnf(g):
        raise GrammarError("shortest_word_length expects a CNF grammar")
    INF = 1 << 40
    best = {a: INF for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if len(p.rhs) == 1:
                cand = 1
            else:
                cand = best[p.rhs[0].name] + best[p.rhs[1].name]
            if cand < best[p.lhs]:
                best[p.lhs] = cand
                changed = True
    if best[g.start] >= INF:
        raise EmptyLanguageError("empty language")
    return best[g.start]
