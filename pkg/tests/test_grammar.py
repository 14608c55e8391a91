"""Grammar model, file format, CNF conversion, membership helpers."""

import pytest

from langedit import (
    EmptyLanguageError,
    GrammarError,
    Production,
    Symbol,
    WeightedGrammar,
    enumerate_language,
    is_cnf,
    nt,
    parse_grammar,
    recognizes,
    shortest_word_length,
    t,
    to_cnf,
)
from langedit.grammar import rename_nonterminals

ANBN_TEXT = """
start: S
S -> A A1 | A B
A1 -> S B
A -> 'a'
B -> 'b'
"""


def test_symbol_kinds():
    term = t("a")
    non = nt("A")
    assert term.terminal and not non.terminal
    assert repr(term) == "'a'"
    assert repr(non) == "A"
    assert term != non


def test_production_cost_validation():
    with pytest.raises(GrammarError):
        WeightedGrammar.make("S", [Production("S", (t("a"),), cost=-1)])


def test_make_collapses_duplicates_to_min_cost():
    g = WeightedGrammar.make(
        "S",
        [
            Production("S", (t("a"),), cost=3),
            Production("S", (t("a"),), cost=1),
        ],
    )
    assert len(g.productions) == 1
    assert g.productions[0].cost == 1


def test_parse_grammar_anbn():
    g = parse_grammar(ANBN_TEXT)
    assert g.start == "S"
    assert g.nonterminals == {"S", "A", "A1", "B"}
    assert len(g.productions) == 5
    assert g.terminals == {"a", "b"}
    assert all(p.cost == 0 for p in g.productions)


def test_parse_grammar_undeclared_nonterminal():
    with pytest.raises(GrammarError, match="Z"):
        parse_grammar("start: S\nS -> Z 'a'\n")


def test_parse_grammar_epsilon_language_rejected():
    with pytest.raises(GrammarError, match="epsilon"):
        parse_grammar("start: S\nS -> 'a' S | eps\n")


def test_parse_grammar_syntax_error_names_line():
    with pytest.raises(GrammarError, match="line 3"):
        parse_grammar("start: S\nS -> 'a'\n-> busted\n")


def test_parse_grammar_requires_start_header():
    with pytest.raises(GrammarError):
        parse_grammar("S -> 'a'\n")


def test_parse_grammar_comments_and_quoted_hash():
    g = parse_grammar("# heading\nstart: S\nS -> '#' # trailing\n")
    assert g.terminals == {"#"}


def test_to_cnf_matches_handwritten_anbn():
    raw = parse_grammar("start: S\nS -> 'a' S 'b' | 'a' 'b'\n")
    converted = to_cnf(raw)
    renamed = rename_nonterminals(converted, {"X1": "A1", "X2": "A", "X3": "B"})
    assert renamed == parse_grammar(ANBN_TEXT)


def test_to_cnf_idempotent_on_cnf_input():
    g = parse_grammar(ANBN_TEXT)
    assert to_cnf(g) is g


def test_to_cnf_single_terminal_production():
    g = parse_grammar("start: S\nS -> 'a'\n")
    assert to_cnf(g) is g
    assert is_cnf(g)


def test_to_cnf_preserves_membership_up_to_six():
    raw = parse_grammar("start: S\nS -> 'a' S 'b' | 'a' 'b'\n")
    converted = to_cnf(raw)
    reference = parse_grammar(ANBN_TEXT)
    assert enumerate_language(converted, 6) == enumerate_language(reference, 6)


def test_recognizes_membership(bases):
    base = bases["anbn"]
    assert recognizes(base, "aabb")
    assert not recognizes(base, "aab")
    assert not recognizes(base, "")
    assert not recognizes(base, "ax")


def test_recognizes_requires_cnf():
    raw = parse_grammar("start: S\nS -> 'a' S 'b' | 'a' 'b'\n")
    with pytest.raises(GrammarError):
        recognizes(raw, "ab")


def test_enumerate_language_examples(bases):
    assert enumerate_language(bases["anbn"], 4) == {"ab", "aabb"}
    assert enumerate_language(bases["anbn"], 1) == frozenset()
    assert enumerate_language(bases["dyck"], 4) == {"()", "()()", "(())"}


def test_enumerate_language_monotone(bases):
    for base in bases.values():
        for m in range(1, 6):
            assert enumerate_language(base, m) <= enumerate_language(base, m + 1)


def test_shortest_word_length(bases):
    assert shortest_word_length(bases["anbn"]) == 2
    assert shortest_word_length(bases["dyck"]) == 2
    assert shortest_word_length(bases["expr"]) == 1
    assert shortest_word_length(to_cnf(parse_grammar("start: S\nS -> 'a'\n"))) == 1


def test_shortest_word_length_empty_language():
    # S only ever rewrites to itself, so no terminal string exists
    g = WeightedGrammar.make("S", [Production("S", (nt("S"), nt("S")))])
    with pytest.raises(EmptyLanguageError):
        shortest_word_length(g)


def test_to_cnf_keeps_empty_language_well_formed():
    g = WeightedGrammar.make("S", [Production("S", (nt("S"), nt("S"), t("a")))])
    converted = to_cnf(g)
    assert is_cnf(converted)
    assert enumerate_language(converted, 6) == frozenset()
