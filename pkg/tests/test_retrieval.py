"""Tree rebuilding, repair extraction, and edit-script replay."""

import pytest

from langedit import (
    Edit,
    RetrievalError,
    RetrievalStats,
    apply_edits,
    correct,
    extract_correction,
    levenshtein,
    parse_tree,
    recognizes,
)
from langedit.cyk import distance_from_chart, ec_parse
from langedit.retrieval import iter_nodes

from conftest import all_strings


def test_member_tree_uses_only_base_productions(anbn_cov):
    chart = ec_parse(anbn_cov, "ab")
    tree = parse_tree(chart, anbn_cov, 0)
    used = {
        (n.production.lhs, tuple(s.name for s in n.production.rhs), n.production.cost)
        for n in iter_nodes(tree)
    }
    assert used == {
        ("S", ("A", "B"), 0),
        ("A", ("a",), 0),
        ("B", ("b",), 0),
    }


def test_tree_cost_telescopes(anbn_cov, coverings):
    for cg, text in (
        (anbn_cov, "aab"),
        (anbn_cov, "bbbb"),
        (coverings["dyck"], ")()("),
    ):
        chart = ec_parse(cg, text)
        d = distance_from_chart(chart, cg)
        tree = parse_tree(chart, cg, d)
        assert (tree.i, tree.j, tree.cost) == (0, len(text), d)
        assert tree.nonterminal == cg.grammar.start
        for node in iter_nodes(tree):
            assert node.production.lhs == node.nonterminal
            if node.children:
                left, right = node.children
                assert (left.i, right.j) == (node.i, node.j)
                assert left.j == right.i
                assert node.cost == node.production.cost + left.cost + right.cost
            else:
                assert node.j - node.i == 1
                assert node.cost == node.production.cost


def test_tree_production_costs_sum_to_distance(anbn_cov):
    chart = ec_parse(anbn_cov, "aab")
    tree = parse_tree(chart, anbn_cov, 1)
    assert sum(n.production.cost for n in iter_nodes(tree)) == 1


def test_parse_tree_rejects_wrong_cost(anbn_cov):
    chart = ec_parse(anbn_cov, "ab")
    with pytest.raises(RetrievalError, match="absent from the top cell"):
        parse_tree(chart, anbn_cov, 3)


def test_parse_tree_rejects_empty_input(anbn_cov):
    chart = ec_parse(anbn_cov, "")
    with pytest.raises(RetrievalError, match="empty input"):
        parse_tree(chart, anbn_cov, 2)


def test_extract_examples(anbn_cov):
    chart = ec_parse(anbn_cov, "ab")
    corrected, edits = extract_correction(
        parse_tree(chart, anbn_cov, 0), anbn_cov, "ab"
    )
    assert (corrected, edits) == ("ab", [])

    chart = ec_parse(anbn_cov, "aab")
    corrected, edits = extract_correction(
        parse_tree(chart, anbn_cov, 1), anbn_cov, "aab"
    )
    assert corrected in ("ab", "aabb")
    assert len(edits) == 1
    assert apply_edits("aab", edits) == corrected


def test_correct_on_empty_input(anbn_cov):
    got = correct(anbn_cov, "")
    assert got.distance == 2
    assert got.corrected == "ab"
    assert [e.as_dict() for e in got.edits] == [
        {"op": "insert", "pos": 0, "char": "a"},
        {"op": "insert", "pos": 0, "char": "b"},
    ]
    assert apply_edits("", got.edits) == "ab"


def test_corrections_are_valid_optimal_and_replayable(coverings, bases):
    for name, cg in coverings.items():
        base = bases[name]
        for s in all_strings(tuple(sorted(base.terminals)), 4):
            got = correct(cg, s)
            assert recognizes(base, got.corrected), (name, s, got.corrected)
            assert levenshtein(s, got.corrected) == got.distance, (name, s)
            assert len(got.edits) == got.distance, (name, s)
            assert apply_edits(s, got.edits) == got.corrected, (name, s)
            assert got.distance == distance_from_chart(ec_parse(cg, s), cg)


def test_edit_positions_index_the_original_input(anbn_cov):
    got = correct(anbn_cov, "babab")
    positions = [e.pos for e in got.edits]
    assert positions == sorted(positions)
    assert all(0 <= p <= 5 for p in positions)


def test_skip_subtrees_only_drop_input(coverings):
    """The run/single-skip helpers never emit or match output characters."""
    for cg in coverings.values():
        for p in cg.grammar.productions:
            if p.lhs in (cg.skip_run, cg.skip_one):
                kinds = {item[0] for item in cg.annotations[p]}
                assert kinds <= {"consume", "child"}, p


def test_split_scan_grows_quadratically(anbn_cov, scaling_charts):
    steps = {}
    for n in (64, 128, 256):
        stats = RetrievalStats()
        chart = scaling_charts[n]
        d = distance_from_chart(chart, anbn_cov)
        parse_tree(chart, anbn_cov, d, stats)
        steps[n] = stats.split_steps
    assert steps[128] / steps[64] <= 4.5
    assert steps[256] / steps[128] <= 4.5


def test_extract_rejects_unexpanded_child(anbn_cov):
    chart = ec_parse(anbn_cov, "ab")
    tree = parse_tree(chart, anbn_cov, 0)
    tree.children[0].production = None
    with pytest.raises(RetrievalError, match="unexpanded child"):
        extract_correction(tree, anbn_cov, "ab")


def test_apply_edits_validates_scripts():
    assert apply_edits("abc", []) == "abc"
    assert apply_edits("abc", [Edit("delete", 1)]) == "ac"
    assert apply_edits("abc", [Edit("substitute", 0, "x")]) == "xbc"
    assert apply_edits("abc", [Edit("insert", 3, "d")]) == "abcd"
    with pytest.raises(ValueError, match="out of order"):
        apply_edits("abc", [Edit("delete", 2), Edit("delete", 1)])
    with pytest.raises(ValueError, match="out of order"):
        apply_edits("abc", [Edit("insert", 9, "x")])
    with pytest.raises(ValueError, match="unknown edit"):
        apply_edits("abc", [Edit("swap", 1, "x")])
