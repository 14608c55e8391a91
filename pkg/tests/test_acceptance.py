"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every expected value here is either a hand-frozen constant or comes from
the independent brute-force oracle; nothing is read back from the code
under test.
"""

import random
import time

import pytest

from langedit import (
    PairSet,
    PairSetMatrix,
    apply_edits,
    approx_distance,
    bounded_distance,
    build_covering,
    correct,
    enumerate_language,
    exact_distance,
    init_matrix,
    iterative_closure,
    levenshtein,
    pairset_matrix_mul,
    pairset_mul,
    pairset_union,
    recognizes,
    valiant_closure,
)
from langedit.covering import INF
from langedit.cyk import distance_from_chart, ec_parse
from langedit.retrieval import RetrievalStats, parse_tree
from langedit.semiring import MulStats

from test_covering import P3_EXPECTED


def _report(capsys, label, fn):
    try:
        fn()
    except BaseException:
        with capsys.disabled():
            print(f"[FAIL] {label}")
        raise
    with capsys.disabled():
        print(f"[PASS] {label}")


def _top_distance(closed: PairSetMatrix, cg, n: int) -> int:
    if n == 0:
        return cg.nullinfo[cg.grammar.start].mnullcount
    v = int(closed.data[0, n, cg.start_id])
    assert v < INF
    return v


def test_criterion_1_worked_example_regression(capsys, anbn):
    def check():
        t0 = time.perf_counter()
        cg = build_covering(anbn)
        elapsed = time.perf_counter() - t0
        counts = {n: info.mnullcount for n, info in cg.nullinfo.items()}
        assert counts == {"A": 1, "B": 1, "S": 2, "A1": 3}
        got = {
            (p.lhs, tuple(s.name for s in p.rhs), p.cost)
            for p in cg.grammar.productions
        }
        assert got == P3_EXPECTED
        assert elapsed < 1.0

    _report(capsys, "criterion 1: a^n b^n covering grammar regression", check)


def test_criterion_2_route_equivalence(capsys, coverings, sweep_cases):
    def check():
        for name, cg in coverings.items():
            for s, oracle_d in sweep_cases[name]:
                d_cyk = distance_from_chart(ec_parse(cg, s), cg)
                assert d_cyk == oracle_d, (name, s)
                n = len(s)
                if n == 0:
                    assert exact_distance(cg, s) == oracle_d
                    continue
                seed = init_matrix(cg, s)
                d_iter = _top_distance(iterative_closure(seed, cg), cg, n)
                d_direct = valiant_closure(seed, cg, "direct").distance
                d_trop = valiant_closure(seed, cg, "tropical").distance
                assert d_iter == d_direct == d_trop == oracle_d, (name, s)

    _report(
        capsys,
        "criterion 2: chart, iterative, and both closure strategies match "
        "the oracle on every string up to length 6",
        check,
    )


def test_criterion_3_membership_consistency(capsys, bases, coverings):
    def check():
        for name, g in bases.items():
            cg = coverings[name]
            members = enumerate_language(g, 6)
            assert members
            for s in members:
                assert distance_from_chart(ec_parse(cg, s), cg) == 0, (name, s)

    _report(
        capsys,
        "criterion 3: every language member up to length 6 has distance 0",
        check,
    )


def test_criterion_4_bounded_and_approx_modes(capsys, coverings, sweep_cases):
    def check():
        for name, cg in coverings.items():
            for s, d in sweep_cases[name]:
                n = len(s)
                if n == 0:
                    continue
                for m in (0, 1, 2, 3):
                    got = bounded_distance(cg, s, m, strategy="direct")
                    assert got == (d if d <= m else None), (name, s, m)
                    approx = approx_distance(cg, s, m, strategy="direct")
                    assert approx == (d if d <= m else n), (name, s, m)
                    if d >= 1 and m >= 1 and m <= n:
                        assert approx / d <= n / m, (name, s, m)

    _report(
        capsys,
        "criterion 4: bounded mode returns d or the >m marker, approximate "
        "mode returns d or n within the n/m ratio",
        check,
    )


def test_criterion_5_retrieval_validity_optimality(
    capsys, coverings, bases, sweep_cases
):
    def check():
        for name, cg in coverings.items():
            base = bases[name]
            for s, d in sweep_cases[name]:
                got = correct(cg, s)
                assert got.distance == d, (name, s)
                assert recognizes(base, got.corrected), (name, s)
                assert levenshtein(s, got.corrected) == d, (name, s)
                assert len(got.edits) == d, (name, s)
                assert apply_edits(s, got.edits) == got.corrected, (name, s)

    _report(
        capsys,
        "criterion 5: corrections are language members at the exact "
        "distance with replayable scripts of that length",
        check,
    )


def test_criterion_6_algebra_laws(capsys, coverings):
    def check():
        for name, cg in coverings.items():
            rng = random.Random(hash(name) & 0xFFFF)
            empty = PairSet.empty(cg.num_nt)

            def rand():
                ps = PairSet.empty(cg.num_nt)
                for a in range(cg.num_nt):
                    if rng.random() < 0.5:
                        ps.costs[a] = rng.randrange(0, 7)
                return ps

            for _ in range(10_000):
                n1, n2, n3 = rand(), rand(), rand()
                assert pairset_union(n1, n2) == pairset_union(n2, n1)
                assert pairset_union(pairset_union(n1, n2), n3) == (
                    pairset_union(n1, pairset_union(n2, n3))
                )
                assert pairset_mul(n1, pairset_union(n2, n3), cg) == (
                    pairset_union(
                        pairset_mul(n1, n2, cg), pairset_mul(n1, n3, cg)
                    )
                )
                assert pairset_mul(empty, n1, cg).is_empty()
                assert pairset_mul(n1, empty, cg).is_empty()
                assert pairset_union(n1, empty) == n1

    _report(
        capsys,
        "criterion 6: 10^4 randomized union/product law checks per grammar",
        check,
    )


def test_criterion_7_scaling_sanity(capsys, anbn_cov, scaling_charts):
    def check():
        attempts = {
            n: scaling_charts[n].combination_attempts for n in (32, 64, 128)
        }
        assert attempts[64] / attempts[32] <= 9.0
        assert attempts[128] / attempts[64] <= 9.0

        splits = {}
        for n in (64, 128, 256):
            chart = scaling_charts[n]
            stats = RetrievalStats()
            parse_tree(chart, anbn_cov, distance_from_chart(chart, anbn_cov), stats)
            splits[n] = stats.split_steps
        assert splits[128] / splits[64] <= 4.5
        assert splits[256] / splits[128] <= 4.5

        t0 = time.perf_counter()
        ec_parse(anbn_cov, scaling_charts[128].text)
        assert time.perf_counter() - t0 < 10.0

    _report(
        capsys,
        "criterion 7: combination attempts grow at most 9x and split scans "
        "at most 4.5x per doubling; n=128 parses in under 10 s",
        check,
    )


def test_criterion_8_strategy_equivalence(capsys, coverings):
    def check():
        for name, cg in coverings.items():
            rng = random.Random(len(name))
            for _ in range(100):
                dim = rng.randrange(2, 33)
                a = PairSetMatrix.empty(dim, cg.num_nt)
                b = PairSetMatrix.empty(dim, cg.num_nt)
                for m in (a, b):
                    for i in range(dim):
                        for j in range(i + 1, dim):
                            for nt_id in range(cg.num_nt):
                                if rng.random() < 0.3:
                                    m.data[i, j, nt_id] = rng.randrange(0, 9)
                direct = pairset_matrix_mul(a, b, cg, strategy="direct")
                tropical = pairset_matrix_mul(a, b, cg, strategy="tropical")
                assert direct == tropical, (name, dim)

            book = {}
            for dim in (8, 16, 32):
                stats = MulStats()
                m = PairSetMatrix.empty(dim, cg.num_nt)
                pairset_matrix_mul(m, m, cg, strategy="tropical", stats=stats)
                book[dim] = stats.bookkeeping_ops
            assert book[16] / book[8] <= 4.5
            assert book[32] / book[16] <= 4.5

    _report(
        capsys,
        "criterion 8: direct and tropical-reduction products agree on 100 "
        "random matrices per grammar with quadratic bookkeeping",
        check,
    )
