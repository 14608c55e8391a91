"""Shared fixtures: corpus grammars, coverings, and cached sweeps."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from langedit import (
    CoveringGrammar,
    WeightedGrammar,
    brute_force_distance,
    build_covering,
    load_grammar,
    to_cnf,
)
from langedit.cyk import PairSetChart, ec_parse

GRAMMAR_DIR = Path(__file__).resolve().parent.parent / "grammars"
CORPUS = ("anbn", "dyck", "expr")


@pytest.fixture(scope="session")
def grammar_dir() -> Path:
    return GRAMMAR_DIR


@pytest.fixture(scope="session")
def grammars() -> dict[str, WeightedGrammar]:
    return {name: load_grammar(GRAMMAR_DIR / f"{name}.bnf") for name in CORPUS}


@pytest.fixture(scope="session")
def coverings(grammars) -> dict[str, CoveringGrammar]:
    return {name: build_covering(g) for name, g in grammars.items()}


@pytest.fixture(scope="session")
def bases(grammars) -> dict[str, WeightedGrammar]:
    return {name: to_cnf(g) for name, g in grammars.items()}


@pytest.fixture(scope="session")
def anbn(grammars) -> WeightedGrammar:
    return grammars["anbn"]


@pytest.fixture(scope="session")
def anbn_cov(coverings) -> CoveringGrammar:
    return coverings["anbn"]


def all_strings(alphabet: tuple[str, ...], maxlen: int) -> list[str]:
    out = []
    for n in range(maxlen + 1):
        out.extend("".join(t) for t in itertools.product(alphabet, repeat=n))
    return out


@pytest.fixture(scope="session")
def sweep_cases(grammars):
    """Every string of length <= 6 per grammar, with its oracle distance."""
    cases: dict[str, list[tuple[str, int]]] = {}
    for name, g in grammars.items():
        alphabet = tuple(sorted(g.terminals))
        cases[name] = [
            (s, brute_force_distance(g, s).distance)
            for s in all_strings(alphabet, 6)
        ]
    return cases


@pytest.fixture(scope="session")
def scaling_charts(anbn_cov) -> dict[int, PairSetChart]:
    """Charts over seeded random strings, shared by the scaling tests."""
    rng = random.Random(20240915)
    charts = {}
    for n in (32, 64, 128, 256):
        text = "".join(rng.choice("ab") for _ in range(n))
        charts[n] = ec_parse(anbn_cov, text)
    return charts
