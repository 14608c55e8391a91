"""Edit distance between strings and context-free languages.

The public surface: grammar loading and normal forms, the covering
grammar construction, the error-correcting chart parser, the matrix
closure routes (iterative and divide-and-conquer over pair-set
matrices, with a tropical matrix-product backend), correction
retrieval, and a brute-force oracle for validation.
"""

from .closure import (
    ClosureResult,
    approx_distance,
    bounded_distance,
    exact_distance,
    init_matrix,
    iterative_closure,
    valiant_closure,
)
from .covering import (
    CoveringGrammar,
    NullInfo,
    build_covering,
    compute_nullables,
)
from .cyk import ChartError, PairSetChart, distance_from_chart, ec_parse
from .grammar import (
    AlphabetError,
    EmptyLanguageError,
    GrammarError,
    Production,
    Symbol,
    WeightedGrammar,
    enumerate_language,
    is_cnf,
    load_grammar,
    nt,
    parse_grammar,
    recognizes,
    shortest_word_length,
    t,
    to_cnf,
)
from .oracle import OracleResult, brute_force_distance, levenshtein
from .retrieval import (
    Correction,
    Edit,
    ParseNode,
    RetrievalError,
    RetrievalStats,
    apply_edits,
    correct,
    extract_correction,
    parse_tree,
)
from .semiring import (
    MulStats,
    PairSet,
    PairSetMatrix,
    TropicalMatrix,
    pairset_matrix_mul,
    pairset_mul,
    pairset_union,
    recombine,
    split_by_nonterminal,
    tropical_mul,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetError",
    "ChartError",
    "ClosureResult",
    "Correction",
    "CoveringGrammar",
    "Edit",
    "EmptyLanguageError",
    "GrammarError",
    "MulStats",
    "NullInfo",
    "OracleResult",
    "PairSet",
    "PairSetChart",
    "PairSetMatrix",
    "ParseNode",
    "Production",
    "RetrievalError",
    "RetrievalStats",
    "Symbol",
    "TropicalMatrix",
    "WeightedGrammar",
    "apply_edits",
    "approx_distance",
    "bounded_distance",
    "brute_force_distance",
    "build_covering",
    "compute_nullables",
    "correct",
    "distance_from_chart",
    "ec_parse",
    "enumerate_language",
    "exact_distance",
    "extract_correction",
    "init_matrix",
    "is_cnf",
    "iterative_closure",
    "levenshtein",
    "load_grammar",
    "nt",
    "pairset_matrix_mul",
    "pairset_mul",
    "pairset_union",
    "parse_grammar",
    "parse_tree",
    "recognizes",
    "recombine",
    "shortest_word_length",
    "split_by_nonterminal",
    "t",
    "to_cnf",
    "tropical_mul",
    "valiant_closure",
    "__version__",
]
