"""Brute-force reference for language edit distance.

Deliberately naive: enumerate the language up to a sound length bound and
take the minimum Levenshtein distance over it.  The production algorithms
are checked against this module, so nothing here may depend on them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .grammar import WeightedGrammar, enumerate_language, shortest_word_length, to_cnf


def levenshtein(s: str, t: str) -> int:
    """Classical unit-cost edit distance, full O(|s||t|) table."""
    if not s:
        return len(t)
    if not t:
        return len(s)
    prev = list(range(len(t) + 1))
    for i, sc in enumerate(s, start=1):
        cur = [i] + [0] * len(t)
        for j, tc in enumerate(t, start=1):
            cur[j] = min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (sc != tc),
            )
        prev = cur
    return prev[-1]


def _levenshtein_many(s: str, words: np.ndarray) -> np.ndarray:
    """Distances from s to every row of a same-length word matrix.

    Row-by-row DP over word positions; the in-row dependency is folded
    with a running minimum so each step is a handful of vector ops.
    """
    w, length = words.shape
    n = len(s)
    codes = np.frombuffer(s.encode("utf-32-le"), dtype=np.uint32).astype(np.int64)
    ramp = np.arange(n + 1, dtype=np.int64)
    dist = np.tile(ramp, (w, 1))
    for j in range(length):
        sub = dist[:, :-1] + (codes[None, :] != words[:, j : j + 1])
        tmp = np.minimum(dist + 1, np.concatenate(
            [np.full((w, 1), j + 1, dtype=np.int64), sub], axis=1))
        tmp[:, 0] = j + 1
        # dist[i] = min over k <= i of tmp[k] + (i - k)
        dist = np.minimum.accumulate(tmp - ramp, axis=1) + ramp
    return dist[:, -1]


@functools.lru_cache(maxsize=None)
def _word_groups(g: WeightedGrammar, maxlen: int) -> tuple[tuple[tuple[str, ...], np.ndarray], ...]:
    """Language members up to maxlen, grouped by length as code matrices."""
    words = sorted(enumerate_language(g, maxlen))
    groups: dict[int, list[str]] = {}
    for word in words:
        groups.setdefault(len(word), []).append(word)
    out = []
    for length in sorted(groups):
        ws = groups[length]
        mat = np.array(
            [np.frombuffer(w.encode("utf-32-le"), dtype=np.uint32) for w in ws],
            dtype=np.int64,
        )
        out.append((tuple(ws), mat))
    return tuple(out)


@dataclass(frozen=True)
class OracleResult:
    distance: int
    witnesses: frozenset[str]


def brute_force_distance(g: WeightedGrammar, s: str, radius: int | None = None) -> OracleResult:
    """Minimum edit distance from s to L(g) with the full witness set.

    A nearest member never needs length beyond |s| + max(|s|, shortest
    member), because the distance never exceeds max(|s|, shortest member).
    """
    g = to_cnf(g)
    if radius is None:
        radius = max(len(s), shortest_word_length(g))
    else:
        shortest_word_length(g)  # still reject empty languages
    maxlen = len(s) + radius
    best = None
    hits: list[str] = []
    for ws, mat in _word_groups(g, maxlen):
        dists = _levenshtein_many(s, mat)
        lo = int(dists.min())
        if best is None or lo < best:
            best = lo
            hits = [w for w, d in zip(ws, dists) if d == lo]
        elif lo == best:
            hits.extend(w for w, d in zip(ws, dists) if d == lo)
    if best is None:
        raise ValueError(f"no language member within length {maxlen}")
    return OracleResult(best, frozenset(hits))
