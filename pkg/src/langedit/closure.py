"""Parsing as transitive closure of an upper-triangular pair-set matrix.

Position matrix a has dimension n+1 for an input of length n; cell (i, j)
with i < j holds the pair set for the span text[i:j].  Span-1 cells come
straight from the terminal productions.  The closure fills every longer
span with the union over all split points k of a[i][k] * a[k][j], which
is exactly what the stage-by-stage chart parser computes cell by cell.

Two closure routines are provided and must agree everywhere:

  * iterative_closure: the definitional span-by-span dynamic program,
    kept permanently as the cross-check for the other route.
  * valiant_closure: divide and conquer that funnels all heavy lifting
    into block matrix products, so the work profile follows matrix
    multiplication instead of the cell loop.

Both accept matrices built with a cost cap m; capped runs clamp every
entry to m+1, which acts as infinity, and can only answer "the distance
is d <= m" or "the distance exceeds m".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .covering import CoveringGrammar
from .semiring import (
    MulStats,
    PairSetMatrix,
    _sentinel,
    pairset_matrix_mul,
    pairset_mul,
)


@dataclass
class ClosureResult:
    """Closed matrix, extracted distance, and work counters.

    ``distance`` is None when a cap was in force and the true distance
    exceeds it; the CLI renders that marker as ">m".
    """

    aplus: PairSetMatrix
    distance: int | None
    multiplications: int = 0
    stats: MulStats = field(default_factory=MulStats)


def init_matrix(cg: CoveringGrammar, text: str, cap: int | None = None) -> PairSetMatrix:
    """Strictly upper-triangular seed matrix with span-1 terminal entries."""
    cg.check_alphabet(text)
    n = len(text)
    m = PairSetMatrix.empty(n + 1, cg.num_nt, cap)
    lim = _sentinel(cap)
    for i, ch in enumerate(text):
        cell = m.data[i, i + 1]
        for lhs_id, cost in cg.terminal_by_char.get(ch, ()):
            cell[lhs_id] = min(cell[lhs_id], cost, lim)
    return m


def _top_cost(matrix: PairSetMatrix, cg: CoveringGrammar) -> int | None:
    """Start-symbol cost over the whole input; None past a cap."""
    n = matrix.dim - 1
    if n == 0:
        cost = cg.nullinfo[cg.grammar.start].mnullcount
    else:
        cost = int(matrix.data[0, n, cg.start_id])
    if cost >= _sentinel(matrix.cap):
        return None
    return cost


def _pad_dim(dim: int) -> int:
    p = 1
    while p < dim:
        p *= 2
    return p


def valiant_closure(
    a: PairSetMatrix,
    cg: CoveringGrammar,
    strategy: str = "tropical",
    threads: int = 1,
) -> ClosureResult:
    """Close the matrix by divide and conquer over power-of-two blocks."""
    dim = a.dim
    cap = a.cap
    pad = _pad_dim(dim)
    work = PairSetMatrix.empty(pad, cg.num_nt, cap)
    work.data[:dim, :dim] = a.data
    stats = MulStats()
    lim = _sentinel(cap)
    data = work.data

    def live(r0: int, r1: int, c0: int, c1: int) -> bool:
        return bool(np.any(data[r0:r1, c0:c1] < lim))

    def fold(dst: tuple[int, int, int, int], left: tuple[int, int, int, int],
             right: tuple[int, int, int, int]) -> None:
        lr0, lr1, lc0, lc1 = left
        rr0, rr1, rc0, rc1 = right
        if not live(*left) or not live(*right):
            return
        lmat = PairSetMatrix(lr1 - lr0, cg.num_nt, data[lr0:lr1, lc0:lc1], cap)
        rmat = PairSetMatrix(rr1 - rr0, cg.num_nt, data[rr0:rr1, rc0:rc1], cap)
        prod = pairset_matrix_mul(lmat, rmat, cg, strategy, threads, stats)
        dr0, dr1, dc0, dc1 = dst
        np.minimum(data[dr0:dr1, dc0:dc1], prod.data, out=data[dr0:dr1, dc0:dc1])

    def complete(x0: int, x1: int, y0: int, y1: int) -> None:
        # closure contributions to block X x Y; X x X and Y x Y are closed
        size = x1 - x0
        if size == 1:
            return
        xm = x0 + size // 2
        ym = y0 + size // 2
        complete(xm, x1, y0, ym)
        fold((x0, xm, y0, ym), (x0, xm, xm, x1), (xm, x1, y0, ym))
        complete(x0, xm, y0, ym)
        fold((xm, x1, ym, y1), (xm, x1, y0, ym), (y0, ym, ym, y1))
        complete(xm, x1, ym, y1)
        fold((x0, xm, ym, y1), (x0, xm, xm, x1), (xm, x1, ym, y1))
        fold((x0, xm, ym, y1), (x0, xm, y0, ym), (y0, ym, ym, y1))
        complete(x0, xm, ym, y1)

    def close(lo: int, hi: int) -> None:
        if hi - lo <= 1:
            return
        mid = (lo + hi) // 2
        close(lo, mid)
        close(mid, hi)
        complete(lo, mid, mid, hi)

    close(0, pad)
    aplus = PairSetMatrix(dim, cg.num_nt, data[:dim, :dim].copy(), cap)
    return ClosureResult(aplus, _top_cost(aplus, cg), stats.products, stats)


def iterative_closure(a: PairSetMatrix, cg: CoveringGrammar) -> PairSetMatrix:
    """Close the matrix span by span; the definitional reference."""
    m = a.copy()
    n = m.dim - 1
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span
            acc = m.data[i, j]
            for k in range(i + 1, j):
                left = m.cell(i, k)
                right = m.cell(k, j)
                if left.is_empty() or right.is_empty():
                    continue
                prod = pairset_mul(left, right, cg)
                np.minimum(acc, prod.costs, out=acc)
    return m


def exact_distance(
    cg: CoveringGrammar,
    text: str,
    strategy: str = "tropical",
    threads: int = 1,
) -> int:
    """Uncapped distance through the divide-and-conquer closure."""
    result = valiant_closure(init_matrix(cg, text), cg, strategy, threads)
    assert result.distance is not None, "uncapped closure cannot miss"
    return result.distance


def bounded_distance(
    cg: CoveringGrammar,
    text: str,
    max_distance: int,
    strategy: str = "tropical",
    threads: int = 1,
) -> int | None:
    """Exact distance when it is <= max_distance, else None (the >m marker)."""
    if max_distance < 0:
        raise ValueError("max_distance must be nonnegative")
    matrix = init_matrix(cg, text, cap=max_distance)
    result = valiant_closure(matrix, cg, strategy, threads)
    d = result.distance
    if d is None or d > max_distance:
        return None
    return d


def approx_distance(
    cg: CoveringGrammar,
    text: str,
    threshold: int,
    strategy: str = "tropical",
    threads: int = 1,
) -> int:
    """Capped run reported as-is; falls back to the input length past it."""
    d = bounded_distance(cg, text, threshold, strategy=strategy, threads=threads)
    if d is None:
        return len(text)
    return d
