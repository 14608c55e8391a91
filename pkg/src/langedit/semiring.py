"""Pair-set algebra over (nonterminal, cost) pairs and its tropical reduction.

A pair set maps each nonterminal to the cheapest known cost of deriving a
span, or infinity.  Union keeps per-nonterminal minima.  The product of
two pair sets applies every binary production A ->(m) B C to a left cost
of B and a right cost of C, keeping minima per A.  Union is commutative
and associative and the product distributes over it with the empty set as
zero, which is all the matrix closure needs; the product itself is not
associative, and nothing here relies on it being so.

Matrix products over pair sets come in two independent flavors that must
agree: a direct cell-by-cell evaluation, and a reduction that splits the
matrices per nonterminal, runs integer min-plus matrix products, and
recombines through the binary productions.  Under a cap m every stored
value is clamped to m+1, which plays the role of infinity.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .covering import INF, CoveringGrammar


@dataclass
class MulStats:
    """Work counters surfaced by benchmarks and scaling tests."""

    products: int = 0
    min_plus_ops: int = 0
    pairset_probes: int = 0
    bookkeeping_ops: int = 0


def _sentinel(cap: int | None) -> int:
    return INF if cap is None else cap + 1


class PairSet:
    """Fixed-size cost array indexed by nonterminal id; sentinel = absent."""

    __slots__ = ("costs", "cap")

    def __init__(self, costs: np.ndarray, cap: int | None = None):
        self.costs = costs
        self.cap = cap

    @classmethod
    def empty(cls, num_nt: int, cap: int | None = None) -> "PairSet":
        return cls(np.full(num_nt, _sentinel(cap), dtype=np.int64), cap)

    @classmethod
    def of(cls, pairs: Mapping[str, int], cg: CoveringGrammar, cap: int | None = None) -> "PairSet":
        ps = cls.empty(cg.num_nt, cap)
        lim = _sentinel(cap)
        for name, cost in pairs.items():
            ps.costs[cg.nt_id[name]] = min(cost, lim)
        return ps

    def to_dict(self, cg: CoveringGrammar) -> dict[str, int]:
        lim = _sentinel(self.cap)
        return {
            cg.nt_names[i]: int(c)
            for i, c in enumerate(self.costs)
            if c < lim
        }

    def is_empty(self) -> bool:
        return bool(np.all(self.costs >= _sentinel(self.cap)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PairSet)
            and self.cap == other.cap
            and np.array_equal(self.costs, other.costs)
        )

    def __repr__(self) -> str:
        return f"PairSet({dict(enumerate(self.costs.tolist()))}, cap={self.cap})"


def pairset_union(n1: PairSet, n2: PairSet) -> PairSet:
    """Per-nonterminal minimum."""
    assert n1.cap == n2.cap, "mixed cap modes in union"
    return PairSet(np.minimum(n1.costs, n2.costs), n1.cap)


def pairset_mul(n1: PairSet, n2: PairSet, cg: CoveringGrammar) -> PairSet:
    """Apply every binary production to left costs from n1, right from n2."""
    assert n1.cap == n2.cap, "mixed cap modes in product"
    cap = n1.cap
    lim = _sentinel(cap)
    lhs, left, right, pcost = cg.binary_arrays
    tot = n1.costs[left] + n2.costs[right] + pcost
    np.minimum(tot, lim, out=tot)
    out = PairSet.empty(cg.num_nt, cap)
    np.minimum.at(out.costs, lhs, tot)
    return out


@dataclass
class TropicalMatrix:
    """Integer matrix under (min, +); the sentinel plays infinity."""

    data: np.ndarray
    cap: int | None = None

    @classmethod
    def full_inf(cls, rows: int, cols: int, cap: int | None = None) -> "TropicalMatrix":
        return cls(np.full((rows, cols), _sentinel(cap), dtype=np.int64), cap)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TropicalMatrix)
            and self.cap == other.cap
            and np.array_equal(self.data, other.data)
        )


def tropical_mul(
    x: TropicalMatrix,
    y: TropicalMatrix,
    threads: int = 1,
    stats: MulStats | None = None,
) -> TropicalMatrix:
    """Min-plus matrix product; output is identical for any thread count."""
    assert x.cap == y.cap, "mixed cap modes in tropical product"
    cap = x.cap
    lim = _sentinel(cap)
    a, b = x.data, y.data
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shapes {a.shape} and {b.shape} do not conform")
    rows, inner = a.shape
    cols = b.shape[1]

    def block(r0: int, r1: int) -> np.ndarray:
        out = np.full((r1 - r0, cols), lim * 2, dtype=np.int64)
        for k in range(inner):
            np.minimum(out, a[r0:r1, k : k + 1] + b[k : k + 1, :], out=out)
        np.minimum(out, lim, out=out)
        return out

    if threads <= 1 or rows < 2:
        out = block(0, rows)
    else:
        nblk = min(threads, rows)
        bounds = [(i * rows) // nblk for i in range(nblk + 1)]
        with ThreadPoolExecutor(max_workers=nblk) as pool:
            parts = list(
                pool.map(lambda se: block(*se), zip(bounds, bounds[1:]))
            )
        out = np.vstack(parts)
    if stats is not None:
        stats.min_plus_ops += rows * cols * inner
    return TropicalMatrix(out, cap)


@dataclass
class PairSetMatrix:
    """Square matrix of pair sets, stored as one (dim, dim, num_nt) array."""

    dim: int
    num_nt: int
    data: np.ndarray
    cap: int | None = None

    @classmethod
    def empty(cls, dim: int, num_nt: int, cap: int | None = None) -> "PairSetMatrix":
        data = np.full((dim, dim, num_nt), _sentinel(cap), dtype=np.int64)
        return cls(dim, num_nt, data, cap)

    def cell(self, i: int, j: int) -> PairSet:
        return PairSet(self.data[i, j], self.cap)

    def set_cell(self, i: int, j: int, pairs: Mapping[str, int], cg: CoveringGrammar) -> None:
        self.data[i, j] = PairSet.of(pairs, cg, self.cap).costs

    def cell_dict(self, i: int, j: int, cg: CoveringGrammar) -> dict[str, int]:
        return self.cell(i, j).to_dict(cg)

    def copy(self) -> "PairSetMatrix":
        return PairSetMatrix(self.dim, self.num_nt, self.data.copy(), self.cap)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PairSetMatrix)
            and self.cap == other.cap
            and self.dim == other.dim
            and np.array_equal(self.data, other.data)
        )

    def is_strictly_upper(self) -> bool:
        lim = _sentinel(self.cap)
        for i in range(self.dim):
            for j in range(0, i + 1):
                if np.any(self.data[i, j] < lim):
                    return False
        return True


def split_by_nonterminal(
    a: PairSetMatrix, cg: CoveringGrammar
) -> dict[str, TropicalMatrix]:
    """One integer matrix per nonterminal; absent entries become infinity."""
    return {
        name: TropicalMatrix(np.ascontiguousarray(a.data[:, :, i]), a.cap)
        for i, name in enumerate(cg.nt_names)
    }


def recombine(
    products: Mapping[tuple[str, str], TropicalMatrix],
    cg: CoveringGrammar,
    dim: int,
    cap: int | None = None,
) -> PairSetMatrix:
    """Fold per-pair min-plus products back through the binary productions."""
    out = PairSetMatrix.empty(dim, cg.num_nt, cap)
    lim = _sentinel(cap)
    for a, b, c, pcost in cg.binary_prods:
        prod = products.get((cg.nt_names[b], cg.nt_names[c]))
        if prod is None:
            continue
        vals = np.minimum(prod.data + pcost, lim)
        np.minimum(out.data[:, :, a], vals, out=out.data[:, :, a])
    return out


def _matrix_mul_direct(
    a: PairSetMatrix,
    b: PairSetMatrix,
    cg: CoveringGrammar,
    stats: MulStats | None,
) -> PairSetMatrix:
    cap = a.cap
    lim = _sentinel(cap)
    dim = a.dim
    out = PairSetMatrix.empty(dim, cg.num_nt, cap)
    lhs, left, right, pcost = cg.binary_arrays
    adata, bdata = a.data, b.data
    a_live = adata.min(axis=2) < lim
    b_live = bdata.min(axis=2) < lim
    probes = 0
    for i in range(dim):
        arow_live = a_live[i]
        for k in range(dim):
            if not arow_live[k]:
                continue
            lcosts = adata[i, k][left]
            brow_live = b_live[k]
            for j in range(dim):
                if not brow_live[j]:
                    continue
                probes += 1
                tot = lcosts + bdata[k, j][right] + pcost
                np.minimum(tot, lim, out=tot)
                np.minimum.at(out.data[i, j], lhs, tot)
    if stats is not None:
        stats.pairset_probes += probes
    return out


def _matrix_mul_tropical(
    a: PairSetMatrix,
    b: PairSetMatrix,
    cg: CoveringGrammar,
    threads: int,
    stats: MulStats | None,
) -> PairSetMatrix:
    cap = a.cap
    lim = _sentinel(cap)
    dim = a.dim
    pairs = cg.binary_pairs
    lefts = np.array([p[0] for p in pairs], dtype=np.int64)
    rights = np.array([p[1] for p in pairs], dtype=np.int64)
    # (pairs, dim, dim) stacks of the per-nonterminal tropical matrices
    x = np.ascontiguousarray(np.moveaxis(a.data, 2, 0))[lefts]
    y = np.ascontiguousarray(np.moveaxis(b.data, 2, 0))[rights]

    def block(p0: int, p1: int) -> np.ndarray:
        z = np.full((p1 - p0, dim, dim), lim * 2, dtype=np.int64)
        xs, ys = x[p0:p1], y[p0:p1]
        for k in range(dim):
            np.minimum(z, xs[:, :, k, None] + ys[:, None, k, :], out=z)
        np.minimum(z, lim, out=z)
        return z

    if threads <= 1 or len(pairs) < 2:
        z = block(0, len(pairs))
    else:
        nblk = min(threads, len(pairs))
        bounds = [(i * len(pairs)) // nblk for i in range(nblk + 1)]
        with ThreadPoolExecutor(max_workers=nblk) as pool:
            parts = list(pool.map(lambda se: block(*se), zip(bounds, bounds[1:])))
        z = np.concatenate(parts, axis=0)

    pair_index = {pair: idx for idx, pair in enumerate(pairs)}
    out = PairSetMatrix.empty(dim, cg.num_nt, cap)
    for aid, bid, cid, pcost in cg.binary_prods:
        vals = np.minimum(z[pair_index[(bid, cid)]] + pcost, lim)
        np.minimum(out.data[:, :, aid], vals, out=out.data[:, :, aid])
    if stats is not None:
        stats.min_plus_ops += len(pairs) * dim * dim * dim
        stats.bookkeeping_ops += dim * dim * (2 * cg.num_nt + len(cg.binary_prods))
    return out


def pairset_matrix_mul(
    a: PairSetMatrix,
    b: PairSetMatrix,
    cg: CoveringGrammar,
    strategy: str = "direct",
    threads: int = 1,
    stats: MulStats | None = None,
) -> PairSetMatrix:
    """Matrix product over pair sets; both strategies give identical output."""
    if a.dim != b.dim or a.num_nt != b.num_nt:
        raise ValueError("matrix dimensions do not match")
    assert a.cap == b.cap, "mixed cap modes in matrix product"
    if stats is not None:
        stats.products += 1
    if strategy == "direct":
        return _matrix_mul_direct(a, b, cg, stats)
    if strategy == "tropical":
        return _matrix_mul_tropical(a, b, cg, threads, stats)
    raise ValueError(f"unknown strategy {strategy!r}")
