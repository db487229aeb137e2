"""Seeded random instance generation: graphs, colourings, relabellings.

All randomness flows through numpy's PCG64 generator keyed by the caller's
seed, so identical seeds reproduce identical outputs on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import ColouredGraph, new_graph


@dataclass(frozen=True)
class RandomSpec:
    """Parameters of one random graph: order, edge target, colour count, seed.

    Exactly one of ``m`` (edge count) and ``p`` (edge probability) must be
    given.
    """

    n: int
    m: int | None = None
    p: float | None = None
    colours: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if (self.m is None) == (self.p is None):
            raise ValueError("exactly one of m and p must be given")
        max_pairs = self.n * (self.n - 1) // 2
        if self.m is not None and not 0 <= self.m <= max_pairs:
            raise ValueError(f"m must be in [0, {max_pairs}]")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be in [0, 1]")
        if self.colours < 1:
            raise ValueError("colour count must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _sample_pairs_exact(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """First m distinct unordered pairs from an endless stream of uniform draws.

    Rejecting repeats in draw order is uniform sampling without replacement;
    test sizes keep the rejection rate harmless.
    """
    collected = np.empty(0, dtype=np.int64)
    while True:
        uniq, first_pos = np.unique(collected, return_index=True)
        if uniq.size >= m:
            break
        batch = max(4 * (m - uniq.size) + 16, 64)
        draw = rng.integers(0, n, size=(batch, 2), dtype=np.int64)
        lo = draw.min(axis=1)
        hi = draw.max(axis=1)
        keep = lo != hi
        collected = np.concatenate([collected, lo[keep] * n + hi[keep]])
    keys = collected[np.sort(first_pos)[:m]]
    return np.column_stack([keys // n, keys % n])


def _sample_pairs_bernoulli(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Independent coin flip per unordered pair, row by row to bound memory."""
    rows: list[np.ndarray] = []
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - u - 1) < p) + u + 1
        if hits.size:
            rows.append(np.column_stack([np.full(hits.size, u, dtype=np.int64), hits]))
    if not rows:
        return np.empty((0, 2), dtype=np.int64)
    return np.vstack(rows)


def gen_erdos_renyi(spec: RandomSpec) -> ColouredGraph:
    """Random graph described by a RandomSpec, every vertex coloured 0.

    The m form draws exactly m distinct pairs; the p form flips one coin per
    pair.  Output depends only on the RandomSpec fields.
    """
    rng = _rng(spec.seed)
    if spec.m is not None:
        pairs = _sample_pairs_exact(spec.n, spec.m, rng) if spec.m else np.empty((0, 2), dtype=np.int64)
    else:
        pairs = _sample_pairs_bernoulli(spec.n, float(spec.p), rng)
    return new_graph(spec.n, pairs, np.zeros(spec.n, dtype=np.int64))


def assign_random_colours(g: ColouredGraph, colours: int, seed: int) -> ColouredGraph:
    """Same structure, colours redrawn uniformly from 0..colours-1."""
    if colours < 1:
        raise ValueError("colour count must be at least 1")
    drawn = _rng(seed).integers(0, colours, size=g.n, dtype=np.int64)
    return ColouredGraph(n=g.n, m=g.m, colours=drawn, indptr=g.indptr, indices=g.indices)


def permute_enumeration(g: ColouredGraph, seed: int) -> tuple[ColouredGraph, np.ndarray]:
    """Relabel vertices by a uniform random permutation.

    Returns the relabelled graph and the permutation with perm[old] = new, so
    partitions over the new labels can be pulled back to the original ones.
    """
    perm = _rng(seed).permutation(g.n).astype(np.int64)
    colours = np.empty(g.n, dtype=np.int64)
    colours[perm] = g.colours
    edges = perm[g.edge_array()] if g.m else np.empty((0, 2), dtype=np.int64)
    return new_graph(g.n, edges, colours), perm
