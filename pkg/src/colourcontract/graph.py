"""Vertex-coloured simple undirected graphs over contiguous integer indices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class ColouredGraph:
    """Immutable CSR-backed coloured graph.

    Vertices are the integers 0..n-1.  Both orientations of every edge are
    stored and each adjacency row is strictly ascending, so the representation
    of a given graph is unique and equality is plain array equality.  All type
    invariants are checked on construction; instances are safe to share
    across threads.
    """

    n: int
    m: int
    colours: np.ndarray  # (n,) non-negative colour ids
    indptr: np.ndarray   # (n+1,) row offsets into indices
    indices: np.ndarray  # (2m,) neighbour lists, strictly ascending per row

    def __post_init__(self) -> None:
        _validate(self)
        for arr in (self.colours, self.indptr, self.indices):
            arr.setflags(write=False)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbours(self, v: int) -> np.ndarray:
        """Ascending neighbour row of vertex v."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for order {self.n}")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def adjacency(self) -> list[np.ndarray]:
        """All neighbour rows as a list, indexed by vertex."""
        return [self.neighbours(v) for v in range(self.n)]

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) array with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def is_properly_coloured(self) -> bool:
        """True when no edge joins two vertices of the same colour."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        return bool((self.colours[src] != self.colours[self.indices]).all())


def _validate(g: ColouredGraph) -> None:
    if not isinstance(g.n, int) or g.n < 0:
        raise ValueError("n must be a non-negative int")
    if not isinstance(g.m, int) or g.m < 0:
        raise ValueError("m must be a non-negative int")
    if g.colours.ndim != 1 or g.colours.size != g.n:
        raise ValueError(f"expected {g.n} colours, got {g.colours.size}")
    if not np.issubdtype(g.colours.dtype, np.integer):
        raise ValueError("colour ids must be integers")
    if g.colours.size and int(g.colours.min()) < 0:
        raise ValueError("colour ids must be non-negative")
    if g.indptr.ndim != 1 or g.indptr.size != g.n + 1:
        raise ValueError("indptr must have length n + 1")
    if g.indptr[0] != 0 or (np.diff(g.indptr) < 0).any():
        raise ValueError("indptr must be non-decreasing from 0")
    if g.indices.ndim != 1 or g.indices.size != 2 * g.m or g.indptr[-1] != 2 * g.m:
        raise ValueError("degree sum must equal 2m")
    if g.indices.size:
        if int(g.indices.min()) < 0 or int(g.indices.max()) >= g.n:
            raise ValueError("neighbour index out of range")
    src = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.indptr))
    if (g.indices == src).any():
        raise ValueError("self-loops are not allowed")
    if g.indices.size > 1:
        same_row = src[1:] == src[:-1]
        if (np.diff(g.indices)[same_row] <= 0).any():
            raise ValueError("adjacency rows must be strictly ascending")
    # symmetry: the multiset of directed arcs must equal its own transpose
    if not np.array_equal(np.sort(src * g.n + g.indices), np.sort(g.indices * g.n + src)):
        raise ValueError("adjacency is not symmetric")


def new_graph(n: int, edges: Iterable[Sequence[int]] | np.ndarray, colours: Sequence[int] | np.ndarray) -> ColouredGraph:
    """Build a validated graph from an unordered edge list.

    Edges may arrive in any order and orientation; duplicates collapse to a
    single edge.  Self-loops and out-of-range endpoints are rejected.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    col = np.asarray(colours, dtype=np.int64)
    if col.ndim != 1 or col.size != n:
        raise ValueError(f"expected {n} colours, got {col.size}")
    if col.size and int(col.min()) < 0:
        raise ValueError("colour ids must be non-negative")

    if isinstance(edges, np.ndarray):
        pairs = edges.astype(np.int64, copy=False).reshape(-1, 2)
    else:
        pairs = np.array([(int(u), int(v)) for u, v in edges], dtype=np.int64).reshape(-1, 2)

    if pairs.size:
        if int(pairs.min()) < 0 or int(pairs.max()) >= n:
            bad = pairs[(pairs.min(axis=1) < 0) | (pairs.max(axis=1) >= n)][0]
            raise ValueError(f"edge endpoint out of range: ({bad[0]}, {bad[1]})")
        loops = pairs[:, 0] == pairs[:, 1]
        if loops.any():
            raise ValueError(f"self-loop at vertex {int(pairs[loops][0, 0])}")
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        keys = np.unique(lo * n + hi)
        lo, hi = keys // n, keys % n
    else:
        lo = hi = np.empty(0, dtype=np.int64)

    m = int(lo.size)
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return ColouredGraph(n=n, m=m, colours=col, indptr=indptr, indices=dst[order])


def colour_neighbourhood(g: ColouredGraph, v: int) -> np.ndarray:
    """Neighbours of v sharing v's colour, ascending."""
    row = g.neighbours(v)
    return row[g.colours[row] == g.colours[v]]


def colour_neighbourhood_set(g: ColouredGraph, members: Iterable[int]) -> np.ndarray:
    """Union of the members' colour neighbourhoods, minus the members themselves.

    The member set must be monochromatic.
    """
    u = np.unique(np.fromiter((int(x) for x in members), dtype=np.int64))
    if u.size == 0:
        return u
    if int(u.min()) < 0 or int(u.max()) >= g.n:
        raise ValueError("member vertex out of range")
    if np.unique(g.colours[u]).size > 1:
        raise ValueError("member set is not monochromatic")
    gathered = np.concatenate([colour_neighbourhood(g, int(v)) for v in u])
    return np.setdiff1d(gathered, u)


def graphs_equal(a: ColouredGraph, b: ColouredGraph) -> bool:
    """Labelled equality: same order, size, colours and adjacency arrays."""
    return (
        a.n == b.n
        and a.m == b.m
        and np.array_equal(a.colours, b.colours)
        and np.array_equal(a.indptr, b.indptr)
        and np.array_equal(a.indices, b.indices)
    )
