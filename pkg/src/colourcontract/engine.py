"""Iterative colour-contraction engine.

Each iteration builds a vertex-to-cluster mapping from purely local
information (every vertex points at the minimum of itself and its same-colour
neighbours), applies it as a simultaneous quotient, and repeats until no edge
joins two vertices of the same colour.  The iteration count is bounded by
``iteration_bound(n)``, the floor of the base-golden-ratio logarithm of the
order, and that bound is attained by the adversarial family in ``worstcase``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .graph import ColouredGraph

Scratchpad = Literal["faithful", "epoch"]

SCRATCHPAD_VARIANTS: tuple[str, ...] = ("faithful", "epoch")


def iteration_bound(n: int) -> int:
    """Floor of log base phi of n, phi the golden ratio, for n >= 1.

    Uses exact integer arithmetic: phi**k = F(k)*phi + F(k-1) with F the
    Fibonacci numbers, so phi**k <= n reduces to a sign check plus one
    squared comparison.  No float rounding near the Fibonacci boundaries.
    """
    if n < 1:
        raise ValueError("iteration_bound requires n >= 1")
    k = 1
    f_k, f_km1 = 1, 0  # F(k), F(k-1)
    while True:
        # phi**k <= n  iff  sqrt(5)*F(k) <= 2*(n - F(k-1)) - F(k)
        t = 2 * (n - f_km1) - f_k
        if t < 0 or 5 * f_k * f_k > t * t:
            return k - 1
        k += 1
        f_k, f_km1 = f_k + f_km1, f_k


@dataclass(frozen=True)
class ContractionMapping:
    """Vertex-to-cluster mapping for one contraction step.

    ``becomes[v]`` is the target index of source vertex ``v``.  ``fibres[t]``
    lists the ascending source members of target ``t``; targets are numbered
    by ascending cluster representative, so ``fibres[t][0]`` is both the
    minimum member and the representative of cluster ``t``.
    """

    n: int
    n_prime: int
    becomes: np.ndarray
    fibres: tuple[np.ndarray, ...]
    cluster_sizes: np.ndarray

    def __post_init__(self) -> None:
        self.becomes.setflags(write=False)
        self.cluster_sizes.setflags(write=False)
        for f in self.fibres:
            f.setflags(write=False)

    @property
    def is_trivial(self) -> bool:
        return self.n_prime == self.n

    def validate(self, g: ColouredGraph) -> None:
        """Check every structural invariant against the source graph.

        Raises ValueError on the first violation.  Covers the cheap checks
        run on every application plus fibre connectivity, representative
        ordering and the singleton characterisation of triviality.
        """
        _check_mapping_structure(g, self)
        mins = np.array([int(f[0]) for f in self.fibres], dtype=np.int64)
        if mins.size > 1 and (np.diff(mins) <= 0).any():
            raise ValueError("fibres are not ordered by ascending representative")
        if (self.n_prime == self.n) != bool((self.cluster_sizes == 1).all() if self.cluster_sizes.size else True):
            raise ValueError("trivial mapping must mean all-singleton fibres")
        for t, fibre in enumerate(self.fibres):
            members = set(fibre.tolist())
            if len(members) <= 1:
                continue
            seen = {int(fibre[0])}
            stack = [int(fibre[0])]
            while stack:
                u = stack.pop()
                for w in g.neighbours(u).tolist():
                    if w in members and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(members):
                raise ValueError(f"fibre {t} does not induce a connected subgraph")


@dataclass(frozen=True)
class IterationRecord:
    """Shape of one executed contraction: sizes before, target count, mapping."""

    n: int
    m: int
    n_prime: int
    mapping: ContractionMapping
    wall_time_ms: float


@dataclass(frozen=True)
class ContractionTrace:
    """Record of a full run: one entry per executed application.

    ``total_map`` sends every original vertex to its final vertex.  When the
    run kept intermediate graphs, ``graphs[k]`` is the graph before iteration
    k and ``graphs[-1]`` is the final graph.
    """

    iterations: int
    per_iteration: tuple[IterationRecord, ...]
    total_map: np.ndarray
    graphs: tuple[ColouredGraph, ...] | None = None

    def __post_init__(self) -> None:
        self.total_map.setflags(write=False)


def build_functional_digraph(g: ColouredGraph) -> np.ndarray:
    """Parent pointers b with b[v] = min of v and its same-colour neighbours.

    b[v] <= v always holds, so the pointer graph is a forest of monochromatic
    trees whose roots are exactly the tree minima.
    """
    n = g.n
    b = np.arange(n, dtype=np.int64)
    if g.indices.size == 0:
        return b
    src = np.repeat(b, g.degrees)
    same = np.flatnonzero(g.colours[src] == g.colours[g.indices])
    if same.size == 0:
        return b
    # rows are ascending, so the first same-colour neighbour is the minimum one
    rows, first = np.unique(src[same], return_index=True)
    b[rows] = np.minimum(rows, g.indices[same[first]])
    return b


def project_to_roots(parents: np.ndarray) -> np.ndarray:
    """Collapse parent pointers to their tree roots in one ascending pass.

    Requires parents[v] <= v.  Processing vertices in ascending index order
    guarantees the grandparent lookup has already been resolved to a root, so
    a single pass suffices; the pass must not be reordered or parallelised.
    """
    b = np.asarray(parents, dtype=np.int64)
    n = b.size
    if n:
        if int(b.min()) < 0:
            raise ValueError("parent index negative")
        if (b > np.arange(n, dtype=np.int64)).any():
            raise ValueError("parent pointers must not increase")
    out = b.tolist()
    for v in range(n):
        out[v] = out[out[v]]
    return np.asarray(out, dtype=np.int64)


def compact_mapping(g: ColouredGraph, roots: np.ndarray) -> ContractionMapping:
    """Renumber root-projected parents to contiguous targets 0..n'-1.

    Distinct root values keep their relative order, so target indices ascend
    with the cluster representatives.
    """
    r = np.asarray(roots, dtype=np.int64)
    if r.size != g.n:
        raise ValueError("root array length must equal graph order")
    if r.size:
        if int(r.min()) < 0 or int(r.max()) >= g.n:
            raise ValueError("root index out of range")
        if not (r[r] == r).all():
            raise ValueError("roots are not projected (roots[roots[v]] != roots[v])")
    uniq, inverse, counts = np.unique(r, return_inverse=True, return_counts=True)
    becomes = inverse.astype(np.int64)
    order = np.argsort(becomes, kind="stable")
    fibres = tuple(np.split(order, np.cumsum(counts)[:-1])) if uniq.size else ()
    return ContractionMapping(
        n=g.n,
        n_prime=int(uniq.size),
        becomes=becomes,
        fibres=fibres,
        cluster_sizes=counts.astype(np.int64),
    )


def evaluate_contraction_mapping(g: ColouredGraph) -> ContractionMapping:
    """Full mapping construction: local minima, root projection, compaction."""
    return compact_mapping(g, project_to_roots(build_functional_digraph(g)))


def _check_mapping_structure(g: ColouredGraph, mapping: ContractionMapping) -> None:
    """O(n) structural checks shared by every application: partition shape,
    index ranges, monochromatic fibres."""
    n, k = mapping.n, mapping.n_prime
    if mapping.becomes.size != n or len(mapping.fibres) != k or mapping.cluster_sizes.size != k:
        raise ValueError("mapping arrays disagree on n or n_prime")
    if k > n:
        raise ValueError("mapping cannot increase the order")
    if n == 0:
        return
    if int(mapping.becomes.min()) < 0 or int(mapping.becomes.max()) >= k:
        raise ValueError("becomes target out of range")
    order = np.concatenate(mapping.fibres) if k else np.empty(0, dtype=np.int64)
    if order.size != n or not np.array_equal(np.sort(order), np.arange(n, dtype=np.int64)):
        raise ValueError("fibres do not partition the vertices")
    sizes = np.array([f.size for f in mapping.fibres], dtype=np.int64)
    if not np.array_equal(sizes, mapping.cluster_sizes):
        raise ValueError("cluster_sizes disagree with fibre lengths")
    targets = np.repeat(np.arange(k, dtype=np.int64), mapping.cluster_sizes)
    if not np.array_equal(mapping.becomes[order], targets):
        raise ValueError("becomes disagrees with fibres")
    firsts = order[np.concatenate(([0], np.cumsum(mapping.cluster_sizes)[:-1]))]
    if not np.array_equal(g.colours[order], np.repeat(g.colours[firsts], mapping.cluster_sizes)):
        raise ValueError("some fibre is not monochromatic")


def _merge_rows_faithful(big: np.ndarray, bounds: np.ndarray, k: int) -> list[np.ndarray]:
    # dense boolean scratchpad, fully cleared for every target vertex
    scratch = np.zeros(k, dtype=bool)
    rows: list[np.ndarray] = []
    for t in range(k):
        scratch.fill(False)
        scratch[big[bounds[t]:bounds[t + 1]]] = True
        scratch[t] = False  # self-edges vanish
        rows.append(np.flatnonzero(scratch).astype(np.int64))
    return rows


def _merge_rows_epoch(big: np.ndarray, bounds: np.ndarray, k: int) -> list[np.ndarray]:
    # version-stamped scratchpad: bumping the epoch replaces the dense reset
    stamp = np.zeros(k, dtype=np.int64)
    rows: list[np.ndarray] = []
    for t in range(k):
        epoch = t + 1
        out: list[int] = []
        for w in big[bounds[t]:bounds[t + 1]].tolist():
            if w != t and stamp[w] != epoch:
                stamp[w] = epoch
                out.append(w)
        out.sort()
        rows.append(np.asarray(out, dtype=np.int64))
    return rows


def apply_contraction(g: ColouredGraph, mapping: ContractionMapping, scratchpad: Scratchpad = "faithful") -> ColouredGraph:
    """Quotient of g by the mapping: one vertex per fibre.

    Edges are relabelled through ``becomes``; duplicates collapse and
    self-edges vanish.  Each new vertex takes the colour of its fibre
    representative.  The result is validated before it is returned.
    """
    if scratchpad not in SCRATCHPAD_VARIANTS:
        raise ValueError(f"unknown scratchpad variant: {scratchpad!r}")
    if mapping.n != g.n:
        raise ValueError("mapping was built for a different graph order")
    _check_mapping_structure(g, mapping)
    k = mapping.n_prime
    if k == 0:
        return ColouredGraph(
            n=0, m=0,
            colours=np.empty(0, dtype=np.int64),
            indptr=np.zeros(1, dtype=np.int64),
            indices=np.empty(0, dtype=np.int64),
        )

    relabelled = mapping.becomes[g.indices] if g.indices.size else np.empty(0, dtype=np.int64)
    order = np.concatenate(mapping.fibres)
    lens = g.degrees[order]
    offsets = np.concatenate(([0], np.cumsum(mapping.cluster_sizes)[:-1]))
    total = int(lens.sum())
    if total:
        # gather the relabelled rows of each fibre, grouped by target
        row_pos = np.cumsum(lens) - lens
        shift = np.repeat(g.indptr[order] - row_pos, lens)
        big = relabelled[np.arange(total, dtype=np.int64) + shift]
        half_counts = np.add.reduceat(lens, offsets)
    else:
        big = np.empty(0, dtype=np.int64)
        half_counts = np.zeros(k, dtype=np.int64)
    bounds = np.concatenate(([0], np.cumsum(half_counts)))

    if scratchpad == "faithful":
        rows = _merge_rows_faithful(big, bounds, k)
    else:
        rows = _merge_rows_epoch(big, bounds, k)

    new_deg = np.fromiter((r.size for r in rows), dtype=np.int64, count=k)
    indptr = np.zeros(k + 1, dtype=np.int64)
    np.cumsum(new_deg, out=indptr[1:])
    indices = np.concatenate(rows) if int(new_deg.sum()) else np.empty(0, dtype=np.int64)
    colours = g.colours[order[offsets]].astype(np.int64)
    return ColouredGraph(n=k, m=int(indices.size) // 2, colours=colours, indptr=indptr, indices=indices)


def _compose(n0: int, mappings: Iterable[ContractionMapping]) -> np.ndarray:
    total = np.arange(n0, dtype=np.int64)
    width = n0
    for mapping in mappings:
        if mapping.n != width:
            raise ValueError(f"mapping chain mismatch: expected source order {width}, got {mapping.n}")
        total = mapping.becomes[total]
        width = mapping.n_prime
    return total


def compose_total_mapping(trace: ContractionTrace) -> np.ndarray:
    """Compose the per-iteration mappings into one original-to-final map.

    Zero iterations compose to the identity.  A chain whose orders do not
    line up raises ValueError.
    """
    n0 = trace.per_iteration[0].n if trace.per_iteration else int(trace.total_map.size)
    return _compose(n0, (r.mapping for r in trace.per_iteration))


def contract_to_fixpoint(
    g: ColouredGraph,
    max_iterations: int | None = None,
    keep_graphs: bool = False,
    scratchpad: Scratchpad = "faithful",
) -> tuple[ColouredGraph, ContractionTrace]:
    """Iterate evaluation and application until nothing contracts.

    Returns the fully contracted graph plus a trace with one record per
    executed application.  An input already at the fixpoint (including the
    empty and one-vertex graphs) returns immediately with zero iterations.
    ``max_iterations`` defaults to ``iteration_bound(n) + 2``; exceeding it
    raises RuntimeError because the convergence guarantee would be broken.
    """
    n0 = g.n
    if max_iterations is None:
        max_iterations = iteration_bound(n0) + 2 if n0 >= 1 else 0
    records: list[IterationRecord] = []
    graphs: list[ColouredGraph] | None = [g] if keep_graphs else None
    current = g
    while True:
        t0 = time.perf_counter()
        mapping = evaluate_contraction_mapping(current)
        if mapping.is_trivial:
            break
        if len(records) >= max_iterations:
            raise RuntimeError(
                f"no fixpoint after {max_iterations} iterations at order {current.n}; "
                "the convergence guarantee is broken"
            )
        contracted = apply_contraction(current, mapping, scratchpad=scratchpad)
        wall_ms = (time.perf_counter() - t0) * 1000.0
        records.append(
            IterationRecord(n=current.n, m=current.m, n_prime=mapping.n_prime, mapping=mapping, wall_time_ms=wall_ms)
        )
        current = contracted
        if graphs is not None:
            graphs.append(current)
    total = _compose(n0, [r.mapping for r in records])
    trace = ContractionTrace(
        iterations=len(records),
        per_iteration=tuple(records),
        total_map=total,
        graphs=tuple(graphs) if graphs is not None else None,
    )
    return current, trace


def _group_by_value(values: np.ndarray) -> list[np.ndarray]:
    if values.size == 0:
        return []
    order = np.argsort(values, kind="stable")
    _, counts = np.unique(values, return_counts=True)
    return np.split(order, np.cumsum(counts)[:-1])


def equivalent_contractions(g: ColouredGraph, trace: ContractionTrace, partition) -> bool:
    """True when the trace realises exactly the partition's contraction.

    Checks, in order: the composed mapping is internally consistent, its
    fibre partition equals the partition's blocks as a set of sets, per-block
    colours agree, and the final edge set re-expressed over block indices
    equals the block-level edge set of g.  Any structural mismatch returns
    False rather than raising.
    """
    try:
        total = _compose(g.n, [r.mapping for r in trace.per_iteration])
    except ValueError:
        return False
    if not np.array_equal(total, trace.total_map):
        return False

    engine_fibres = _group_by_value(total)
    if g.n:
        uniq = np.unique(total)
        if not np.array_equal(uniq, np.arange(uniq.size, dtype=np.int64)):
            return False
    oracle_index = {frozenset(b.tolist()): j for j, b in enumerate(partition.blocks)}
    engine_sets = [frozenset(f.tolist()) for f in engine_fibres]
    if set(engine_sets) != set(oracle_index):
        return False
    correspondence = [oracle_index[s] for s in engine_sets]

    final = g
    try:
        for record in trace.per_iteration:
            final = apply_contraction(final, record.mapping)
    except ValueError:
        return False
    if final.n != len(engine_fibres):
        return False
    for t, j in enumerate(correspondence):
        if int(final.colours[t]) != int(partition.block_colour[j]):
            return False

    ea = final.edge_array()
    engine_edges = {
        (min(correspondence[int(u)], correspondence[int(v)]), max(correspondence[int(u)], correspondence[int(v)]))
        for u, v in ea.tolist()
    }
    block_of = partition.vertex_block()
    oracle_edges = set()
    for u, v in g.edge_array().tolist():
        bu, bv = int(block_of[u]), int(block_of[v])
        if bu != bv:
            oracle_edges.add((min(bu, bv), max(bu, bv)))
    return engine_edges == oracle_edges
