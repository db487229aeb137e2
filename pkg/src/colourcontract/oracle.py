"""Naive traversal-based reference for colour components and their contraction.

This path is deliberately simple (frontier expansion over vertex sets) and
shares no machinery with the iterative engine, so the two can cross-check
each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import ColouredGraph, colour_neighbourhood_set, new_graph


@dataclass(frozen=True)
class ColourPartition:
    """Partition of the vertices into maximal monochromatic connected blocks.

    Blocks are ordered by their smallest member and each block is ascending.
    """

    blocks: tuple[np.ndarray, ...]
    block_colour: np.ndarray

    def __post_init__(self) -> None:
        self.block_colour.setflags(write=False)
        for b in self.blocks:
            b.setflags(write=False)

    def vertex_block(self) -> np.ndarray:
        """Inverse view: block index of every vertex."""
        n = sum(int(b.size) for b in self.blocks)
        out = np.empty(n, dtype=np.int64)
        for j, b in enumerate(self.blocks):
            out[b] = j
        return out


def colour_component(g: ColouredGraph, v: int) -> np.ndarray:
    """Maximal connected monochromatic vertex set containing v, ascending.

    Grows a frontier: repeatedly absorb the colour neighbourhood of the
    current set until it stops changing.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for order {g.n}")
    component: set[int] = set()
    frontier = {v}
    while frontier:
        component |= frontier
        frontier = set(colour_neighbourhood_set(g, component).tolist())
    return np.fromiter(sorted(component), dtype=np.int64)


def colour_partition(g: ColouredGraph) -> ColourPartition:
    """All colour components, discovered from the lowest uncovered index up."""
    covered = np.zeros(g.n, dtype=bool)
    blocks: list[np.ndarray] = []
    for v in range(g.n):
        if covered[v]:
            continue
        comp = colour_component(g, v)
        covered[comp] = True
        blocks.append(comp)
    block_colour = np.array([int(g.colours[b[0]]) for b in blocks], dtype=np.int64)
    return ColourPartition(blocks=tuple(blocks), block_colour=block_colour)


def component_contraction(g: ColouredGraph) -> tuple[ColouredGraph, np.ndarray]:
    """One-shot contraction: one vertex per colour component.

    Returns the contracted graph and the vertex-to-block map.  Block-internal
    edges vanish; edges between blocks collapse to a single edge.
    """
    partition = colour_partition(g)
    block_of = partition.vertex_block()
    ea = g.edge_array()
    if ea.size:
        bu = block_of[ea[:, 0]]
        bv = block_of[ea[:, 1]]
        keep = bu != bv
        pairs = np.column_stack([bu[keep], bv[keep]])
    else:
        pairs = np.empty((0, 2), dtype=np.int64)
    contracted = new_graph(len(partition.blocks), pairs, partition.block_colour)
    return contracted, block_of
