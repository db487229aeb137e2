"""Adversarial monochromatic instances maximising the contraction iteration count.

The family grows level by level: attach one new leaf to every current cluster
representative, then renumber so that each leaf steals its representative's
old index and the representative moves past every existing vertex.  Level i
has exactly fib_number(i + 2) vertices, every cluster of its pointer forest
has order 1 or 2, one contraction step reproduces level i - 1 exactly, and
the full run takes exactly i iterations, matching iteration_bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import (
    apply_contraction,
    contract_to_fixpoint,
    evaluate_contraction_mapping,
    iteration_bound,
)
from .graph import ColouredGraph, graphs_equal, new_graph

ROLE_PAIR_ROOT = "P"  # representative of a two-vertex cluster (a fresh leaf)
ROLE_NON_ROOT = "Q"   # non-representative member of a cluster
ROLE_LONE_ROOT = "R"  # representative of a singleton cluster

MAX_LEVEL = 30  # fib_number(32) = 2178309 vertices; higher levels only burn memory


def fib_number(j: int) -> int:
    """Fibonacci number with F(0) = 0, F(1) = 1."""
    if j < 0:
        raise ValueError("fib_number requires j >= 0")
    a, b = 0, 1
    for _ in range(j):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class FibInstance:
    """One level of the family: the graph, per-vertex roles, previous order."""

    graph: ColouredGraph
    level: int
    roles: tuple[str, ...]
    prev_order: int


def _grow(g: ColouredGraph) -> tuple[ColouredGraph, tuple[str, ...], int]:
    mapping = evaluate_contraction_mapping(g)
    k = mapping.n_prime
    representatives = np.array([int(f[0]) for f in mapping.fibres], dtype=np.int64)
    if not np.array_equal(representatives, np.arange(k, dtype=np.int64)):
        raise RuntimeError("family invariant broken: representatives are not 0..k-1")
    n = g.n
    # old representative j moves to n + j, everything else keeps its index,
    # and the new leaf attached to it takes index j
    relabel = np.arange(n, dtype=np.int64)
    relabel[:k] += n
    old_edges = relabel[g.edge_array()] if g.m else np.empty((0, 2), dtype=np.int64)
    leaf_edges = np.column_stack([np.arange(k, dtype=np.int64), np.arange(k, dtype=np.int64) + n])
    edges = np.vstack([old_edges, leaf_edges])
    grown = new_graph(n + k, edges, np.zeros(n + k, dtype=np.int64))
    roles = tuple(
        ROLE_PAIR_ROOT if v < k else (ROLE_LONE_ROOT if v < n else ROLE_NON_ROOT)
        for v in range(n + k)
    )
    return grown, roles, n


def generate_fib_instance(level: int) -> FibInstance:
    """Build the level-i instance by iterated growth from the single vertex."""
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"level must be in [0, {MAX_LEVEL}]")
    graph = new_graph(1, [], [0])
    roles: tuple[str, ...] = (ROLE_LONE_ROOT,)
    prev_order = 0
    for _ in range(level):
        graph, roles, prev_order = _grow(graph)
    return FibInstance(graph=graph, level=level, roles=roles, prev_order=prev_order)


def classify_roles(g: ColouredGraph) -> tuple[str, ...]:
    """Role of every vertex under the current pointer forest.

    Cluster representatives of non-singleton clusters are P, other members
    are Q, and isolated representatives are R.  On generated instances this
    reproduces the stored role labels.
    """
    mapping = evaluate_contraction_mapping(g)
    roles = [ROLE_NON_ROOT] * g.n
    for fibre in mapping.fibres:
        roles[int(fibre[0])] = ROLE_PAIR_ROOT if fibre.size > 1 else ROLE_LONE_ROOT
    return tuple(roles)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FibReport:
    """Outcome of verifying one instance; failures are enumerated, not raised."""

    level: int
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def _expected_roles(level: int) -> tuple[str, ...]:
    if level == 0:
        return (ROLE_LONE_ROOT,)
    pair_roots = fib_number(level)        # leaves added at this level
    reps = fib_number(level + 1)          # all representatives
    order = fib_number(level + 2)
    return tuple(
        ROLE_PAIR_ROOT if v < pair_roots else (ROLE_LONE_ROOT if v < reps else ROLE_NON_ROOT)
        for v in range(order)
    )


def verify_fib_instance(inst: FibInstance) -> FibReport:
    """Re-check every defining property of a generated instance."""
    i = inst.level
    g = inst.graph
    checks: list[CheckResult] = []

    expected_order = fib_number(i + 2)
    monochrome = np.unique(g.colours).size <= 1
    checks.append(
        CheckResult(
            "order",
            g.n == expected_order and monochrome,
            f"order {g.n}, expected {expected_order}, monochromatic {monochrome}",
        )
    )

    if i == 0:
        checks.append(CheckResult("step_map", True, "not applicable at level 0"))
        checks.append(CheckResult("step_graph", True, "not applicable at level 0"))
    else:
        prev_n = fib_number(i + 1)
        mapping = evaluate_contraction_mapping(g)
        idx = np.arange(g.n, dtype=np.int64)
        closed_form = np.where(idx < prev_n, idx, idx - prev_n)
        checks.append(
            CheckResult(
                "step_map",
                mapping.n_prime == prev_n and np.array_equal(mapping.becomes, closed_form),
                f"n_prime {mapping.n_prime}, expected {prev_n}",
            )
        )
        previous = generate_fib_instance(i - 1)
        stepped = apply_contraction(g, mapping)
        checks.append(
            CheckResult(
                "step_graph",
                graphs_equal(stepped, previous.graph),
                "one application must reproduce the previous level exactly",
            )
        )

    expected_roles = _expected_roles(i)
    expected_prev = fib_number(i + 1) if i >= 1 else 0
    checks.append(
        CheckResult(
            "role_windows",
            inst.roles == expected_roles and inst.prev_order == expected_prev,
            f"P count {fib_number(i) if i else 0}, representative count {fib_number(i + 1) if i else 1}",
        )
    )

    final, trace = contract_to_fixpoint(g)
    bound_tight = i == 0 or iteration_bound(g.n) == i
    checks.append(
        CheckResult(
            "fixpoint_iterations",
            final.n == 1 and trace.iterations == i and bound_tight,
            f"iterations {trace.iterations}, final order {final.n}, bound {iteration_bound(g.n)}",
        )
    )

    return FibReport(level=i, checks=tuple(checks))
