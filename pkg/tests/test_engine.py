import numpy as np
import pytest

from colourcontract import (
    ContractionMapping,
    ContractionTrace,
    apply_contraction,
    build_functional_digraph,
    colour_partition,
    compact_mapping,
    component_contraction,
    compose_total_mapping,
    contract_to_fixpoint,
    equivalent_contractions,
    evaluate_contraction_mapping,
    graphs_equal,
    iteration_bound,
    new_graph,
    project_to_roots,
)
from reference_impls import contract_by_relabel, roots_by_iterated_lookup

from conftest import FIG24_EXPECTED


# ---------------------------------------------------------------- bound

def test_iteration_bound_small_values():
    assert [iteration_bound(n) for n in range(1, 9)] == [0, 1, 2, 2, 3, 3, 4, 4]


def test_iteration_bound_rejects_zero():
    with pytest.raises(ValueError):
        iteration_bound(0)


def test_iteration_bound_matches_high_precision_log():
    import mpmath

    mpmath.mp.dps = 60
    phi = (1 + mpmath.sqrt(5)) / 2
    for n in range(1, 3000):
        assert iteration_bound(n) == int(mpmath.floor(mpmath.log(n) / mpmath.log(phi))), n
    for n in (10**6, 10**6 + 1, 10**9, 50000):
        assert iteration_bound(n) == int(mpmath.floor(mpmath.log(n) / mpmath.log(phi))), n


def test_iteration_bound_exact_at_fibonacci_orders():
    a, b = 2, 3  # F(3), F(4)
    for i in range(1, 60):
        assert iteration_bound(a) == i
        a, b = b, a + b


# ---------------------------------------------------------- digraph build

def test_digraph_isolated_vertices():
    g = new_graph(3, [], [0, 0, 0])
    assert build_functional_digraph(g).tolist() == [0, 1, 2]


def test_digraph_p4(p4):
    assert build_functional_digraph(p4).tolist() == [0, 1, 0, 1]


def test_digraph_monochromatic_path():
    g = new_graph(4, [(0, 1), (1, 2), (2, 3)], [0, 0, 0, 0])
    assert build_functional_digraph(g).tolist() == [0, 0, 1, 2]


def test_digraph_colour_boundaries(triangle_two_colours):
    assert build_functional_digraph(triangle_two_colours).tolist() == [0, 0, 2]


def test_digraph_never_increases():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(1, 25))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
        g = new_graph(n, edges, rng.integers(0, 3, size=n).tolist())
        b = build_functional_digraph(g)
        assert (b <= np.arange(n)).all()


# ---------------------------------------------------------- root projection

def test_project_identity():
    assert project_to_roots(np.array([0, 1, 2])).tolist() == [0, 1, 2]


def test_project_chain():
    assert project_to_roots(np.array([0, 0, 1, 2])).tolist() == [0, 0, 0, 0]


def test_project_p4(p4):
    assert project_to_roots(build_functional_digraph(p4)).tolist() == [0, 1, 0, 1]


def test_project_empty():
    assert project_to_roots(np.empty(0, dtype=np.int64)).size == 0


def test_project_rejects_increasing_pointer():
    with pytest.raises(ValueError, match="must not increase"):
        project_to_roots(np.array([1, 1]))
    with pytest.raises(ValueError, match="negative"):
        project_to_roots(np.array([-1, 0]))


def test_project_matches_iterated_lookup():
    rng = np.random.default_rng(11)
    for _ in range(60):
        n = int(rng.integers(1, 40))
        parents = np.array([int(rng.integers(0, v + 1)) for v in range(n)])
        out = project_to_roots(parents)
        assert out.tolist() == roots_by_iterated_lookup(parents.tolist())
        # idempotent: projecting again changes nothing
        assert project_to_roots(out).tolist() == out.tolist()


# ---------------------------------------------------------- compaction

def test_compact_all_to_one(p4):
    mp = compact_mapping(p4, np.array([0, 0, 0, 0]))
    assert mp.n_prime == 1
    assert [f.tolist() for f in mp.fibres] == [[0, 1, 2, 3]]
    assert mp.cluster_sizes.tolist() == [4]


def test_compact_identity(p4):
    mp = compact_mapping(p4, np.array([0, 1, 2, 3]))
    assert mp.is_trivial and mp.n_prime == 4
    assert mp.becomes.tolist() == [0, 1, 2, 3]


def test_compact_p4(p4):
    mp = compact_mapping(p4, np.array([0, 1, 0, 1]))
    assert mp.n_prime == 2
    assert mp.becomes.tolist() == [0, 1, 0, 1]
    assert [f.tolist() for f in mp.fibres] == [[0, 2], [1, 3]]


def test_compact_preserves_root_order():
    g = new_graph(6, [(0, 1), (2, 3), (4, 5)], [0] * 6)
    mp = compact_mapping(g, np.array([0, 0, 2, 2, 4, 4]))
    assert mp.becomes.tolist() == [0, 0, 1, 1, 2, 2]
    mins = [int(f[0]) for f in mp.fibres]
    assert mins == sorted(mins)


def test_compact_rejects_unprojected_roots(p4):
    with pytest.raises(ValueError, match="projected"):
        compact_mapping(p4, np.array([0, 0, 1, 2]))


def test_compact_rejects_wrong_length(p4):
    with pytest.raises(ValueError, match="length"):
        compact_mapping(p4, np.array([0, 0]))


def test_evaluate_empty_graph():
    g = new_graph(0, [], [])
    mp = evaluate_contraction_mapping(g)
    assert mp.n == 0 and mp.n_prime == 0 and mp.is_trivial
    assert mp.fibres == ()


def test_evaluate_figure_graph(fig24):
    mp = evaluate_contraction_mapping(fig24)
    assert [f.tolist() for f in mp.fibres] == FIG24_EXPECTED["fibres"]
    mp.validate(fig24)


def test_mapping_validate_catches_tampering(p4):
    mp = evaluate_contraction_mapping(p4)
    # becomes disagreeing with fibres
    broken = ContractionMapping(
        n=4, n_prime=2,
        becomes=np.array([0, 0, 1, 1]),
        fibres=(np.array([0, 2]), np.array([1, 3])),
        cluster_sizes=np.array([2, 2]),
    )
    with pytest.raises(ValueError):
        broken.validate(p4)
    # disconnected fibre: 0 and 3 are not adjacent in p4
    disconnected = ContractionMapping(
        n=4, n_prime=2,
        becomes=np.array([0, 1, 1, 0]),
        fibres=(np.array([0, 3]), np.array([1, 2])),
        cluster_sizes=np.array([2, 2]),
    )
    with pytest.raises(ValueError, match="connected"):
        disconnected.validate(p4)
    mp.validate(p4)  # the genuine mapping passes


# ---------------------------------------------------------- application

def test_apply_identity_mapping_is_noop(triangle_two_colours):
    g = triangle_two_colours
    mp = compact_mapping(g, np.arange(3))
    assert graphs_equal(apply_contraction(g, mp), g)


def test_apply_p4_first_step(p4):
    mp = evaluate_contraction_mapping(p4)
    g1 = apply_contraction(p4, mp)
    assert g1.n == 2 and g1.m == 1
    assert g1.colours.tolist() == [0, 0]
    assert g1.edge_array().tolist() == [[0, 1]]


def test_apply_collapses_duplicates_and_self_edges():
    # triangle with two vertices merging: duplicate edges collapse to one
    g = new_graph(3, [(0, 1), (0, 2), (1, 2)], [0, 0, 1])
    mp = compact_mapping(g, np.array([0, 0, 2]))
    h = apply_contraction(g, mp)
    assert h.n == 2 and h.m == 1
    assert h.colours.tolist() == [0, 1]
    k, edges, colours = contract_by_relabel(g, mp.becomes.tolist())
    assert (h.n, {tuple(e) for e in h.edge_array().tolist()}, h.colours.tolist()) == (k, edges, colours)


def test_apply_figure_graph(fig24):
    h = apply_contraction(fig24, evaluate_contraction_mapping(fig24))
    assert h.n == FIG24_EXPECTED["final_n"] and h.m == FIG24_EXPECTED["final_m"]
    assert h.colours.tolist() == FIG24_EXPECTED["final_colours"]
    assert [tuple(e) for e in h.edge_array().tolist()] == FIG24_EXPECTED["final_edges"]
    assert h.is_properly_coloured()


def test_apply_rejects_size_mismatch(p4, triangle_two_colours):
    mp = evaluate_contraction_mapping(triangle_two_colours)
    with pytest.raises(ValueError, match="order"):
        apply_contraction(p4, mp)


def test_apply_rejects_non_monochromatic_fibre(triangle_two_colours):
    mp = ContractionMapping(
        n=3, n_prime=1,
        becomes=np.array([0, 0, 0]),
        fibres=(np.array([0, 1, 2]),),
        cluster_sizes=np.array([3]),
    )
    with pytest.raises(ValueError, match="monochromatic"):
        apply_contraction(triangle_two_colours, mp)


def test_apply_rejects_unknown_scratchpad(p4):
    with pytest.raises(ValueError, match="scratchpad"):
        apply_contraction(p4, evaluate_contraction_mapping(p4), scratchpad="other")


def test_scratchpad_variants_agree(p4, fig24, triangle_two_colours):
    for g in (p4, fig24, triangle_two_colours):
        mp = evaluate_contraction_mapping(g)
        assert graphs_equal(apply_contraction(g, mp, "faithful"), apply_contraction(g, mp, "epoch"))


# ---------------------------------------------------------- full runs

def test_fixpoint_already_proper():
    g = new_graph(3, [(0, 1), (1, 2)], [0, 1, 0])
    final, trace = contract_to_fixpoint(g)
    assert trace.iterations == 0
    assert graphs_equal(final, g)
    assert trace.total_map.tolist() == [0, 1, 2]
    assert trace.per_iteration == ()


def test_fixpoint_degenerate_orders():
    for g in (new_graph(0, [], []), new_graph(1, [], [0])):
        final, trace = contract_to_fixpoint(g)
        assert trace.iterations == 0 and graphs_equal(final, g)


def test_fixpoint_p4(p4):
    final, trace = contract_to_fixpoint(p4, keep_graphs=True)
    assert trace.iterations == 2
    assert final.n == 1 and final.m == 0
    assert trace.total_map.tolist() == [0, 0, 0, 0]
    assert [g.n for g in trace.graphs] == [4, 2, 1]
    mid = trace.graphs[1]
    assert mid.m == 1 and np.unique(mid.colours).size == 1


def test_fixpoint_records_strictly_decreasing(p4):
    _, trace = contract_to_fixpoint(p4)
    ns = [r.n for r in trace.per_iteration]
    assert all(a > b for a, b in zip(ns, ns[1:]))
    assert all(r.n_prime < r.n for r in trace.per_iteration)


def test_fixpoint_respects_bound(fig24, p4):
    for g in (fig24, p4):
        _, trace = contract_to_fixpoint(g)
        assert trace.iterations <= iteration_bound(g.n)


def test_fixpoint_max_iterations_exceeded(p4):
    with pytest.raises(RuntimeError, match="fixpoint"):
        contract_to_fixpoint(p4, max_iterations=1)


def test_fixpoint_trace_graphs_off_by_default(p4):
    _, trace = contract_to_fixpoint(p4)
    assert trace.graphs is None


# ---------------------------------------------------------- composition

def test_compose_zero_iterations_is_identity():
    g = new_graph(3, [(0, 1), (1, 2)], [0, 1, 0])
    _, trace = contract_to_fixpoint(g)
    assert compose_total_mapping(trace).tolist() == [0, 1, 2]


def test_compose_p4(p4):
    _, trace = contract_to_fixpoint(p4)
    assert compose_total_mapping(trace).tolist() == [0, 0, 0, 0]
    assert np.array_equal(compose_total_mapping(trace), trace.total_map)


def test_compose_chain_mismatch(p4, fig24):
    _, trace_a = contract_to_fixpoint(p4)
    _, trace_b = contract_to_fixpoint(fig24)
    mixed = ContractionTrace(
        iterations=2,
        per_iteration=(trace_b.per_iteration[0], trace_a.per_iteration[1]),
        total_map=np.arange(24),
    )
    with pytest.raises(ValueError, match="chain"):
        compose_total_mapping(mixed)


def test_total_map_matches_oracle_blocks(fig24):
    _, trace = contract_to_fixpoint(fig24)
    part = colour_partition(fig24)
    assert trace.total_map.tolist() == part.vertex_block().tolist()


# ---------------------------------------------------------- equivalence

def test_equivalent_on_fixtures(p4, fig24, triangle_two_colours):
    for g in (p4, fig24, triangle_two_colours):
        final, trace = contract_to_fixpoint(g)
        assert equivalent_contractions(g, trace, colour_partition(g))
        oracle_graph, _ = component_contraction(g)
        assert graphs_equal(final, oracle_graph)


def test_equivalent_false_on_tampered_total_map():
    g = new_graph(4, [(0, 1), (1, 2), (2, 3)], [0, 0, 1, 1])
    _, trace = contract_to_fixpoint(g)
    tampered = ContractionTrace(
        iterations=trace.iterations,
        per_iteration=trace.per_iteration,
        total_map=np.zeros(4, dtype=np.int64),  # merges the two different-colour blocks
    )
    assert not equivalent_contractions(g, tampered, colour_partition(g))


def test_equivalent_false_on_tampered_mapping():
    g = new_graph(4, [(0, 1), (1, 2), (2, 3)], [0, 0, 1, 1])
    _, trace = contract_to_fixpoint(g)
    fake = ContractionMapping(
        n=4, n_prime=1,
        becomes=np.zeros(4, dtype=np.int64),
        fibres=(np.arange(4),),
        cluster_sizes=np.array([4]),
    )
    tampered = ContractionTrace(iterations=1, per_iteration=trace.per_iteration[:0] + (
        type(trace.per_iteration[0])(n=4, m=3, n_prime=1, mapping=fake, wall_time_ms=0.0),),
        total_map=np.zeros(4, dtype=np.int64))
    assert not equivalent_contractions(g, tampered, colour_partition(g))


def test_equivalent_false_on_wrong_partition(p4):
    _, trace = contract_to_fixpoint(p4)
    g2 = new_graph(4, [(0, 1), (1, 2), (2, 3)], [0, 1, 0, 1])
    assert not equivalent_contractions(p4, trace, colour_partition(g2))
