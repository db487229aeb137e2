import numpy as np
import pytest

from colourcontract import (
    GraphParseError,
    export_dot,
    generate_fib_instance,
    graphs_equal,
    new_graph,
    parse_graph,
    serialize_graph,
    stats_records,
    contract_to_fixpoint,
)
from reference_impls import random_coloured_graph


P4_TEXT = "4 3\n0 0 0 0\n0 2\n1 3\n2 3\n"


def test_serialize_empty():
    assert serialize_graph(new_graph(0, [], [])) == "0 0\n"


def test_serialize_p4(p4):
    assert serialize_graph(p4) == P4_TEXT


def test_serialize_edgeless():
    assert serialize_graph(new_graph(2, [], [5, 6])) == "2 0\n5 6\n"


def test_parse_empty():
    g = parse_graph("0 0\n")
    assert g.n == 0 and g.m == 0


def test_parse_p4(p4):
    assert graphs_equal(parse_graph(P4_TEXT), p4)


def test_parse_accepts_comments_blanks_and_any_orientation(p4):
    text = "# header next\n\n4 3\n# colours\n0 0 0 0\n2 0\n\n3 1\n# last edge\n2 3\n"
    assert graphs_equal(parse_graph(text), p4)


def test_parse_accepts_stream(tmp_path, p4):
    path = tmp_path / "g.graph"
    path.write_text(P4_TEXT)
    with open(path) as handle:
        assert graphs_equal(parse_graph(handle), p4)


def test_parse_error_reports_line_numbers():
    with pytest.raises(GraphParseError, match="line 1"):
        parse_graph("nope\n")
    with pytest.raises(GraphParseError, match="line 2"):
        parse_graph("2 1\n0\n0 1\n")
    with pytest.raises(GraphParseError, match="line 4"):
        parse_graph("2 1\n0 0\n# fine\n0 9\n")
    err = None
    try:
        parse_graph("3 2\n0 0 0\n0 1\n1 1\n")
    except GraphParseError as exc:
        err = exc
    assert err is not None and err.line_no == 4 and "self-loop" in str(err)


def test_parse_error_on_truncation():
    with pytest.raises(GraphParseError, match="unexpected end"):
        parse_graph("3 2\n0 0 0\n0 1\n")
    with pytest.raises(GraphParseError, match="missing colour"):
        parse_graph("3 2\n")


def test_parse_error_on_trailing_content():
    with pytest.raises(GraphParseError, match="trailing"):
        parse_graph("2 1\n0 0\n0 1\n0 1\n")


def test_parse_error_on_negative_header():
    with pytest.raises(GraphParseError, match="non-negative"):
        parse_graph("-1 0\n")


def test_round_trip_random_graphs():
    rng = np.random.default_rng(19)
    for _ in range(50):
        n, edges, colours = random_coloured_graph(rng)
        g = new_graph(n, edges, colours)
        assert graphs_equal(parse_graph(serialize_graph(g)), g)


def test_round_trip_normalises_input_order(p4):
    scrambled = "4 3\n0 0 0 0\n3 2\n2 0\n3 1\n"
    assert serialize_graph(parse_graph(scrambled)) == P4_TEXT


def test_dot_empty_graph_is_valid():
    text = export_dot(new_graph(0, [], []))
    assert text.startswith("graph") and text.rstrip().endswith("}")


def test_dot_lists_vertices_and_edges(p4):
    text = export_dot(p4)
    assert text.count(" -- ") == 3
    assert all(f'{v} [label="{v}"' in text for v in range(4))
    fills = {line.split('fillcolor="')[1].split('"')[0] for line in text.splitlines() if "fillcolor" in line}
    assert len(fills) == 1  # one colour id, one fill


def test_dot_distinct_fill_per_colour(fig24):
    text = export_dot(fig24)
    fills = {line.split('fillcolor="')[1].split('"')[0] for line in text.splitlines() if "fillcolor" in line}
    assert len(fills) == 3


def test_dot_role_styling_uses_three_classes():
    inst = generate_fib_instance(3)
    text = export_dot(inst.graph, role_labels=inst.roles)
    fills = {line.split('fillcolor="')[1].split('"')[0] for line in text.splitlines() if "fillcolor" in line}
    assert len(fills) == len(set(inst.roles)) == 3


def test_dot_rejects_bad_roles(p4):
    with pytest.raises(ValueError, match="role"):
        export_dot(p4, role_labels=("P", "Q"))
    with pytest.raises(ValueError, match="role"):
        export_dot(p4, role_labels=("P", "Q", "R", "X"))


def test_dot_deterministic(fig24):
    assert export_dot(fig24) == export_dot(fig24)


def test_stats_records_contiguous_from_one(p4):
    _, trace = contract_to_fixpoint(p4)
    records = stats_records(trace)
    assert [r.iteration for r in records] == [1, 2]
    assert [r.n_before for r in records] == [4, 2]
    assert [r.n_after for r in records] == [2, 1]
    assert all(r.n_after < r.n_before for r in records)
    assert all(r.wall_time_ms >= 0 for r in records)
