import json

import pytest
from hypothesis import given, strategies as st

from orientcover.corpus import named_graph
from orientcover.errors import FormatError, Graph6FormatError, GraphTooLargeError
from orientcover.graphio import (
    SizeCap,
    from_edge_list,
    from_graph6,
    graph_from_json,
    graph_to_json,
    to_edge_list,
    to_graph6,
)
from orientcover.multigraph import Multigraph


def test_edge_list_round_trip_with_loops_and_parallels():
    text = "0 1\n0 1\n2 2\n# comment\n1 2\n"
    g = from_edge_list(text)
    assert g.num_edges == 4
    assert g.is_loop(2)
    again = from_edge_list(to_edge_list(g))
    assert [tuple(sorted(again.ends(e))) for e in again.edge_ids] == \
        [tuple(sorted(g.ends(e))) for e in g.edge_ids]


def test_edge_list_rejects_garbage():
    with pytest.raises(FormatError):
        from_edge_list("0 1 2\n")
    with pytest.raises(FormatError):
        from_edge_list("a b\n")


def test_edge_list_cap():
    text = "\n".join(f"0 {i}" for i in range(1, 70))
    with pytest.raises(GraphTooLargeError):
        from_edge_list(text)
    assert from_edge_list(text, cap=None).num_vertices == 70


def test_graph6_k4_is_C_tilde():
    assert to_graph6(named_graph("k4")) == "C~"
    g = from_graph6("C~")
    assert g.num_vertices == 4 and g.num_edges == 6


def test_graph6_petersen_round_trip():
    g = named_graph("petersen")
    again = from_graph6(to_graph6(g))
    assert {tuple(sorted(again.ends(e))) for e in again.edge_ids} == \
        {tuple(sorted(g.ends(e))) for e in g.edge_ids}


def test_graph6_header_accepted():
    assert from_graph6(">>graph6<<C~").num_edges == 6


def test_graph6_rejects_multigraphs_distinctly():
    with pytest.raises(Graph6FormatError):
        to_graph6(Multigraph.from_pairs([(0, 1), (0, 1)]))
    with pytest.raises(Graph6FormatError):
        to_graph6(Multigraph.from_pairs([(0, 0)]))


def test_graph6_rejects_malformed():
    with pytest.raises(Graph6FormatError):
        from_graph6("")
    with pytest.raises(Graph6FormatError):
        from_graph6("C~~~~")
    with pytest.raises(Graph6FormatError):
        from_graph6("C\x01")


def test_json_round_trip_canonical():
    g = named_graph("prism3")
    payload = graph_to_json(g)
    assert payload["edges"] == sorted(payload["edges"], key=lambda r: r["id"])
    assert graph_from_json(json.loads(json.dumps(payload))) == g


def test_json_rejects_duplicate_ids():
    with pytest.raises(FormatError):
        graph_from_json({"vertices": [0, 1], "edges": [
            {"id": 0, "u": 0, "v": 1}, {"id": 0, "u": 1, "v": 0}]})


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=10))
def test_json_round_trip_property(pairs):
    g = Multigraph.from_pairs(pairs)
    assert graph_from_json(graph_to_json(g), cap=SizeCap()) == g
