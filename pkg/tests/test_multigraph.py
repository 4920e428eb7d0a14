import itertools

import pytest
from hypothesis import given, strategies as st

from orientcover.corpus import named_graph
from orientcover.errors import UnknownEdgeError, UnknownVertexError
from orientcover.multigraph import BECAME_LOOP, CONTRACTED_AWAY, KEPT, Multigraph

from oracles import brute_3cuts, brute_min_cut


def as_edges(g):
    return [(e, *g.ends(e)) for e in g.edge_ids]


def small_multigraphs():
    """Hypothesis strategy: multigraphs on up to 5 vertices, loops/parallels allowed."""
    pair = st.tuples(st.integers(0, 4), st.integers(0, 4))
    return st.lists(pair, min_size=0, max_size=8).map(
        lambda pairs: Multigraph.from_pairs(pairs, extra_vertices=range(2)))


# -- degrees and cuts --------------------------------------------------------------


def test_degree_petersen_everywhere_3():
    g = named_graph("petersen")
    assert all(g.degree(v) == 3 for v in g.vertices)


def test_degree_loop_counts_twice():
    g = Multigraph.from_pairs([(0, 0)])
    assert g.degree(0) == 2


def test_degree_k5():
    g = named_graph("k5")
    assert all(g.degree(v) == 4 for v in g.vertices)


def test_edge_cut_petersen_pentagon():
    g = named_graph("petersen")
    assert g.edge_cut(range(5)) == frozenset({5, 6, 7, 8, 9})


def test_edge_cut_single_vertex_excludes_loops():
    g = Multigraph.from_pairs([(0, 0), (0, 1), (0, 2)])
    assert g.edge_cut([0]) == frozenset({1, 2})


def test_edge_cut_4cycle_adjacent_pair():
    g = Multigraph.from_pairs([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert len(g.edge_cut([0, 1])) == 2


def test_edge_cut_rejects_improper_sets():
    g = named_graph("k4")
    with pytest.raises(UnknownVertexError):
        g.edge_cut([])
    with pytest.raises(UnknownVertexError):
        g.edge_cut(g.vertices)


# -- connectivity ------------------------------------------------------------------


def test_local_connectivity_petersen_pairs():
    g = named_graph("petersen")
    assert g.local_edge_connectivity(0, 7) == 3
    assert g.local_edge_connectivity(1, 2) == 3


def test_local_connectivity_parallel_edges():
    g = Multigraph.from_pairs([(0, 1)] * 5)
    assert g.local_edge_connectivity(0, 1) == 5


def test_local_connectivity_path_endpoints():
    g = Multigraph.from_pairs([(0, 1), (1, 2), (2, 3)])
    assert g.local_edge_connectivity(0, 3) == 1


def test_edge_connectivity_values():
    assert named_graph("petersen").edge_connectivity() == 3
    assert named_graph("k5").edge_connectivity() == 4
    disconnected = Multigraph.from_pairs([(0, 1)], extra_vertices=[2])
    assert disconnected.edge_connectivity() == 0


def test_edge_connectivity_matches_brute_force_on_corpus():
    for name in ("k4", "k33", "prism3", "cube", "wheel4", "theta", "double_k4", "hub_triangles"):
        g = named_graph(name)
        assert g.edge_connectivity() == brute_min_cut(g.vertices, as_edges(g)), name


@given(small_multigraphs())
def test_local_connectivity_is_menger_min_cut(g):
    verts = g.vertices
    if len(verts) < 2:
        return
    u, v = verts[0], verts[-1]
    expected = brute_min_cut(verts, as_edges(g), must_have=u, must_not=v)
    assert g.local_edge_connectivity(u, v) == expected


# -- essential 4-edge-connectivity ----------------------------------------------------


def test_essentially_4ec_petersen_but_not_4ec():
    g = named_graph("petersen")
    assert g.is_essentially_4ec()
    assert g.edge_connectivity() == 3


def test_two_triangle_blocks_not_essentially_4ec():
    # two K4-minus-vertex blocks joined by 3 edges; brute force confirms the
    # nontrivial 3-cut between the two triangles
    g = named_graph("prism3")
    cuts = brute_3cuts(g.vertices, as_edges(g))
    assert any(2 <= len(xs) <= g.num_vertices - 2 for xs in cuts)
    assert not g.is_essentially_4ec()


def test_k4_essentially_4ec():
    assert named_graph("k4").is_essentially_4ec()


def test_find_nontrivial_3cut_witness():
    g = named_graph("prism3")
    side, cut = g.find_nontrivial_3cut()
    assert len(cut) == 3
    assert 2 <= len(side) <= g.num_vertices - 2
    assert g.edge_cut(side) == cut


# -- contraction -------------------------------------------------------------------


def test_contract_petersen_two_pentagon_cycles():
    g = named_graph("petersen")
    spokes = {5, 6, 7, 8, 9}
    cycles = set(g.edge_ids) - spokes
    cr = g.contract(cycles)
    assert cr.graph.num_vertices == 2
    assert cr.graph.num_edges == 5
    assert all(not cr.graph.is_loop(e) for e in cr.graph.edge_ids)


def test_contract_single_k4_edge():
    g = named_graph("k4")
    cr = g.contract([0])
    assert cr.graph.num_vertices == 3
    assert cr.graph.num_edges == 5
    ends = [tuple(sorted(cr.graph.ends(e))) for e in cr.graph.edge_ids]
    # both merged endpoints had an edge to each surviving vertex
    assert len(ends) - len(set(ends)) == 2


def test_contract_empty_set_is_identity():
    g = named_graph("petersen")
    cr = g.contract([])
    assert cr.graph == g
    assert all(v == w for v, w in cr.vertex_map.items())
    assert all(st == KEPT for st in cr.edge_status.values())


def test_contract_status_classification():
    # triangle plus a chordish parallel: contracting one edge sends its
    # parallel twin to a loop
    g = Multigraph.from_pairs([(0, 1), (0, 1), (1, 2), (0, 2)])
    cr = g.contract([0])
    assert cr.edge_status[0] == CONTRACTED_AWAY
    assert cr.edge_status[1] == BECAME_LOOP
    assert cr.edge_status[2] == KEPT
    assert cr.graph.is_loop(1)


def test_contract_unknown_edge():
    with pytest.raises(UnknownEdgeError):
        named_graph("k4").contract([99])


def test_contraction_preserves_edge_connectivity_on_corpus(corpus_graph):
    g = corpus_graph
    if g.num_vertices < 3:
        return
    lam = g.edge_connectivity()
    for e in g.edge_ids[:6]:
        if g.is_loop(e):
            continue
        cr = g.contract([e])
        if cr.graph.num_vertices >= 2:
            assert cr.graph.edge_connectivity() >= lam


def test_contraction_preserves_essential_4ec():
    for name in ("petersen", "k4", "wheel4", "hub_triangles"):
        g = named_graph(name)
        assert g.is_essentially_4ec()
        for e in g.edge_ids[:5]:
            cr = g.contract([e])
            if cr.graph.num_vertices >= 2:
                assert cr.graph.is_essentially_4ec(), (name, e)


@given(small_multigraphs())
def test_edge_id_stability_under_contraction(g):
    if g.num_edges == 0:
        return
    f = set(list(g.edge_ids)[: g.num_edges // 2])
    cr = g.contract(f)
    surviving = set(cr.graph.edge_ids)
    assert surviving == set(g.edge_ids) - f
    for e in surviving:
        qu, qv = cr.graph.ends(e)
        u, v = g.ends(e)
        assert {cr.vertex_map[u], cr.vertex_map[v]} == {qu, qv}


# -- components and 2ec pieces ----------------------------------------------------------


def test_components_petersen():
    assert len(named_graph("petersen").connected_components()) == 1


def test_components_after_cut_vertex_removal():
    g = named_graph("double_k4")
    assert len(g.delete_vertex(0).connected_components()) == 2


def test_components_empty_graph():
    assert Multigraph([], {}).connected_components() == ()


def test_maximal_2ec_cycle_is_one_class():
    g = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0)])
    assert g.maximal_2ec_subgraphs() == (frozenset({0, 1, 2}),)


def test_maximal_2ec_tree_is_singletons():
    g = Multigraph.from_pairs([(0, 1), (1, 2), (1, 3)])
    assert all(len(c) == 1 for c in g.maximal_2ec_subgraphs())


def test_maximal_2ec_petersen_minus_spokes():
    g = named_graph("petersen").delete_edges([5, 6, 7, 8, 9])
    classes = set(g.maximal_2ec_subgraphs())
    assert classes == {frozenset(range(5)), frozenset(range(5, 10))}


def test_bridges_parallel_edges_are_never_bridges():
    g = Multigraph.from_pairs([(0, 1), (0, 1), (1, 2)])
    assert g.bridges() == (2,)


# -- non-crossing 3-cuts ------------------------------------------------------------------


@pytest.mark.parametrize("name", ["petersen", "k4", "k33", "prism3", "cube", "theta",
                                  "wheel4", "double_k4", "hub_triangles"])
def test_3cuts_never_cross(name):
    g = named_graph(name)
    if g.num_vertices > 10 or g.edge_connectivity() < 3:
        return
    cuts = brute_3cuts(g.vertices, as_edges(g))
    vs = set(g.vertices)
    for xs, ys in itertools.combinations(cuts, 2):
        corners = (xs - ys, ys - xs, xs & ys, vs - (xs | ys))
        assert any(not c for c in corners), (name, sorted(xs), sorted(ys))
