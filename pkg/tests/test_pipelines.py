import pytest

from orientcover.corpus import named_graph
from orientcover.errors import NotThreeEdgeColorableError, PreconditionError, SearchExhaustedError
from orientcover.exact import verify_certificate
from orientcover.multigraph import Multigraph
from orientcover.orientation import deletable_arcs, is_deletable_set, is_strongly_connected
from orientcover.pipelines import (
    certify_bf5,
    certify_color3,
    certify_esse4,
    certify_upper7,
    orient_matching_deletable,
    orient_special_set_deletable,
)
from orientcover.structures import (
    CyclePacking,
    cycles_from_edge_set,
    is_circuit_in,
    perfect_matching,
    special_set,
)


def assert_report_ok(g, report, bound):
    assert len(report.certificate.orientations) <= bound
    assert verify_certificate(g, report.certificate) == (True, frozenset())
    assert len(report.provenance) == len(report.certificate.orientations)


# -- special-set orientations ----------------------------------------------------------


def test_orient_special_set_petersen_spokes():
    g = named_graph("petersen")
    p = cycles_from_edge_set(g, set(g.edge_ids) - {5, 6, 7, 8, 9})
    d = orient_special_set_deletable(g, p)
    assert special_set(g, p) <= deletable_arcs(d)
    for c in p.cycles:
        assert is_circuit_in(d, c)


def test_orient_special_set_empty_packing_on_k5():
    g = named_graph("k5")
    d = orient_special_set_deletable(g, CyclePacking(()))
    # K5 has no 3-cuts, so every edge is special and hence deletable
    assert deletable_arcs(d) == frozenset(g.edge_ids)


def test_orient_special_set_covering_packing():
    g = named_graph("cube")
    m = perfect_matching(g)
    p = cycles_from_edge_set(g, set(g.edge_ids) - m)
    d = orient_special_set_deletable(g, p)
    assert is_strongly_connected(d)


# -- matching orientations -------------------------------------------------------------


def test_matching_orientation_petersen_spokes():
    g = named_graph("petersen")
    m = frozenset({5, 6, 7, 8, 9})
    p = cycles_from_edge_set(g, set(g.edge_ids) - m)
    d = orient_matching_deletable(g, m, p)
    assert is_deletable_set(d, m)
    for c in p.cycles:
        assert is_circuit_in(d, c)


def test_matching_orientation_empty_matching():
    g = named_graph("petersen")
    p = cycles_from_edge_set(g, set(g.edge_ids) - {5, 6, 7, 8, 9})
    d = orient_matching_deletable(g, frozenset(), p)
    assert is_strongly_connected(d)
    for c in p.cycles:
        assert is_circuit_in(d, c)


def test_matching_orientation_single_k5_edge():
    g = named_graph("k5")
    d = orient_matching_deletable(g, frozenset({0}), CyclePacking(()))
    assert is_deletable_set(d, {0})


def test_matching_orientation_rejects_non_esse4():
    g = named_graph("prism3")
    with pytest.raises(PreconditionError):
        orient_matching_deletable(g, frozenset({0}), CyclePacking(()))


def test_matching_orientation_rejects_non_matching():
    g = named_graph("petersen")
    with pytest.raises(PreconditionError):
        orient_matching_deletable(g, frozenset({0, 1}), CyclePacking(()))


def test_every_matching_of_k4_is_deletable():
    g = named_graph("k4")
    for m in ({0}, {0, 5}, {1, 4}, {2, 3}):
        d = orient_matching_deletable(g, frozenset(m), CyclePacking(()))
        assert is_deletable_set(d, m)


def test_matching_orientation_exhaustive_fallback():
    from orientcover.pipelines import _fallback_matching_orientation

    g = named_graph("petersen")
    m = frozenset({5, 6, 7, 8, 9})
    p = cycles_from_edge_set(g, set(g.edge_ids) - m)
    d = _fallback_matching_orientation(g, m, p)
    assert is_deletable_set(d, m)
    for c in p.cycles:
        assert is_circuit_in(d, c)


def test_well_balanced_exhaustive_fallback():
    from orientcover.orientation import is_well_balanced, well_balanced_orientation

    g = named_graph("k4")
    d = well_balanced_orientation(g, pairing_budget=0)  # forces the orientation scan
    assert is_well_balanced(g, d)


# -- upper-7 pipeline --------------------------------------------------------------------


@pytest.mark.parametrize("name", ["petersen", "k4", "k33", "prism3", "cube", "theta",
                                  "moebius_kantor", "bipetersen"])
def test_upper7_cubic_corpus(name):
    g = named_graph(name)
    assert_report_ok(g, certify_upper7(g), 7)


@pytest.mark.parametrize("name", ["k5", "wheel4", "wheel5"])
def test_upper7_extension_path(name):
    g = named_graph(name)
    report = certify_upper7(g)
    assert_report_ok(g, report, 7)
    assert any("cubic-extension" in p for p in report.provenance)


def test_upper7_cut_vertex_path():
    g = named_graph("double_k4")
    report = certify_upper7(g)
    assert_report_ok(g, report, 7)
    assert any("cut-vertex" in p for p in report.provenance)


def test_upper7_rejects_low_connectivity():
    with pytest.raises(PreconditionError):
        certify_upper7(Multigraph.from_pairs([(0, 1), (1, 2), (2, 0)]))


def test_upper7_bounds_exact_frank_numbers():
    from orientcover.exact import frank_number_exact

    for name in ("k4", "k33", "prism3", "cube", "theta", "petersen"):
        g = named_graph(name)
        k, _ = frank_number_exact(g)
        assert k <= len(certify_upper7(g).certificate.orientations) <= 7


# -- 3-coloring pipeline --------------------------------------------------------------------


@pytest.mark.parametrize("name", ["k4", "k33", "prism3", "cube"])
def test_color3_on_colorable_corpus(name):
    g = named_graph(name)
    assert_report_ok(g, certify_color3(g), 3)


def test_color3_rejects_petersen_distinctly():
    with pytest.raises(NotThreeEdgeColorableError):
        certify_color3(named_graph("petersen"))


def test_color3_rejects_non_cubic():
    with pytest.raises(PreconditionError):
        certify_color3(named_graph("k5"))


# -- double-cover pipeline --------------------------------------------------------------


@pytest.mark.parametrize("name", ["petersen", "k4", "prism3"])
def test_bf5_corpus(name):
    g = named_graph(name)
    assert_report_ok(g, certify_bf5(g), 5)


def test_bf5_zero_budget_indeterminate():
    with pytest.raises(SearchExhaustedError):
        certify_bf5(named_graph("petersen"), node_budget=0)


# -- essentially-4ec pipeline ------------------------------------------------------------


@pytest.mark.parametrize("name", ["petersen", "k4", "theta", "moebius_kantor"])
def test_esse4_cubic_corpus(name):
    g = named_graph(name)
    assert_report_ok(g, certify_esse4(g), 3)


def test_esse4_wheel_extension_path():
    g = named_graph("wheel4")
    report = certify_esse4(g)
    assert_report_ok(g, report, 3)
    assert any("cubic-extension" in p for p in report.provenance)


def test_esse4_bridge_split_path():
    g = named_graph("hub_triangles")
    report = certify_esse4(g)
    assert_report_ok(g, report, 3)
    assert any("connecting-edge" in p for p in report.provenance)


def test_esse4_rejects_prism():
    with pytest.raises(PreconditionError):
        certify_esse4(named_graph("prism3"))


def test_esse4_k5():
    g = named_graph("k5")
    assert_report_ok(g, certify_esse4(g), 3)


def test_esse4_certifies_petersen_within_exact_value():
    from orientcover.exact import frank_number_exact

    g = named_graph("petersen")
    report = certify_esse4(g)
    k, _ = frank_number_exact(g)
    assert k == 3 and len(report.certificate.orientations) == 3


def test_pipelines_are_deterministic():
    g = named_graph("petersen")
    assert certify_esse4(g).to_json() == certify_esse4(g).to_json()
    assert certify_upper7(g).to_json() == certify_upper7(g).to_json()
