"""Certifying toolkit for orientations of 3-edge-connected multigraphs.

Exact Frank numbers at desk scale, verified orientation certificates for the
7 / 5 / 3 upper-bound constructions, and an executable NP-hardness reduction
from monotone not-all-equal 3-SAT to edge-set deletability.
"""

from .corpus import corpus_names, named_graph
from .exact import (
    DecideResult,
    FrankCertificate,
    SolveLimits,
    Status,
    deletability_decide,
    frank_lower_bound,
    frank_number_exact,
    verify_certificate,
)
from .multigraph import ContractionResult, Multigraph
from .orientation import (
    Orientation,
    cut_characterization_check,
    deletable_arcs,
    eulerian_orientation_constrained,
    is_deletable_set,
    is_k_arc_connected,
    is_strongly_connected,
    is_well_balanced,
    well_balanced_orientation,
)
from .packings import SevenPackings, seven_cycle_packings
from .pipelines import (
    PipelineReport,
    certify_bf5,
    certify_color3,
    certify_esse4,
    certify_upper7,
    orient_matching_deletable,
    orient_special_set_deletable,
)
from .reduction import (
    GadgetInstance,
    NaeFormula,
    assignment_to_orientation,
    build_gadget,
    decompose_connected,
    nae_solve_bruteforce,
    orientation_to_assignment,
    parse_formula,
    preprocess,
)
from .structures import (
    CubicExtension,
    Cycle,
    CyclePacking,
    berge_fulkerson_cover,
    cubic_extension,
    cycles_from_edge_set,
    find_deletable_arc_on_circuit,
    paths_to_two_matchings,
    perfect_matching,
    proper_3_edge_coloring,
    special_set,
    t_join,
    two_edge_disjoint_spanning_trees,
)

__all__ = [name for name in dir() if not name.startswith("_")]
