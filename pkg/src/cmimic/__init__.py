"""Connectivity-c mimicking networks built by edge contraction."""

from .dynacon import edge_lifetime_index, multi_pair_connectivity, offline_connectivity
from .expander import efficient_poly_sized, enumerate_small_cuts, expander_decompose, phi_sparsify
from .graph import (
    TOP,
    CutWitness,
    MultiGraph,
    build_graph,
    max_flow_bounded,
    sparse_certificate,
    thresholded_mincut,
)
from .importantcuts import (
    ConstrainedCutSpec,
    constrained_cut,
    enumerate_important_cuts,
    find_violating_cut_fpt,
)
from .intersect import (
    get_containing_edges,
    local_cut,
    maximal_isolating_cut,
    mimicking_via_containment,
    min_terminal_cut,
    recursive_nontrivial_cuts,
    recursive_terminal_cuts,
    recursive_terminal_cuts_fast,
)
from .oracle import tc_equivalent, verify_containing, verify_intersecting
from .querylog import QueryLog
from .sparsifier import SparsifierResult
from .welllinked import poly_sized_c_network

__all__ = [
    "TOP",
    "ConstrainedCutSpec",
    "CutWitness",
    "MultiGraph",
    "QueryLog",
    "SparsifierResult",
    "build_graph",
    "constrained_cut",
    "edge_lifetime_index",
    "efficient_poly_sized",
    "enumerate_important_cuts",
    "enumerate_small_cuts",
    "expander_decompose",
    "find_violating_cut_fpt",
    "get_containing_edges",
    "local_cut",
    "max_flow_bounded",
    "maximal_isolating_cut",
    "mimicking_via_containment",
    "min_terminal_cut",
    "multi_pair_connectivity",
    "offline_connectivity",
    "phi_sparsify",
    "poly_sized_c_network",
    "recursive_nontrivial_cuts",
    "recursive_terminal_cuts",
    "recursive_terminal_cuts_fast",
    "sparse_certificate",
    "tc_equivalent",
    "thresholded_mincut",
    "verify_containing",
    "verify_intersecting",
]
