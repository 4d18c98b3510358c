"""Generate k-edge-connected graphs from random spanning trees of K_n and
check the statistics of the union of k uniform trees."""
from .connectivity import (
    ConnectivityCertificate, brute_force_connectivity, count_disjoint_paths, edge_connectivity,
)
from .disjointify import (
    RepairLog, Swap, disjointify, generate_k_connected, get_replacement_edge, split_components,
)
from .graph_core import (
    DisconnectedError, Edge, GraphError, SelfLoopError, SimpleGraph, SpanningTree,
    VertexRangeError, WrongEdgeCountError, edge_new, graph_union, tree_validate,
)
from .prufer import count_trees_with_degree, prufer_decode, prufer_encode
from .samplers import RngStream, SamplerKind, sample_k_trees, sample_tree
from .splicer_stats import (
    MultiSplicer, StatReport, brute_force_oracle, concentration_check, exact_cov_re,
    exact_expected_common, exact_expected_m, exact_expected_sk, exact_var_m, exact_var_re,
    mc_estimate, repetitions,
)

__all__ = [
    "disjointify",
    "ConnectivityCertificate",
    "brute_force_connectivity",
    "count_disjoint_paths",
    "edge_connectivity",
    "RepairLog",
    "Swap",
    "generate_k_connected",
    "get_replacement_edge",
    "split_components",
    "DisconnectedError",
    "Edge",
    "GraphError",
    "SelfLoopError",
    "SimpleGraph",
    "SpanningTree",
    "VertexRangeError",
    "WrongEdgeCountError",
    "edge_new",
    "graph_union",
    "tree_validate",
    "count_trees_with_degree",
    "prufer_decode",
    "prufer_encode",
    "RngStream",
    "SamplerKind",
    "sample_k_trees",
    "sample_tree",
    "MultiSplicer",
    "StatReport",
    "brute_force_oracle",
    "concentration_check",
    "exact_cov_re",
    "exact_expected_common",
    "exact_expected_m",
    "exact_expected_sk",
    "exact_var_m",
    "exact_var_re",
    "mc_estimate",
    "repetitions",
]

__version__ = "0.1.0"
