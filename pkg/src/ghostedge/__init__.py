"""Exact treewidth and k-ghost-edge certification for small graphs."""

from .connectivity import PathSystem, enumerate_separators, menger_count
from .decomposition import (TreeDecomposition, ValidationReport, covers_pair, glue_tds,
                            ordering_to_td, parse_td, restrict_td, validate_td, width, write_td)
from .ghost import (GhostVerdict, exists_excluding_td, ghost_bruteforce, is_ghost_edge,
                    search_counterexamples, sufficient_condition)
from .graph import (Graph, components, delete, induced_subgraph, is_biconnected, is_isomorphic,
                    non_edges, parse_gr, write_gr)
from .minors import MinorModel, find_clique_minor, verify_minor_model
from .treewidth import (fill_graph, ordering_width, reach_set, treewidth_bruteforce,
                        treewidth_dp)

__version__ = "0.1.0"

__all__ = [
    "Graph", "parse_gr", "write_gr", "non_edges", "induced_subgraph", "delete", "components",
    "is_biconnected", "is_isomorphic",
    "TreeDecomposition", "ValidationReport", "validate_td", "width", "covers_pair", "restrict_td",
    "glue_tds", "ordering_to_td", "parse_td", "write_td",
    "PathSystem", "menger_count", "enumerate_separators",
    "MinorModel", "verify_minor_model", "find_clique_minor",
    "reach_set", "fill_graph", "ordering_width", "treewidth_dp", "treewidth_bruteforce",
    "GhostVerdict", "exists_excluding_td", "is_ghost_edge", "sufficient_condition",
    "ghost_bruteforce", "search_counterexamples",
]
