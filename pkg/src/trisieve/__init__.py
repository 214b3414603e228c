"""Exact counting of weighted disjoint triples of q-subsets, set packings and pattern subgraphs."""

from .linsys import AUTO_GAMMA, DeltaResult, tau_gamma, weighted_disjoint_triples
from .packing import SetFamily, count_set_packings
from .setcore import SetFunction
from .subgraph import Graph, PathDecomposition, builtin_decomposition, count_subgraph_occurrences

__all__ = [
    "AUTO_GAMMA",
    "DeltaResult",
    "Graph",
    "PathDecomposition",
    "SetFamily",
    "SetFunction",
    "builtin_decomposition",
    "count_set_packings",
    "count_subgraph_occurrences",
    "tau_gamma",
    "weighted_disjoint_triples",
]
