"""Data-flow testing subsumption: which DU-associations does touring a node guarantee?"""

from .analysis import Analysis, analyze
from .dua import (
    DefUseAnnotations,
    Dua,
    DuaUniverse,
    NodeFacts,
    def_clear_reach,
    edge_dua,
    enumerate_duas,
    node_dua,
    node_facts,
)
from .formats import GraphDocument, load, parse_dsl, parse_json
from .graph import (
    FlowGraph,
    build_graph,
    classify_edges,
    dominators,
    post_dominators,
    reverse_postorder,
)
from .solver import SolverState, solve
from .transfer import DuaSet, TransferFunction

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "DefUseAnnotations",
    "Dua",
    "DuaSet",
    "DuaUniverse",
    "FlowGraph",
    "GraphDocument",
    "NodeFacts",
    "SolverState",
    "TransferFunction",
    "analyze",
    "build_graph",
    "classify_edges",
    "def_clear_reach",
    "dominators",
    "edge_dua",
    "enumerate_duas",
    "load",
    "node_dua",
    "node_facts",
    "parse_dsl",
    "parse_json",
    "post_dominators",
    "reverse_postorder",
    "solve",
]
