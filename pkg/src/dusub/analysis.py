"""One-call pipeline from an annotated graph to every derived result."""

from __future__ import annotations

from dataclasses import dataclass

from .dua import DefUseAnnotations, DuaUniverse, NodeFacts, enumerate_duas, node_facts
from .graph import (
    DominanceMap,
    EdgeClassification,
    FlowGraph,
    NodeOrdering,
    classify_edges,
    dominators,
    post_dominators,
    reverse_postorder,
)
from .report import (
    CoverageSummary,
    NodeSubsumption,
    coverage_summary,
    global_map,
    local_map,
    node_subsumption,
    unconstrained_nodes,
)
from .solver import SolverState, solve
from .transfer import DuaSet


@dataclass(frozen=True)
class Analysis:
    name: str
    graph: FlowGraph
    annotations: DefUseAnnotations
    universe: DuaUniverse
    facts: NodeFacts
    order: NodeOrdering
    dom: DominanceMap
    pdom: DominanceMap
    edges: EdgeClassification
    state: SolverState
    local: list[DuaSet]
    global_: list[DuaSet]
    subsumption: NodeSubsumption
    unconstrained: list[int]
    coverage: CoverageSummary


def analyze(graph: FlowGraph, annotations: DefUseAnnotations, name: str = "cfg") -> Analysis:
    universe = enumerate_duas(graph, annotations)
    facts = node_facts(graph, universe)
    order = reverse_postorder(graph)
    dom = dominators(graph)
    pdom = post_dominators(graph)
    edges = classify_edges(graph, order, dom)
    state = solve(graph, facts, universe, order, edges.back_edges)
    local = local_map(state)
    glob = global_map(state, pdom)
    rel = node_subsumption(graph, dom, pdom)
    return Analysis(
        name=name,
        graph=graph,
        annotations=annotations,
        universe=universe,
        facts=facts,
        order=order,
        dom=dom,
        pdom=pdom,
        edges=edges,
        state=state,
        local=local,
        global_=glob,
        subsumption=rel,
        unconstrained=unconstrained_nodes(rel),
        coverage=coverage_summary(glob, universe),
    )
