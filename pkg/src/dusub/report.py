"""Subsumption results derived from a solved state."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dua import DuaUniverse
from .graph import DominanceMap, FlowGraph
from .solver import SolverState
from .transfer import DuaSet


def local_map(state: SolverState) -> list[DuaSet]:
    return list(state.covered)


def global_map(state: SolverState, pdom: DominanceMap) -> list[DuaSet]:
    """Covered(n) joined with the covered sets of every post-dominator of n."""
    result = []
    for n, covered in enumerate(state.covered):
        acc = covered
        for m in pdom[n]:
            acc = acc | state.covered[m]
        result.append(acc)
    return result


@dataclass(frozen=True)
class NodeSubsumption:
    """``subsumes[m]`` holds every node toured by all complete paths through ``m``."""

    subsumes: tuple[frozenset[int], ...]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        m, n = pair
        return n in self.subsumes[m]

    def pairs(self) -> list[tuple[int, int]]:
        return [(m, n) for m, ns in enumerate(self.subsumes) for n in sorted(ns)]


def node_subsumption(g: FlowGraph, dom: DominanceMap, pdom: DominanceMap) -> NodeSubsumption:
    return NodeSubsumption(tuple(dom[m] | pdom[m] | {m} for m in g.nodes))


def unconstrained_nodes(rel: NodeSubsumption) -> list[int]:
    """Greedy spanning set: repeatedly take the node subsuming the most
    still-uncovered nodes, lowest id on ties."""
    remaining = set(range(len(rel.subsumes)))
    chosen: list[int] = []
    while remaining:
        best = max(range(len(rel.subsumes)), key=lambda m: (len(rel.subsumes[m] & remaining), -m))
        chosen.append(best)
        remaining -= rel.subsumes[best]
    return sorted(chosen)


@dataclass(frozen=True)
class CoverageSummary:
    covered: int
    total: int
    per_node: tuple[int, ...]

    @property
    def no_requirements(self) -> bool:
        return self.total == 0

    @property
    def ratio(self) -> Fraction | None:
        return None if self.total == 0 else Fraction(self.covered, self.total)

    @property
    def percent(self) -> int | None:
        if self.total == 0:
            return None
        # round half up on the exact rational
        return int(Fraction(100 * self.covered, self.total) + Fraction(1, 2))

    def describe(self) -> str:
        if self.no_requirements:
            return "0/0 (no requirements)"
        return f"{self.covered}/{self.total} ({self.percent}%)"


def coverage_summary(global_sets: list[DuaSet], universe: DuaUniverse) -> CoverageSummary:
    union = universe.empty()
    for s in global_sets:
        union = union | s
    return CoverageSummary(len(union), universe.size, tuple(len(s) for s in global_sets))
