"""Path-level ground truth for local DUA-node subsumption.

Coverage is simulated directly along concrete paths and intersected over
every path from the start node that ends at a node, with each edge used at
most ``edge_bound`` times.  Nothing here shares code with the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .dua import DuaUniverse
from .errors import BoundTooSmallError, InvalidPathError
from .graph import Edge, FlowGraph
from .solver import SolverState
from .transfer import DuaSet

DEFAULT_EDGE_BOUND = 2


@dataclass(frozen=True)
class PathCoverage:
    covered: DuaSet
    available: DuaSet


class _Semantics:
    """Bit masks driving the per-step coverage rules."""

    def __init__(self, g: FlowGraph, universe: DuaUniverse):
        ann = universe.annotations
        n = g.num_nodes
        self.born = [0] * n
        self.kill = [0] * n
        self.node_use = [0] * n
        self.edge_use: dict[Edge, int] = {}
        for i, d in enumerate(universe):
            bit = 1 << i
            self.born[d.def_node] |= bit
            if d.is_edge:
                self.edge_use[d.use_edge] = self.edge_use.get(d.use_edge, 0) | bit
            else:
                self.node_use[d.use_node] |= bit
            for m in g.nodes:
                if d.var in ann.defs_at(m):
                    self.kill[m] |= bit

    def enter(self, avail: int, covered: int, prev: int | None, n: int) -> tuple[int, int]:
        if prev is not None:
            covered |= avail & (self.node_use[n] | self.edge_use.get((prev, n), 0))
        avail = (avail & ~self.kill[n]) | self.born[n]
        return avail, covered


def simulate_path(g: FlowGraph, path: Sequence[int], universe: DuaUniverse) -> PathCoverage:
    """Walk ``path`` from the start node, tracking available and covered DUAs.

    On entering ``n`` from ``p``: available DUAs used at ``n`` or on
    ``(p, n)`` become covered, then every DUA whose variable ``n`` defines
    stops being available, then the DUAs born at ``n`` become available.
    """
    if not path or path[0] != g.start:
        raise InvalidPathError("a path must be nonempty and begin at the start node")
    for a, b in zip(path, path[1:]):
        if not (0 <= a < g.num_nodes and 0 <= b < g.num_nodes) or not g.has_edge(a, b):
            raise InvalidPathError(f"({a}, {b}) is not an edge")
    sem = _Semantics(g, universe)
    avail, covered = 0, 0
    prev = None
    for n in path:
        avail, covered = sem.enter(avail, covered, prev, n)
        prev = n
    return PathCoverage(DuaSet(universe.size, covered), DuaSet(universe.size, avail))


def _walk(g: FlowGraph, edge_bound: int) -> Iterator[list[int]]:
    # Yields the live path list after every extension (mutated in place).
    if edge_bound < 1:
        raise ValueError("edge_bound must be at least 1")
    used: dict[Edge, int] = {}
    path = [g.start]

    def rec() -> Iterator[list[int]]:
        yield path
        last = path[-1]
        for m in g.succs[last]:
            e = (last, m)
            if used.get(e, 0) >= edge_bound:
                continue
            used[e] = used.get(e, 0) + 1
            path.append(m)
            yield from rec()
            path.pop()
            used[e] -= 1

    yield from rec()


def enumerate_paths_to(g: FlowGraph, n: int, edge_bound: int = DEFAULT_EDGE_BOUND) -> list[tuple[int, ...]]:
    """All start-to-``n`` paths using no edge more than ``edge_bound`` times."""
    found = [tuple(p) for p in _walk(g, edge_bound) if p[-1] == n]
    if not found:
        raise BoundTooSmallError(n, edge_bound)
    return found


def mop_covered(g: FlowGraph, universe: DuaUniverse, n: int, edge_bound: int = DEFAULT_EDGE_BOUND) -> DuaSet:
    result = DuaSet.full(universe.size)
    for path in enumerate_paths_to(g, n, edge_bound):
        result = result & simulate_path(g, path, universe).covered
    return result


def mop_covered_all(g: FlowGraph, universe: DuaUniverse, edge_bound: int = DEFAULT_EDGE_BOUND) -> list[DuaSet]:
    """:func:`mop_covered` for every node in a single path walk."""
    if edge_bound < 1:
        raise ValueError("edge_bound must be at least 1")
    sem = _Semantics(g, universe)
    full = (1 << universe.size) - 1
    meet = [full] * g.num_nodes
    seen = [False] * g.num_nodes
    used: dict[Edge, int] = {}

    def rec(n: int, avail: int, covered: int) -> None:
        meet[n] &= covered
        seen[n] = True
        for m in g.succs[n]:
            e = (n, m)
            k = used.get(e, 0)
            if k >= edge_bound:
                continue
            used[e] = k + 1
            a2, c2 = sem.enter(avail, covered, n, m)
            rec(m, a2, c2)
            used[e] = k

    a0, c0 = sem.enter(0, 0, None, g.start)
    rec(g.start, a0, c0)
    for n in g.nodes:
        if not seen[n]:
            raise BoundTooSmallError(n, edge_bound)
    return [DuaSet(universe.size, x) for x in meet]


@dataclass(frozen=True)
class NodeDiscrepancy:
    node: int
    solver_only: DuaSet
    oracle_only: DuaSet


@dataclass(frozen=True)
class DiscrepancyReport:
    edge_bound: int
    nodes: tuple[NodeDiscrepancy, ...]

    @property
    def ok(self) -> bool:
        return not self.nodes

    def __bool__(self) -> bool:
        return not self.ok


def compare_with_solver(
    state: SolverState, g: FlowGraph, universe: DuaUniverse, edge_bound: int = DEFAULT_EDGE_BOUND
) -> DiscrepancyReport:
    expected = mop_covered_all(g, universe, edge_bound)
    diffs = []
    for n in g.nodes:
        got = state.covered[n]
        if got != expected[n]:
            diffs.append(NodeDiscrepancy(n, got - expected[n], expected[n] - got))
    return DiscrepancyReport(edge_bound, tuple(diffs))
