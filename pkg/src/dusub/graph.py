"""Control-flow graphs: construction, validation, orderings and dominance.

Nodes are dense integers ``0..n-1``.  A graph has one start node and one or
more exit nodes; every node must be reachable from the start and must reach
some exit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdgeError,
    EmptyExitsError,
    ExitHasSuccessorsError,
    GraphError,
    NoPathToExitError,
    NodeRangeError,
    SelfLoopError,
    UnreachableNodeError,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class FlowGraph:
    num_nodes: int
    edges: tuple[Edge, ...]
    start: int
    exits: frozenset[int]
    succs: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    preds: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        succs: list[list[int]] = [[] for _ in range(self.num_nodes)]
        preds: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for a, b in self.edges:
            succs[a].append(b)
            preds[b].append(a)
        object.__setattr__(self, "succs", tuple(tuple(sorted(s)) for s in succs))
        object.__setattr__(self, "preds", tuple(tuple(sorted(p)) for p in preds))

    @property
    def nodes(self) -> range:
        return range(self.num_nodes)

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.succs[a]

    def __len__(self) -> int:
        return self.num_nodes


def build_graph(
    num_nodes: int,
    edges: Iterable[Sequence[int]],
    start: int,
    exits: Iterable[int],
    *,
    allow_exit_successors: bool = False,
) -> FlowGraph:
    """Validate the pieces of a flow graph and assemble it.

    Edges keep their input order. Raises a :class:`GraphError` subclass
    naming the first offending edge or node.
    """
    if num_nodes < 1:
        raise GraphError("a flow graph needs at least one node")
    exits = frozenset(exits)
    if not exits:
        raise EmptyExitsError()
    if not 0 <= start < num_nodes:
        raise NodeRangeError("start node", start, num_nodes)
    for e in sorted(exits):
        if not 0 <= e < num_nodes:
            raise NodeRangeError("exit node", e, num_nodes)

    seen: set[Edge] = set()
    edge_list: list[Edge] = []
    for raw in edges:
        a, b = (int(v) for v in raw)
        for v in (a, b):
            if not 0 <= v < num_nodes:
                raise NodeRangeError("edge endpoint", v, num_nodes)
        if a == b:
            raise SelfLoopError((a, b))
        if (a, b) in seen:
            raise DuplicateEdgeError((a, b))
        seen.add((a, b))
        edge_list.append((a, b))

    g = FlowGraph(num_nodes, tuple(edge_list), start, exits)

    if not allow_exit_successors:
        for e in sorted(exits):
            if g.succs[e]:
                raise ExitHasSuccessorsError(e)

    forward = _reach(g.succs, [start])
    for n in g.nodes:
        if n not in forward:
            raise UnreachableNodeError(n)
    backward = _reach(g.preds, sorted(exits))
    for n in g.nodes:
        if n not in backward:
            raise NoPathToExitError(n)
    return g


def _reach(adj: Sequence[Sequence[int]], roots: Iterable[int]) -> set[int]:
    seen = set(roots)
    queue = deque(seen)
    while queue:
        n = queue.popleft()
        for m in adj[n]:
            if m not in seen:
                seen.add(m)
                queue.append(m)
    return seen


@dataclass(frozen=True)
class NodeOrdering:
    sequence: tuple[int, ...]
    rank: dict[int, int] = field(compare=False)

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> "NodeOrdering":
        seq = tuple(seq)
        return cls(seq, {n: i for i, n in enumerate(seq)})

    def __iter__(self) -> Iterator[int]:
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)


def _postorder(succs: Sequence[Sequence[int]], root: int) -> list[int]:
    # Iterative DFS, successors in ascending id.
    out: list[int] = []
    visited = {root}
    stack: list[tuple[int, Iterator[int]]] = [(root, iter(sorted(succs[root])))]
    while stack:
        node, it = stack[-1]
        for nxt in it:
            if nxt not in visited:
                visited.add(nxt)
                stack.append((nxt, iter(sorted(succs[nxt]))))
                break
        else:
            stack.pop()
            out.append(node)
    return out


def reverse_postorder(g: FlowGraph) -> NodeOrdering:
    return NodeOrdering.from_sequence(reversed(_postorder(g.succs, g.start)))


@dataclass(frozen=True)
class DominanceMap:
    """Per-node dominator (or post-dominator) sets."""

    sets: tuple[frozenset[int], ...]
    post: bool = False

    def __getitem__(self, n: int) -> frozenset[int]:
        return self.sets[n]

    def __len__(self) -> int:
        return len(self.sets)

    def dominates(self, a: int, b: int) -> bool:
        """True when ``a`` is in the (post-)dominator set of ``b``."""
        return a in self.sets[b]


def _iterative_dominators(
    num_nodes: int,
    root: int,
    preds: Sequence[Sequence[int]],
    order: Sequence[int],
) -> list[frozenset[int]]:
    everything = frozenset(range(num_nodes))
    dom = [everything] * num_nodes
    dom[root] = frozenset([root])
    changed = True
    while changed:
        changed = False
        for n in order:
            if n == root:
                continue
            ps = preds[n]
            new = everything
            for p in ps:
                new = new & dom[p]
            new = new | {n}
            if new != dom[n]:
                dom[n] = new
                changed = True
    return dom


def dominators(g: FlowGraph) -> DominanceMap:
    order = reverse_postorder(g)
    return DominanceMap(tuple(_iterative_dominators(g.num_nodes, g.start, g.preds, order.sequence)))


def post_dominators(g: FlowGraph) -> DominanceMap:
    """Post-dominators, with a node never post-dominating itself.

    Computed as dominators of the edge-reversed graph rooted at a virtual
    exit that every real exit flows into.
    """
    virtual = g.num_nodes
    total = g.num_nodes + 1
    rsuccs: list[list[int]] = [list(p) for p in g.preds] + [sorted(g.exits)]
    rpreds: list[list[int]] = [list(s) for s in g.succs] + [[]]
    for e in g.exits:
        rpreds[e].append(virtual)
    order = list(reversed(_postorder(rsuccs, virtual)))
    dom = _iterative_dominators(total, virtual, rpreds, order)
    return DominanceMap(
        tuple(dom[n] - {n, virtual} for n in g.nodes),
        post=True,
    )


@dataclass(frozen=True)
class EdgeClassification:
    back_edges: frozenset[Edge]
    retreating_edges: frozenset[Edge]


def classify_edges(g: FlowGraph, order: NodeOrdering, dom: DominanceMap) -> EdgeClassification:
    back = frozenset((p, n) for p, n in g.edges if n in dom[p])
    retreating = frozenset((p, n) for p, n in g.edges if order.rank[p] >= order.rank[n])
    return EdgeClassification(back, retreating)
