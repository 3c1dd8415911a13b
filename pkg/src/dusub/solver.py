"""Iterative solver for local DUA-node subsumption.

For every node ``n`` the solver finds ``Covered(n)``: the DUAs covered on
every path from the start node that reaches ``n``.  OUT sets start at the
full universe and shrink to a fixpoint; a final pass refreshes the covered
sets against the converged OUT sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dua import DuaUniverse, NodeFacts
from .errors import NoPredecessorsError
from .graph import Edge, FlowGraph, NodeOrdering, classify_edges, dominators, reverse_postorder
from .transfer import DuaSet, TransferFunction


@dataclass(frozen=True)
class Snapshot:
    """OUT and Covered bit masks for every node after one while-loop pass."""

    out: tuple[int, ...]
    covered: tuple[int, ...]


@dataclass(frozen=True)
class SolverState:
    in_sets: tuple[DuaSet, ...]
    out_sets: tuple[DuaSet, ...]
    covered: tuple[DuaSet, ...]
    iterations: int
    visits: int
    order: tuple[int, ...]
    history: tuple[Snapshot, ...] = field(default=(), repr=False)

    @property
    def num_nodes(self) -> int:
        return len(self.covered)


def cur_sleepy(g: FlowGraph, facts: NodeFacts, n: int, back_edges: Iterable[Edge]) -> DuaSet:
    """Edge DUAs that cannot be covered on arrival at ``n``.

    Sleepy sets of predecessors reached over back edges are ignored: ``n``
    was toured before such a predecessor on every path.
    """
    if not g.preds[n]:
        raise NoPredecessorsError(n)
    back = set(back_edges)
    size = facts.sleepy[n].size
    bits = 0
    for p in g.preds[n]:
        if (p, n) not in back:
            bits |= facts.sleepy[p].bits
    return DuaSet(size, bits)


def solve(
    g: FlowGraph,
    facts: NodeFacts,
    universe: DuaUniverse,
    order: NodeOrdering | Sequence[int] | None = None,
    back_edges: Iterable[Edge] | None = None,
    *,
    record_history: bool = False,
) -> SolverState:
    """Run the subsumption algorithm to convergence.

    ``order`` is the node visitation order inside each pass and defaults to
    reverse postorder.  ``back_edges`` defaults to the edges whose head
    dominates their tail.  With ``record_history`` the OUT/Covered masks are
    kept after initialisation and after every pass.
    """
    if order is None:
        order = reverse_postorder(g)
    seq = tuple(order)
    if back_edges is None:
        back_edges = classify_edges(g, reverse_postorder(g), dominators(g)).back_edges
    back = frozenset(back_edges)

    size = universe.size
    full = (1 << size) - 1
    s = g.start
    preds = g.preds
    born = [x.bits for x in facts.born]
    keep = [full & ~x.bits for x in facts.disabled]
    pot = [x.bits for x in facts.pot_covered]
    # Sleepy sets and back edges are fixed, so CurSleepy is too.
    sleepy_in = [
        cur_sleepy(g, facts, n, back).bits if preds[n] else 0 for n in g.nodes
    ]

    in_ = [full] * g.num_nodes
    out = [full] * g.num_nodes
    cov = [full] * g.num_nodes
    in_[s], out[s], cov[s] = 0, born[s], 0

    history: list[Snapshot] = []
    if record_history:
        history.append(Snapshot(tuple(out), tuple(cov)))

    def evaluate(n: int) -> None:
        i = full
        c = full
        for p in preds[n]:
            i &= out[p]
            c &= cov[p]
        in_[n] = i
        cov[n] = c | (i & ~sleepy_in[n] & pot[n])

    iterations = 0
    visits = 0
    changed = True
    while changed:
        changed = False
        iterations += 1
        for n in seq:
            if n == s:
                continue
            evaluate(n)
            visits += 1
            new_out = born[n] | (in_[n] & keep[n]) | cov[n]
            if new_out != out[n]:
                out[n] = new_out
                changed = True
        if record_history:
            history.append(Snapshot(tuple(out), tuple(cov)))

    for n in seq:
        if n == s:
            continue
        evaluate(n)
        visits += 1

    def wrap(xs: list[int]) -> tuple[DuaSet, ...]:
        return tuple(DuaSet(size, x) for x in xs)

    return SolverState(
        in_sets=wrap(in_),
        out_sets=wrap(out),
        covered=wrap(cov),
        iterations=iterations,
        visits=visits,
        order=seq,
        history=tuple(history),
    )


def node_transfer(
    g: FlowGraph, facts: NodeFacts, state: SolverState, n: int, back_edges: Iterable[Edge]
) -> TransferFunction:
    """The five-set transfer function of ``n`` given the solved predecessors."""
    size = facts.born[n].size
    c = DuaSet.full(size)
    for p in g.preds[n]:
        c = c & state.covered[p]
    if not g.preds[n]:
        c = DuaSet.empty(size)
    cs = cur_sleepy(g, facts, n, back_edges) if g.preds[n] else DuaSet.empty(size)
    return TransferFunction(facts.born[n], facts.disabled[n], c, cs, facts.pot_covered[n])


def is_fixpoint(g: FlowGraph, facts: NodeFacts, state: SolverState, back_edges: Iterable[Edge]) -> bool:
    """Re-evaluate every non-start node and report whether anything moves."""
    back = frozenset(back_edges)
    for n in g.nodes:
        if n == g.start:
            continue
        i = DuaSet.full(facts.born[n].size)
        for p in g.preds[n]:
            i = i & state.out_sets[p]
        f = node_transfer(g, facts, state, n, back)
        covered = f.covered | ((i - f.cur_sleepy) & f.pot_covered)
        out = f.born | (i - f.disabled) | covered
        if i != state.in_sets[n] or covered != state.covered[n] or out != state.out_sets[n]:
            return False
    return True


def iteration_bound_check(state: SolverState, retreating_count: int) -> bool:
    return state.iterations <= retreating_count + 2
