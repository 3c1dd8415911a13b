"""Seeded random annotated flow graphs for property sweeps."""

from __future__ import annotations

import random

from dusub.dua import DefUseAnnotations
from dusub.graph import FlowGraph, build_graph

VARIABLES = ("a", "b", "c")


def random_graph(rng: random.Random, max_nodes: int = 8, max_edges: int = 12) -> FlowGraph:
    """Single-exit graph with start 0 and exit ``n-1``.

    Built valid by construction: a spanning tree from the start, then edges
    from dead ends toward nodes that reach the exit, then random extras.
    Back edges into the start node are allowed.
    """
    while True:
        g = _attempt(rng, max_nodes, max_edges)
        if g is not None:
            return g


def _attempt(rng: random.Random, max_nodes: int, max_edges: int) -> FlowGraph | None:
    n = 1 if rng.random() < 0.03 else rng.randint(2, max_nodes)
    if n == 1:
        return build_graph(1, [], 0, {0})
    exit_ = n - 1
    edges: set[tuple[int, int]] = set()
    for k in range(1, n):
        edges.add((rng.randrange(0, min(k, exit_)), k))
    while True:
        reaches = _reaching_exit(n, edges, exit_)
        stuck = [v for v in range(n) if v not in reaches]
        if not stuck:
            break
        if len(edges) >= max_edges:
            return None
        v = rng.choice(stuck)
        edges.add((v, rng.choice(sorted(reaches - {v}))))
    budget = rng.randint(len(edges), max_edges)
    for _ in range(200):
        if len(edges) >= budget:
            break
        a, b = rng.randrange(0, exit_), rng.randrange(0, n)
        if a != b:
            edges.add((a, b))
    return build_graph(n, sorted(edges), 0, {exit_})


def _reaching_exit(n: int, edges: set[tuple[int, int]], exit_: int) -> set[int]:
    preds: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in edges:
        preds[b].append(a)
    seen, stack = {exit_}, [exit_]
    while stack:
        for p in preds[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def random_annotations(rng: random.Random, g: FlowGraph, nvars: int | None = None) -> DefUseAnnotations:
    names = VARIABLES[: nvars if nvars is not None else rng.randint(1, 3)]

    def pick(p: float) -> list[str]:
        return [v for v in names if rng.random() < p]

    defs = {n: pick(0.35) for n in g.nodes}
    cuses = {n: pick(0.3) for n in g.nodes}
    puses = {}
    for n in g.nodes:
        if len(g.succs[n]) > 1:
            vs = pick(0.4)
            for m in g.succs[n]:
                puses[(n, m)] = vs
        else:
            for m in g.succs[n]:
                puses[(n, m)] = pick(0.15)
    return DefUseAnnotations.from_lists(defs, cuses, puses)


def random_instance(seed: int):
    rng = random.Random(seed)
    g = random_graph(rng)
    return g, random_annotations(rng, g)
