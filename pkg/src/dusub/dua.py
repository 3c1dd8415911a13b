"""Def/use annotations, all-uses DUA enumeration and per-node fact sets."""

from __future__ import annotations

import re
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import AnnotationError, UndefinedVariableWarning, VarNotDefinedAtError
from .graph import Edge, FlowGraph
from .transfer import DuaSet

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_NONE: frozenset[str] = frozenset()


def is_variable_name(name: str) -> bool:
    return bool(_IDENT.match(name))


@dataclass(frozen=True)
class DefUseAnnotations:
    """Downward-exposed defs and upward-exposed c-uses per node, p-uses per edge."""

    defs: Mapping[int, frozenset[str]] = field(default_factory=dict)
    cuses: Mapping[int, frozenset[str]] = field(default_factory=dict)
    puses: Mapping[Edge, frozenset[str]] = field(default_factory=dict)

    @classmethod
    def from_lists(
        cls,
        defs: Mapping[int, Iterable[str]] | None = None,
        cuses: Mapping[int, Iterable[str]] | None = None,
        puses: Mapping[Edge, Iterable[str]] | None = None,
    ) -> "DefUseAnnotations":
        def norm(m):
            return {k: frozenset(v) for k, v in (m or {}).items() if v}

        return cls(norm(defs), norm(cuses), norm(puses))

    def defs_at(self, n: int) -> frozenset[str]:
        return self.defs.get(n, _NONE)

    def cuses_at(self, n: int) -> frozenset[str]:
        return self.cuses.get(n, _NONE)

    def puses_at(self, edge: Edge) -> frozenset[str]:
        return self.puses.get(edge, _NONE)

    def variables(self) -> list[str]:
        names: set[str] = set()
        for m in (self.defs, self.cuses, self.puses):
            for vs in m.values():
                names |= vs
        return sorted(names)


def validate_annotations(g: FlowGraph, ann: DefUseAnnotations) -> None:
    """Reject annotations on missing nodes/edges or with bad variable names.

    Variables that are used but never defined only trigger an
    :class:`UndefinedVariableWarning`.
    """
    for label, mapping in (("defs", ann.defs), ("cuses", ann.cuses)):
        for n, vs in mapping.items():
            if not 0 <= n < g.num_nodes:
                raise AnnotationError(f"{label}: node {n} not in graph")
            _check_names(label, vs)
    for e, vs in ann.puses.items():
        if not g.has_edge(*e):
            raise AnnotationError(f"puses: edge {e} not in graph")
        _check_names("puses", vs)

    defined: set[str] = set()
    for vs in ann.defs.values():
        defined |= vs
    used: set[str] = set()
    for vs in list(ann.cuses.values()) + list(ann.puses.values()):
        used |= vs
    for v in sorted(used - defined):
        warnings.warn(UndefinedVariableWarning(f"variable {v!r} is used but never defined"), stacklevel=2)


def _check_names(label: str, names: Iterable[str]) -> None:
    for v in names:
        if not is_variable_name(v):
            raise AnnotationError(f"{label}: invalid variable name {v!r}")


@dataclass(frozen=True)
class Dua:
    """A def of ``var`` at ``def_node`` paired with a use.

    ``use_pred`` is ``None`` for a c-use at node ``use_node`` and the
    edge's source for a p-use on ``(use_pred, use_node)``.
    """

    def_node: int
    use_node: int
    var: str
    use_pred: int | None = None

    @property
    def is_edge(self) -> bool:
        return self.use_pred is not None

    @property
    def use_edge(self) -> Edge | None:
        return None if self.use_pred is None else (self.use_pred, self.use_node)

    def sort_key(self) -> tuple:
        if self.use_pred is None:
            return (self.def_node, 0, (self.use_node,), self.var)
        return (self.def_node, 1, (self.use_pred, self.use_node), self.var)

    def label(self) -> str:
        if self.use_pred is None:
            return f"({self.def_node}, {self.use_node}, {self.var})"
        return f"({self.def_node}, ({self.use_pred},{self.use_node}), {self.var})"

    def __str__(self) -> str:
        return self.label()


def node_dua(d: int, u: int, var: str) -> Dua:
    return Dua(d, u, var)


def edge_dua(d: int, edge: Edge, var: str) -> Dua:
    return Dua(d, edge[1], var, edge[0])


class DuaUniverse:
    """Ordered, indexed collection of every DUA of a graph."""

    def __init__(self, duas: Iterable[Dua], annotations: DefUseAnnotations | None = None):
        ordered = sorted(set(duas), key=Dua.sort_key)
        self.duas: tuple[Dua, ...] = tuple(ordered)
        self.index: dict[Dua, int] = {d: i for i, d in enumerate(ordered)}
        self.annotations = annotations if annotations is not None else DefUseAnnotations()

    def __len__(self) -> int:
        return len(self.duas)

    def __getitem__(self, i: int) -> Dua:
        return self.duas[i]

    def __iter__(self):
        return iter(self.duas)

    def __contains__(self, d: Dua) -> bool:
        return d in self.index

    @property
    def size(self) -> int:
        return len(self.duas)

    def empty(self) -> DuaSet:
        return DuaSet.empty(self.size)

    def full(self) -> DuaSet:
        return DuaSet.full(self.size)

    def set_of(self, duas: Iterable[Dua]) -> DuaSet:
        return DuaSet.of(self.size, (self.index[d] for d in duas))

    def where(self, pred) -> DuaSet:
        return DuaSet.of(self.size, (i for i, d in enumerate(self.duas) if pred(d)))

    def members(self, s: DuaSet) -> list[Dua]:
        return [self.duas[i] for i in s]


def def_clear_reach(
    g: FlowGraph, ann: DefUseAnnotations, var: str, d: int
) -> tuple[set[int], set[Edge]]:
    """Nodes and edges a def of ``var`` at ``d`` reaches without redefinition.

    A node is reached when some nonempty path from ``d`` arrives at it with
    no node strictly in between redefining ``var``; the endpoint itself may
    redefine it.  An edge ``(u', u)`` is reached when the def is still live
    leaving ``u'``.
    """
    if var not in ann.defs_at(d):
        raise VarNotDefinedAtError(d, var)
    nodes: set[int] = set()
    queue = deque(g.succs[d])
    while queue:
        n = queue.popleft()
        if n in nodes:
            continue
        nodes.add(n)
        if var not in ann.defs_at(n):
            queue.extend(m for m in g.succs[n] if m not in nodes)
    sources = {d} | {n for n in nodes if var not in ann.defs_at(n)}
    edges = {(u, v) for u in sources for v in g.succs[u]}
    return nodes, edges


def enumerate_duas(g: FlowGraph, ann: DefUseAnnotations) -> DuaUniverse:
    found: list[Dua] = []
    for d in g.nodes:
        for var in sorted(ann.defs_at(d)):
            nodes, edges = def_clear_reach(g, ann, var, d)
            found.extend(node_dua(d, u, var) for u in nodes if var in ann.cuses_at(u))
            found.extend(edge_dua(d, e, var) for e in edges if var in ann.puses_at(e))
    return DuaUniverse(found, ann)


@dataclass(frozen=True)
class NodeFacts:
    born: tuple[DuaSet, ...]
    disabled: tuple[DuaSet, ...]
    pot_covered: tuple[DuaSet, ...]
    sleepy: tuple[DuaSet, ...]


def node_facts(g: FlowGraph, universe: DuaUniverse) -> NodeFacts:
    ann = universe.annotations
    born, disabled, pot, sleepy = [], [], [], []
    for n in g.nodes:
        defined = ann.defs_at(n)
        born.append(universe.where(lambda D: D.def_node == n))
        disabled.append(universe.where(lambda D: D.var in defined and D.def_node != n))
        pot.append(universe.where(lambda D: D.use_node == n))
        sleepy.append(universe.where(lambda D: D.is_edge and D.use_pred != n))
    return NodeFacts(tuple(born), tuple(disabled), tuple(pot), tuple(sleepy))
