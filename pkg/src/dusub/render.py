"""Serialising analysis results: JSON, plain text, CSV and DOT."""

from __future__ import annotations

import csv
import io
import json

from .analysis import Analysis
from .dua import Dua, DuaUniverse
from .oracle import DiscrepancyReport
from .transfer import DuaSet


def dua_record(index: int, d: Dua) -> dict:
    return {
        "index": index,
        "def": d.def_node,
        "use_kind": "edge" if d.is_edge else "node",
        "use": list(d.use_edge) if d.is_edge else d.use_node,
        "var": d.var,
        "label": d.label(),
    }


def report_dict(a: Analysis) -> dict:
    cov = a.coverage
    return {
        "graph": a.name,
        "stats": {
            "nodes": a.graph.num_nodes,
            "edges": len(a.graph.edges),
            "duas": a.universe.size,
            "iterations": a.state.iterations,
            "visits": a.state.visits,
            "retreating_edges": len(a.edges.retreating_edges),
            "back_edges": len(a.edges.back_edges),
        },
        "duas": [dua_record(i, d) for i, d in enumerate(a.universe)],
        "local": {str(n): list(s) for n, s in enumerate(a.local)},
        "global": {str(n): list(s) for n, s in enumerate(a.global_)},
        "unconstrained": list(a.unconstrained),
        "coverage": {
            "covered": cov.covered,
            "total": cov.total,
            "ratio": None if cov.no_requirements else f"{cov.covered}/{cov.total}",
            "percent": cov.percent,
            "no_requirements": cov.no_requirements,
        },
    }


def report_json(a: Analysis) -> str:
    return json.dumps(report_dict(a), indent=2) + "\n"


def _labels(universe: DuaUniverse, s: DuaSet) -> list[str]:
    return [d.label() for d in universe.members(s)]


def duas_table(universe: DuaUniverse) -> str:
    rows = [("#", "def", "use", "var", "dua")]
    for i, d in enumerate(universe):
        use = f"({d.use_pred},{d.use_node})" if d.is_edge else str(d.use_node)
        rows.append((str(i), str(d.def_node), use, d.var, d.label()))
    widths = [max(len(r[c]) for r in rows) for c in range(4)]
    lines = []
    for r in rows:
        cells = [r[c].ljust(widths[c]) for c in range(4)] + [r[4]]
        lines.append("  ".join(cells).rstrip())
    lines.append(f"{universe.size} DUAs")
    return "\n".join(lines) + "\n"


def report_text(a: Analysis, include_global: bool = False) -> str:
    u = a.universe
    k = len(a.edges.retreating_edges)
    out = [
        f"graph {a.name}: {a.graph.num_nodes} nodes, {len(a.graph.edges)} edges, {u.size} DUAs",
        f"solver: {a.state.iterations} iterations, {k} retreating edge{'' if k == 1 else 's'}",
        "",
    ]
    for n in a.graph.nodes:
        head = f"node {n}: local {len(a.local[n])}"
        if include_global:
            head += f", global {len(a.global_[n])}"
        out.append(head)
        out.extend(f"  {lbl}" for lbl in _labels(u, a.local[n]))
        if include_global:
            extra = a.global_[n] - a.local[n]
            out.extend(f"  + {lbl}" for lbl in _labels(u, extra))
    out.append("")
    out.append("unconstrained nodes: " + " ".join(map(str, a.unconstrained)))
    out.append("node coverage yields data-flow coverage " + a.coverage.describe())
    return "\n".join(out) + "\n"


def report_csv(a: Analysis) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", "local", "global", "local_duas", "global_duas"])
    for n in a.graph.nodes:
        w.writerow([
            n,
            len(a.local[n]),
            len(a.global_[n]),
            "; ".join(_labels(a.universe, a.local[n])),
            "; ".join(_labels(a.universe, a.global_[n])),
        ])
    return buf.getvalue()


def _dot_string(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def report_dot(a: Analysis, labels: str = "local") -> str:
    if labels not in ("local", "global"):
        raise ValueError("labels must be 'local' or 'global'")
    sets = a.local if labels == "local" else a.global_
    lines = [
        f"digraph {_dot_string(a.name)} {{",
        '  node [shape=box, fontname="monospace"];',
    ]
    for n in a.graph.nodes:
        # \l is DOT's left-justified line break; it must survive as a literal.
        text = "\\l".join([str(n)] + _labels(a.universe, sets[n])) + "\\l"
        attrs = [f'label="{text}"']
        if n in a.graph.exits:
            attrs.append("peripheries=2")
        if n == a.graph.start:
            attrs.append("style=bold")
        lines.append(f"  n{n} [{', '.join(attrs)}];")
    for p, s in a.graph.edges:
        lines.append(f"  n{p} -> n{s};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def discrepancy_text(report: DiscrepancyReport, universe: DuaUniverse) -> str:
    if report.ok:
        return f"solver agrees with path oracle on every node (edge bound {report.edge_bound})\n"
    out = [f"{len(report.nodes)} node(s) disagree with the path oracle (edge bound {report.edge_bound})"]
    for d in report.nodes:
        out.append(f"node {d.node}:")
        out.extend(f"  solver only: {lbl}" for lbl in _labels(universe, d.solver_only))
        out.extend(f"  oracle only: {lbl}" for lbl in _labels(universe, d.oracle_only))
    return "\n".join(out) + "\n"
