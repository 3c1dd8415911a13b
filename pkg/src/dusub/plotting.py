"""Figures for analysis reports."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .analysis import Analysis


def subsumption_figure(a: Analysis) -> Figure:
    """Grouped bars of local and global subsumed-DUA counts per node."""
    nodes = np.arange(a.graph.num_nodes)
    local = [len(s) for s in a.local]
    glob = [len(s) for s in a.global_]
    width = 0.38

    fig = Figure(figsize=(max(4.0, 0.6 * len(nodes) + 2), 3.2))
    ax = fig.add_subplot(1, 1, 1)
    ax.bar(nodes - width / 2, local, width, label="local", color="#4C72B0")
    ax.bar(nodes + width / 2, glob, width, label="global", color="#DD8452")
    for n in a.unconstrained:
        ax.annotate("*", (n + width / 2, glob[n]), ha="center", va="bottom")
    if a.universe.size:
        ax.axhline(a.universe.size, color="0.5", lw=0.8, ls="--")
        ax.set_ylim(0, a.universe.size * 1.12)
    ax.set_xticks(nodes)
    ax.set_xlabel("node")
    ax.set_ylabel("subsumed DUAs")
    ax.set_title(f"{a.name}: {a.coverage.describe()} via node coverage", fontsize=10)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    return fig


def save_subsumption_figure(a: Analysis, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    subsumption_figure(a).savefig(path, dpi=120)
    return path
