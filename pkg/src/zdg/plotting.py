"""Matplotlib figures written next to the delimited reports."""
from __future__ import annotations

import math
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .graph import SimpleGraph, core  # noqa: E402
from .verdict import Status  # noqa: E402

STATUS_COLORS = {
    Status.PASS.value: "#4c9a2a",
    Status.VACUOUS.value: "#9e9e9e",
    Status.NOT_APPLICABLE.value: "#e0a526",
    Status.FAIL.value: "#c0392b",
}

# fixed metadata keeps PNG bytes reproducible
_PNG_META = {"Software": None}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def plot_verdicts(counts: dict[str, dict[str, int]], path: str | Path) -> Path:
    """Horizontal stacked bars of verdict counts per check."""
    checks = sorted(counts)
    fig, ax = plt.subplots(figsize=(8, 0.45 * max(len(checks), 1) + 1.2))
    left = [0] * len(checks)
    for status, color in STATUS_COLORS.items():
        vals = [counts[c].get(status, 0) for c in checks]
        ax.barh(checks, vals, left=left, color=color, label=status)
        left = [a + b for a, b in zip(left, vals)]
    ax.set_xlabel("instances")
    ax.invert_yaxis()
    ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.08 - 0.6 / max(len(checks), 1)),
              ncol=4, fontsize=8, frameon=False)
    ax.set_title("verdicts per check")
    fig.tight_layout()
    return _save(fig, Path(path))


def plot_diameters(diameters: list, path: str | Path) -> Path:
    """Histogram of the diameters of non-empty graphs seen in a sweep."""
    c = Counter(str(d) for d in diameters)
    keys = sorted(c, key=lambda k: (not k.isdigit(), int(k) if k.isdigit() else 0, k))
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(keys, [c[k] for k in keys], color="#3b6ea5")
    ax.set_xlabel("diameter")
    ax.set_ylabel("graphs")
    fig.tight_layout()
    return _save(fig, Path(path))


def plot_graph(G: SimpleGraph, path: str | Path, title: str | None = None) -> Path:
    """Circular layout; core edges solid, bridges dashed."""
    verts = G.sorted_vertices()
    n = max(len(verts), 1)
    pos = {v: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i, v in enumerate(verts)}
    K = core(G)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for u, v in G.sorted_edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        on_cycle = frozenset((u, v)) in K.edges
        ax.plot([x1, x2], [y1, y2], color="#333333", lw=1.2, ls="-" if on_cycle else "--", zorder=1)
    for v in verts:
        x, y = pos[v]
        ax.scatter([x], [y], s=420, color="white", edgecolors="#333333", zorder=2)
        ax.text(x, y, v, ha="center", va="center", fontsize=8, zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _save(fig, Path(path))
