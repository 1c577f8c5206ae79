"""Figures written next to the tab-separated reports."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_RC = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def rank_kernel_grid(pairs: Iterable[tuple[int, int]], path, title: str = "") -> None:
    """Heat map of how many matrices realize each (rank, kernel) pair.

    Rows are kernel dimensions (largest on top), columns ranks.
    """
    counts = Counter(pairs)
    if not counts:
        raise ValueError("no (rank, kernel) pairs to plot")
    ranks = range(min(r for r, _ in counts), max(r for r, _ in counts) + 1)
    kers = range(max(k for _, k in counts), min(k for _, k in counts) - 1, -1)
    grid = np.array([[counts.get((r, k), 0) for r in ranks] for k in kers])
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(0.6 * len(ranks) + 1.6, 0.5 * len(kers) + 1.2))
        ax.imshow(np.ma.masked_equal(grid, 0), cmap="Blues", vmin=0, aspect="auto")
        for i, k in enumerate(kers):
            for j, r in enumerate(ranks):
                if grid[i, j]:
                    ax.text(j, i, str(grid[i, j]), ha="center", va="center")
        ax.set_xticks(range(len(ranks)), [str(r) for r in ranks])
        ax.set_yticks(range(len(kers)), [str(k) for k in kers])
        ax.set_xlabel("rank")
        ax.set_ylabel("kernel dimension")
        if title:
            ax.set_title(title)
        fig.savefig(path)
        plt.close(fig)


def verdict_bars(table: Mapping[str, Mapping[str, int]], path, title: str = "") -> None:
    """Stacked horizontal bars of PASS / FAIL / N/A counts per claim."""
    claims = list(table)
    colors = {"PASS": "#4c9a2a", "FAIL": "#c0392b", "N/A": "#b0b0b0"}
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 0.3 * len(claims) + 1))
        left = np.zeros(len(claims))
        for verdict, color in colors.items():
            vals = np.array([table[c].get(verdict, 0) for c in claims])
            ax.barh(claims, vals, left=left, color=color, label=verdict)
            left += vals
        ax.invert_yaxis()
        ax.set_xlabel("matrices")
        ax.legend(loc="lower right", frameon=False)
        if title:
            ax.set_title(title)
        fig.savefig(path)
        plt.close(fig)
