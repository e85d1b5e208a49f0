"""Matplotlib figure for the parameter sweep table."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def sweep_figure(rows, path) -> None:
    """Genus of the grid surfaces as a heat map, with arithmetic and excluded pairs marked."""
    grid = [r for r in rows if r["model"] == "grid"]
    if not grid:
        raise ValueError("no grid rows to plot")
    max_m = max(r["m"] for r in grid)
    max_n = max(r["n"] for r in grid)
    genus = np.full((max_n + 1, max_m + 1), np.nan)
    for r in grid:
        genus[r["n"], r["m"]] = r["genus"]

    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    im = ax.imshow(genus, origin="lower", cmap="viridis")
    fig.colorbar(im, ax=ax, label="genus")
    arith = [(r["m"], r["n"]) for r in grid if r["arithmetic"]]
    excl = [(r["m"], r["n"]) for r in grid if r["excluded"]]
    if arith:
        ax.scatter(*zip(*arith), marker="s", facecolors="none", edgecolors="white", s=120,
                   label="arithmetic")
    if excl:
        ax.scatter(*zip(*excl), marker="x", color="red", s=40, label="excluded triangle group")
    ax.set_xlim(1.5, max_m + 0.5)
    ax.set_ylim(1.5, max_n + 0.5)
    ax.set_xlabel("m")
    ax.set_ylabel("n")
    if arith or excl:
        ax.legend(loc="upper left", fontsize=7, framealpha=0.6)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
