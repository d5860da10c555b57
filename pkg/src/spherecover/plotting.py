"""Figure rendering for the report path.

Every function writes a PNG to the given path and returns the path. The Agg
backend is forced so rendering works in headless runs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .covers import Cover, Samples, _membership_matrix


def save_q_table_figure(entries: list[dict], path) -> Path:
    """Step plot of minimal multiplicity and minimal cover size against h."""
    path = Path(path)
    hs = [e["h"] for e in entries]
    qs = [e["q"] for e in entries]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(hs, qs, where="mid", marker="o", label="minimal multiplicity q(h)")
    mv_h = [e["h"] for e in entries if e["min_vertices"] is not None]
    mv = [e["min_vertices"] for e in entries if e["min_vertices"] is not None]
    if mv:
        ax.step(mv_h, mv, where="mid", marker="s", label="minimal cover size")
    ax.set_xlabel("sphere dimension h")
    ax.set_ylabel("count")
    ax.set_xticks(hs)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_multiplicity_figure(counts: list[tuple[int, int]], path, title: str) -> Path:
    """Histogram of how many sample points met each multiplicity."""
    path = Path(path)
    values = [c[0] for c in counts]
    freqs = [c[1] for c in counts]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(values, freqs, color="tab:blue", edgecolor="black", linewidth=0.5)
    ax.set_yscale("log")
    ax.set_xlabel("multiplicity")
    ax.set_ylabel("sample points")
    ax.set_xticks(values)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_homology_figure(product_ev: dict, orbit_ev: dict, path, title: str) -> Path:
    """Grouped bars of cell counts and mod-2 Betti numbers per dimension."""
    path = Path(path)
    fig, axes = plt.subplots(1, 2, figsize=(9, 4), sharey=False)
    for ax, ev, name in zip(axes, (product_ev, orbit_ev), ("deleted square", "orbit")):
        counts = ev["cells_per_dim"]
        betti = ev["betti"] or [0] * len(counts)
        dims = np.arange(len(counts))
        ax.bar(dims - 0.2, counts, width=0.4, label="cells", color="tab:gray")
        ax.bar(dims + 0.2, betti, width=0.4, label="mod-2 Betti", color="tab:red")
        ax.set_yscale("symlog")
        ax.set_xlabel("dimension")
        ax.set_xticks(dims)
        ax.set_title(name)
        ax.legend()
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_s2_multiplicity_map(cover: Cover, samples: Samples, path, title: str,
                             max_points: int = 20000) -> Path:
    """Longitude/latitude scatter of a 2-sphere cover colored by multiplicity."""
    if cover.sphere_dim != 2:
        raise ValueError("multiplicity map is drawn for 2-sphere covers only")
    path = Path(path)
    flat = samples.flat()
    if len(flat) > max_points:
        flat = flat[:max_points]
    mult = _membership_matrix(cover, flat).sum(axis=1)
    lon = np.arctan2(flat[:, 1], flat[:, 0])
    lat = np.arcsin(np.clip(flat[:, 2], -1.0, 1.0))
    fig, ax = plt.subplots(figsize=(7, 4))
    sc = ax.scatter(lon, lat, c=mult, s=2, cmap="viridis",
                    vmin=0, vmax=int(mult.max()))
    fig.colorbar(sc, ax=ax, label="multiplicity")
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
