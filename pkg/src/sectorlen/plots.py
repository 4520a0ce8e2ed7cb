"""Figure rendering for scan output: sector scatter plots with the
polytope facets drawn on top. Uses the Agg backend; writes files only.
"""
from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .polytopes import Polytope  # noqa: E402

_PROJECTIONS_3 = ((0, 1), (0, 2), (1, 2))


def _facet_segments_2d(poly: Polytope) -> list[tuple[str, np.ndarray]]:
    """Each facet drawn as the segment between the two vertices lying on it."""
    segs = []
    verts = [tuple(float(x) for x in v) for v in poly.vertices]
    for f in poly.facets:
        on = [v for v in verts if abs(f.slack(v)) < 1e-9]
        if len(on) >= 2:
            segs.append((f.name, np.array(on[:2])))
    return segs


def plot_scan(points: np.ndarray, poly: Polytope, path: str) -> str:
    """Scatter the sampled body coordinates with facet outlines; returns path."""
    pts = np.asarray(points, dtype=float)
    if poly.n == 2:
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.scatter(pts[:, 0], pts[:, 1], s=2, alpha=0.25, linewidths=0)
        for name, seg in _facet_segments_2d(poly):
            ax.plot(seg[:, 0], seg[:, 1], lw=1.2, label=name)
        ax.set_xlabel("$A_1$")
        ax.set_ylabel("$A_2$")
        ax.legend(fontsize=7, loc="upper right")
        fig.tight_layout()
    else:
        fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))
        verts = np.array([[float(x) for x in v] for v in poly.vertices])
        for ax, (i, j) in zip(axes, _PROJECTIONS_3):
            ax.scatter(pts[:, i], pts[:, j], s=2, alpha=0.2, linewidths=0)
            ax.scatter(verts[:, i], verts[:, j], marker="x", color="k", s=30)
            ax.set_xlabel(f"$A_{i + 1}$")
            ax.set_ylabel(f"$A_{j + 1}$")
        fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
