"""Static figures: the nerve triangle boundary with a sampled loop."""

from __future__ import annotations

import math

TAU = math.tau

# Triangle corners for drawing; v1 on top, counterclockwise.
_CORNERS = [
    (math.cos(math.pi / 2 - k * TAU / 3), math.sin(math.pi / 2 - k * TAU / 3))
    for k in range(3)
]


def render_trajectory_figure(traj, path, title=None):
    """Draw the triangle boundary and the loop colored by phi, then save.

    The output format follows the file suffix (svg, png, pdf, ...).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.collections import LineCollection
    import numpy as np

    xy = np.array(
        [
            [
                sum(b * c[0] for b, c in zip(s.nerve.bary, _CORNERS)),
                sum(b * c[1] for b, c in zip(s.nerve.bary, _CORNERS)),
            ]
            for s in traj.samples
        ]
    )
    phis = np.array([s.phi for s in traj.samples])

    fig, ax = plt.subplots(figsize=(6.0, 5.4))
    tri_x = [c[0] for c in _CORNERS] + [_CORNERS[0][0]]
    tri_y = [c[1] for c in _CORNERS] + [_CORNERS[0][1]]
    ax.plot(tri_x, tri_y, color="0.75", lw=4.0, solid_capstyle="round", zorder=1)
    for label, (x, y) in zip(("v1", "v2", "v3"), _CORNERS):
        ax.annotate(
            label,
            (x, y),
            xytext=(1.14 * x, 1.14 * y),
            ha="center",
            va="center",
            fontsize=11,
        )

    pts = xy.reshape(-1, 1, 2)
    segs = np.concatenate([pts[:-1], pts[1:]], axis=1)
    lc = LineCollection(segs, cmap="viridis", zorder=2, lw=2.0)
    lc.set_array(0.5 * (phis[:-1] + phis[1:]))
    ax.add_collection(lc)
    cbar = fig.colorbar(lc, ax=ax, shrink=0.85)
    cbar.set_label("phi (rad)")

    ax.set_aspect("equal")
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.25, 1.35)
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
