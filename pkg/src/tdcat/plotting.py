"""Hasse diagrams rendered to image files with matplotlib (Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def layered_layout(n: int, covers) -> list[tuple[float, float]]:
    """Height = length of the longest chain below; rows centred."""
    below: list[list[int]] = [[] for _ in range(n)]
    for a, b in covers:
        below[b].append(a)
    height = [None] * n

    def h(x):
        if height[x] is None:
            height[x] = 1 + max((h(y) for y in below[x]), default=-1)
        return height[x]

    for x in range(n):
        h(x)
    rows: dict[int, list[int]] = {}
    for x in range(n):
        rows.setdefault(height[x], []).append(x)
    pos = [(0.0, 0.0)] * n
    for y, members in rows.items():
        k = len(members)
        for i, x in enumerate(members):
            pos[x] = (i - (k - 1) / 2, float(y))
    return pos


def hasse_figure(labels, covers, path, title: str = "", highlight=()) -> str:
    """Draw the Hasse diagram given by ``covers`` (pairs ``(lower, upper)``)."""
    n = len(labels)
    pos = layered_layout(n, covers)
    width = max([abs(x) for x, _ in pos] + [1.0])
    height = max([y for _, y in pos] + [1.0])
    fig, ax = plt.subplots(figsize=(2 + 1.4 * width, 1.5 + 1.1 * height))
    for a, b in covers:
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.4", linewidth=1, zorder=1)
    marked = set(highlight)
    for i, lab in enumerate(labels):
        ax.annotate(str(lab), pos[i], ha="center", va="center", fontsize=9, zorder=2,
                    bbox=dict(boxstyle="round,pad=0.3", fc="#ffd27f" if i in marked else "white", ec="0.3"))
    ax.set_xlim(-width - 0.8, width + 0.8)
    ax.set_ylim(-0.7, height + 0.7)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)
