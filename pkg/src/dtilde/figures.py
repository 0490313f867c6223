"""SVG drawings of the disk, a triangulation and query curves.

Curves are drawn as polylines through their crossings with the reference
triangulation, whose edges are straight chords between the vertex
positions of ``vertex_xy``.  Notched ends get a bowtie glyph.
"""

from __future__ import annotations

import io
import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, Polygon  # noqa: E402

from .surface_core import Curve, Triangulation, reference, vertex_xy  # noqa: E402

RED = "#c0392b"
BLUE = "#1f4e9c"
GRAY = "#b0b0b0"


def _reference_segments(n: int) -> dict[int, tuple[int, int]]:
    r = reference(n)
    m = r.m
    segs = {1: (r.p1, 0), 2: (r.p1, 1), n: (r.p2, 0), n + 1: (r.p2, m - 1)}
    for k in range(1, m):
        segs[k + 2] = (0, k)
    return segs


def _curve_points(curves: list[Curve], n: int) -> list[list[tuple[float, float]]]:
    segs = _reference_segments(n)
    load = defaultdict(int)
    for c in curves:
        for e, _ in c.path.crossings:
            load[e] += 1
    used = defaultdict(int)
    out = []
    for c in curves:
        pts = [vertex_xy(n, c.start)]
        for e, _ in c.path.crossings:
            used[e] += 1
            u = used[e] / (load[e] + 1)
            (x0, y0), (x1, y1) = (vertex_xy(n, v) for v in segs[e])
            pts.append((x0 + u * (x1 - x0), y0 + u * (y1 - y0)))
        pts.append(vertex_xy(n, c.end))
        out.append(pts)
    return out


def _bowtie(ax, tip, toward, color, size=0.045):
    dx, dy = toward[0] - tip[0], toward[1] - tip[1]
    d = math.hypot(dx, dy) or 1.0
    ux, uy = dx / d, dy / d
    cx, cy = tip[0] + 2.2 * size * ux, tip[1] + 2.2 * size * uy
    px, py = -uy * size, ux * size
    a = (cx - size * ux, cy - size * uy)
    b = (cx + size * ux, cy + size * uy)
    ax.add_patch(Polygon([(cx, cy), (a[0] + px, a[1] + py), (a[0] - px, a[1] - py)], color=color, zorder=5))
    ax.add_patch(Polygon([(cx, cy), (b[0] + px, b[1] + py), (b[0] - px, b[1] - py)], color=color, zorder=5))


def _draw(ax, curves, pts, color, width):
    for c, p in zip(curves, pts):
        xs, ys = zip(*p)
        ax.plot(xs, ys, color=color, lw=width, zorder=3)
        for side, (tip, toward) in ((0, (p[0], p[1])), (1, (p[-1], p[-2]))):
            if c.tags[side] == 1:
                _bowtie(ax, tip, toward, color)


def figure(t: Triangulation | None, curves: list[Curve], n: int | None = None):
    """Matplotlib figure of the disk, t in red (if given) and curves in blue."""
    n = t.n if t is not None else n
    r = reference(n)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.set_aspect("equal")
    ax.axis("off")
    ax.add_patch(Circle((0, 0), 1.0, fill=False, color="black", lw=1.2))
    for a, b in _reference_segments(n).values():
        (x0, y0), (x1, y1) = vertex_xy(n, a), vertex_xy(n, b)
        ax.plot([x0, x1], [y0, y1], color=GRAY, lw=0.6, ls="--", zorder=1)
    red = list(t.edges) if t is not None else []
    everything = red + list(curves)
    pts = _curve_points(everything, n)
    _draw(ax, red, pts[: len(red)], RED, 1.4)
    _draw(ax, curves, pts[len(red) :], BLUE, 1.6)
    for v in range(r.m):
        x, y = vertex_xy(n, v)
        ax.plot([x], [y], "o", color="black", ms=4, zorder=6)
        ax.annotate(str(v), (1.1 * x, 1.1 * y), ha="center", va="center", fontsize=8)
    for v, name in ((r.p1, "P1"), (r.p2, "P2")):
        x, y = vertex_xy(n, v)
        ax.plot([x], [y], "o", color="white", mec="black", ms=6, zorder=6)
        ax.annotate(name, (0.85 * x, 0.85 * y), ha="center", va="center", fontsize=8)
    ax.set_xlim(-1.2, 1.2)
    ax.set_ylim(-1.2, 1.2)
    return fig


def render_svg(t: Triangulation | None, curves: list[Curve], n: int | None = None) -> str:
    fig = figure(t, curves, n)
    buf = io.StringIO()
    fig.savefig(buf, format="svg", bbox_inches="tight")
    plt.close(fig)
    return buf.getvalue()
