"""SVG pictures of an arrangement with its nested depth regions.

Floats appear only here, for layout; everything drawn comes from the
exact report.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .exact import convex_hull_2d  # noqa: E402

__all__ = ["plot_regions"]

_RC = {
    "svg.hashsalt": "combidepth",
    "svg.fonttype": "none",
    "font.size": 8,
    "axes.linewidth": 0.6,
}


def _level_polygons(report) -> list:
    feats = report.arrangement.features
    out = []
    for a in report.depth_values:
        verts = [f.sample for f, v in zip(feats, report.values) if v >= a and f.dim == 0]
        if verts:
            out.append((a, convex_hull_2d(verts)))
    return out


def plot_regions(report, S, path, title: str = "") -> None:
    """Arrangement lines, data points and shaded regions D(alpha) for every
    achieved alpha, darker for deeper."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        A = report.arrangement
        if S.dim == 1:
            _plot_1d(ax, report, S)
        else:
            xmin, ymin, xmax, ymax = (float(v) for v in A.bbox)
            for a, b, c in A.lines:
                if b != 0:
                    xs = [xmin, xmax]
                    ys = [(c - a * x) / b for x in xs]
                else:
                    xs = [c / a, c / a]
                    ys = [ymin, ymax]
                ax.plot(xs, ys, color="0.8", lw=0.5, zorder=1)
            levels = _level_polygons(report)
            top = max(len(levels), 1)
            for k, (a, poly) in enumerate(levels):
                shade = 0.15 + 0.7 * (k + 1) / top
                pts = [(float(x), float(y)) for x, y in poly]
                if len(pts) >= 3:
                    ax.add_patch(Polygon(pts, closed=True, fc=(0.2, 0.35, 0.7, shade * 0.5),
                                         ec=(0.1, 0.2, 0.5), lw=0.6, zorder=2))
                elif len(pts) == 2:
                    ax.plot(*zip(*pts), color=(0.1, 0.2, 0.5), lw=1.5, zorder=3)
                else:
                    ax.plot(*pts[0], "s", color=(0.1, 0.2, 0.5), ms=4, zorder=3)
            px = [float(p[0]) for p in S.points]
            py = [float(p[1]) for p in S.points]
            cols = ["tab:red" if c == "R" else "tab:blue" for c in S.colors] if S.colors else "k"
            ax.scatter(px, py, s=12, c=cols, zorder=4)
            span_x = max(px) - min(px) or 1.0
            span_y = max(py) - min(py) or 1.0
            ax.set_xlim(min(px) - 0.3 * span_x, max(px) + 0.3 * span_x)
            ax.set_ylim(min(py) - 0.3 * span_y, max(py) + 0.3 * span_y)
        ax.set_title(title or f"{report.measure} regions, median depth {report.median_value}")
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def _plot_1d(ax, report, S):
    feats = report.arrangement.features
    for f, v in zip(feats, report.values):
        if v <= 0:
            continue
        if f.dim == 0:
            ax.plot([float(f.sample[0])], [float(v)], "o", color="tab:blue", ms=3)
        else:
            a, b = f.ends
            ax.plot([float(a[0]), float(b[0])], [float(v), float(v)], color="tab:blue", lw=1.5)
    ax.scatter([float(p[0]) for p in S.points], [0.0] * len(S), s=12, c="k")
    ax.set_ylabel("depth")
