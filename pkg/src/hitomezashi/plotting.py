"""Matplotlib summary figure for an extremal report (deterministic SVG)."""

from __future__ import annotations

import io
from collections import Counter

from .extremal import EnumerationResult, classify_loop


def extremal_figure_svg(result: EnumerationResult) -> str:
    """Length against area for every loop of the census, marker size by multiplicity."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    w, h = result.w, result.h
    points = Counter()
    tags = {}
    for c in result.loops:
        m = result.metrics[c]
        key = (m.length, float(m.area))
        points[key] += 1
        tags.setdefault(key, set()).add(classify_loop(c).tag)
    with matplotlib.rc_context({"svg.hashsalt": "hitomezashi", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(5, 4))
        for key in sorted(points):
            rug = "Rug" in tags[key]
            ax.scatter([key[0]], [key[1]], s=12 + 6 * points[key],
                       color="#c23b3b" if rug else "#1f5fbf")
        ax.axvline(4 * max(w, h), color="#888888", linewidth=0.8, linestyle="--")
        ax.axhline((w - 1) * (h - 1) + 1, color="#888888", linewidth=0.8, linestyle="--")
        if w >= 3 and h >= 3:
            ax.axhline(2 * (w + h) - 7, color="#888888", linewidth=0.8, linestyle=":")
        ax.set_xlabel("length")
        ax.set_ylabel("area")
        ax.set_title(f"{result.count} loops of size {w} x {h}")
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()
