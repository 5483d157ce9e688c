"""Deterministic SVG stitch charts.

Every stitch becomes one ``<line class="stitch">`` element. The y axis is
flipped so that north is up. Triangular patterns are stored in sheared
coordinates and drawn in equilateral geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence
from xml.sax.saxutils import quoteattr

from .core import PatternWindow, Stitch, Window
from .errors import DomainError
from .loops import CanonicalLoop, Loop
from .longstitch import (ACCORDION_H, ACCORDION_V, OTHER, RECTANGLE, STRAND_CLASSES,
                         ZIGZAG_NEG, ZIGZAG_POS, strand_classes)
from .multigrid import (TRIANGULAR, PhiComponent, PhiPattern, TriStitchPattern, to_true)

DEFAULT_PALETTE = (
    (RECTANGLE, "#1f5fbf"),
    (ZIGZAG_POS, "#d2691e"),
    (ZIGZAG_NEG, "#c23b3b"),
    (ACCORDION_H, "#2e9e44"),
    (ACCORDION_V, "#8c4fbf"),
    (OTHER, "#555555"),
)


@dataclass(frozen=True)
class RenderStyle:
    unit: float = 20.0
    stroke: float = 2.0
    grid: bool = False
    grid_stroke: float = 0.5
    margin: float = 10.0
    color: str = "#222222"
    grid_color: str = "#cccccc"
    palette: tuple[tuple[str, str], ...] = field(default=DEFAULT_PALETTE)

    def __post_init__(self):
        if self.unit <= 0 or self.stroke <= 0 or self.margin < 0:
            raise DomainError("unit and stroke must be positive and margin non-negative")
        missing = set(STRAND_CLASSES) - {k for k, _ in self.palette}
        if missing:
            raise DomainError(f"palette lacks colors for {sorted(missing)}")

    def color_of(self, cls: str | None) -> str:
        if cls is None:
            return self.color
        return dict(self.palette)[cls]


def parse_palette(text: str, base: Sequence[tuple[str, str]] = DEFAULT_PALETTE) -> tuple[tuple[str, str], ...]:
    """``Rectangle=#00f,AccordionH=#0a0`` overrides entries of ``base``."""
    pal = dict(base)
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, color = part.partition("=")
        if not sep or name not in pal or not color:
            raise DomainError(f"palette entries look like Class=#rrggbb with Class in {list(pal)}")
        pal[name] = color
    return tuple((k, pal[k]) for k, _ in base)


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


Seg = tuple[tuple[float, float], tuple[float, float]]


def _segments(obj, classes: Mapping | None) -> tuple[list[tuple[Seg, str | None]], list[Seg] | None]:
    """Drawable segments with optional classes, plus grid segments in the same geometry."""
    if isinstance(obj, PatternWindow):
        tags: dict[Stitch, str | None] = {}
        if classes is not None:
            tags = dict(classes)
        segs = [((s.start, s.end), tags.get(s)) for s in obj.stitches]
        w = obj.window
        grid = None if w.is_empty else _square_grid(w)
        return segs, grid
    if isinstance(obj, (Loop, CanonicalLoop)):
        vs = obj.vertices
        segs = [((vs[k], vs[(k + 1) % len(vs)]), None) for k in range(len(vs))]
        if not vs:
            return [], None
        xs, ys = [p[0] for p in vs], [p[1] for p in vs]
        return segs, _square_grid(Window(min(xs), max(xs), min(ys), max(ys)))
    if isinstance(obj, TriStitchPattern):
        return _tri(obj.stitches(), obj.window)
    if isinstance(obj, PhiPattern):
        if obj.dirs.dirs == TRIANGULAR:
            return _tri(obj.segments, obj.window)
        return [(s, None) for s in obj.segments], _square_grid(obj.window)
    if isinstance(obj, PhiComponent):
        raise DomainError("render a component through render_component, which needs its direction set")
    raise DomainError(f"cannot render {type(obj).__name__}")


def _square_grid(w: Window) -> list[Seg]:
    out = [((x, w.y0), (x, w.y1)) for x in range(w.x0, w.x1 + 1)]
    out += [((w.x0, y), (w.x1, y)) for y in range(w.y0, w.y1 + 1)]
    return out


def _tri(segments: Iterable, w: Window):
    segs = [((to_true(a), to_true(b)), None) for a, b in segments]
    grid = []
    for y in range(w.y0, w.y1 + 1):
        grid.append((to_true((w.x0, y)), to_true((w.x1, y))))
    for x in range(w.x0, w.x1 + 1):
        grid.append((to_true((x, w.y0)), to_true((x, w.y1))))
    return segs, grid


def _document(segs: list[tuple[Seg, str | None]], grid: list[Seg] | None, style: RenderStyle) -> str:
    pts = [p for (a, b), _ in segs for p in (a, b)]
    if style.grid and grid:
        pts += [p for a, b in grid for p in (a, b)]
    if pts:
        x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
        y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    else:
        x0 = x1 = y0 = y1 = 0.0
    u, m = style.unit, style.margin

    def X(x):
        return _num((x - x0) * u + m)

    def Y(y):
        return _num((y1 - y) * u + m)

    width, height = _num((x1 - x0) * u + 2 * m), _num((y1 - y0) * u + 2 * m)
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             f'<g stroke-linecap="round" stroke-width="{_num(style.stroke)}">']
    if style.grid and grid:
        lines.append(f'<g class="grid" stroke={quoteattr(style.grid_color)} '
                     f'stroke-width="{_num(style.grid_stroke)}">')
        for (ax, ay), (bx, by) in grid:
            lines.append(f'<line class="grid" x1="{X(ax)}" y1="{Y(ay)}" x2="{X(bx)}" y2="{Y(by)}"/>')
        lines.append("</g>")
    for ((ax, ay), (bx, by)), cls in segs:
        tag = f' data-class="{cls}"' if cls else ""
        lines.append(f'<line class="stitch"{tag} x1="{X(ax)}" y1="{Y(ay)}" x2="{X(bx)}" '
                     f'y2="{Y(by)}" stroke={quoteattr(style.color_of(cls))}/>')
    lines += ["</g>", "</svg>", ""]
    return "\n".join(lines)


def render_svg(obj, style: RenderStyle | None = None, classes: Mapping | None = None) -> str:
    """SVG text for a pattern window, loop, type-Phi pattern or triangular pattern.

    ``classes`` maps stitches of a pattern window to strand classes; pass
    ``True`` via :func:`render_classified` to compute them.
    """
    style = style or RenderStyle()
    segs, grid = _segments(obj, classes)
    segs.sort(key=lambda t: (t[0], t[1] or ""))
    return _document(segs, grid, style)


def render_classified(pattern: PatternWindow, params=None, style: RenderStyle | None = None) -> str:
    """Pattern window colored by strand class; strands too short to classify stay neutral."""
    tags = {}
    for strand, cls in strand_classes(pattern, params):
        for s in strand.stitches:
            tags[s] = cls
    return render_svg(pattern, style, tags)


def render_component(component: PhiComponent, dirs, style: RenderStyle | None = None) -> str:
    style = style or RenderStyle()
    tri = tuple(getattr(dirs, "dirs", dirs)) == TRIANGULAR
    conv = to_true if tri else (lambda p: p)
    segs = sorted(((conv(a), conv(b)), None) for a, b in component.edges)
    return _document(segs, None, style)
