"""Strand tracing, loop metrics, extremal profiles and translation-canonical keys."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .core import HORIZONTAL, VERTICAL, PatternWindow, Point, Stitch
from .errors import IntegrityError


@dataclass(frozen=True)
class Strand:
    """A connected component of a pattern window, in traversal order."""

    stitches: tuple[Stitch, ...]
    closed: bool
    touches_boundary: bool
    cyclic: bool = False  # the stitches form a cycle, even if near the window edge

    def __len__(self):
        return len(self.stitches)

    def vertices(self) -> list[Point]:
        """Visited points; for a closed strand the start is not repeated."""
        st = self.stitches
        if len(st) == 1:
            return list(st[0].endpoints)
        first, second = st[0], st[1]
        shared = set(first.endpoints) & set(second.endpoints)
        if len(st) == 2 and len(shared) == 2:
            # two stitches sharing both endpoints cannot occur on the square grid
            raise IntegrityError("degenerate two-stitch strand")
        (p,) = shared
        cur = first.other(p)
        pts = [cur]
        for s in st:
            cur = s.other(cur)
            pts.append(cur)
        if self.closed or self.cyclic or pts[0] == pts[-1]:
            pts.pop()
        return pts


@dataclass(frozen=True)
class Loop:
    """A closed lattice curve given by its cyclic vertex list."""

    vertices: tuple[Point, ...]

    def __len__(self):
        return len(self.vertices)

    def stitches(self) -> list[Stitch]:
        vs = self.vertices
        return [Stitch.between(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def translated(self, dx: int, dy: int) -> "Loop":
        return Loop(tuple((x + dx, y + dy) for x, y in self.vertices))

    def reversed(self) -> "Loop":
        return Loop(tuple(reversed(self.vertices)))

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_strand(cls, strand: Strand) -> "Loop":
        if not strand.closed:
            raise IntegrityError("only closed strands are loops")
        return cls(tuple(strand.vertices()))


@dataclass(frozen=True)
class LoopMetrics:
    width: int
    height: int
    length: int
    area: Fraction

    def to_json(self) -> dict:
        return {"width": self.width, "height": self.height, "length": self.length,
                "area": fraction_json(self.area)}


def fraction_json(v: Fraction):
    return int(v) if v.denominator == 1 else str(v)


@dataclass(frozen=True)
class ExtremalProfile:
    extremal_latitudes: frozenset
    extremal_longitudes: frozenset
    west: tuple[Stitch, ...]
    east: tuple[Stitch, ...]
    south: tuple[Stitch, ...]
    north: tuple[Stitch, ...]


@dataclass(frozen=True, order=True)
class CanonicalLoop:
    """Loop key: min corner at the origin, counterclockwise, least vertex first."""

    vertices: tuple[Point, ...]

    def as_loop(self) -> Loop:
        return Loop(self.vertices)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


def _boundary_band(pattern: PatternWindow):
    w = pattern.window
    L = pattern.labeling
    a, c = L.a, L.c

    def near(p: Point) -> bool:
        x, y = p
        return x - w.x0 < a or w.x1 - x < a or y - w.y0 < c or w.y1 - y < c

    return near


def trace_strands(pattern: PatternWindow) -> list[Strand]:
    """Split the window's stitches into maximal strands.

    A strand is flagged ``touches_boundary`` when one of its points lies close
    enough to the window edge that a truncated stitch could have been attached
    there; such strands are never reported as closed.
    """
    incident: dict[Point, list[Stitch]] = defaultdict(list)
    for s in pattern.stitches:
        for p in s.endpoints:
            incident[p].append(s)
    for p, lst in incident.items():
        if len(lst) > 2:
            raise IntegrityError(f"point {p} has {len(lst)} incident stitches")
    near = _boundary_band(pattern)

    def step(s: Stitch, p: Point):
        """From stitch ``s`` leaving through ``p``, the next stitch (or None)."""
        for t in incident[p]:
            if t != s:
                return t
        return None

    seen: set[Stitch] = set()
    strands = []
    for s0 in pattern.stitches:
        if s0 in seen:
            continue
        forward = [s0]
        cur, p = s0, s0.end
        cycle = False
        while True:
            nxt = step(cur, p)
            if nxt is None:
                break
            if nxt == s0:
                cycle = True
                break
            forward.append(nxt)
            p = nxt.other(p)
            cur = nxt
        if cycle:
            chain = forward
        else:
            backward = []
            cur, p = s0, s0.start
            while True:
                nxt = step(cur, p)
                if nxt is None:
                    break
                backward.append(nxt)
                p = nxt.other(p)
                cur = nxt
            chain = backward[::-1] + forward
        seen.update(chain)
        pts = {q for t in chain for q in t.endpoints}
        touches = any(near(q) for q in pts)
        strands.append(Strand(tuple(chain), cycle and not touches, touches, cycle))
    return strands


def loops_in(pattern: PatternWindow) -> list[Loop]:
    return [Loop.from_strand(s) for s in trace_strands(pattern) if s.closed]


def _check_simple(loop: Loop) -> None:
    vs = loop.vertices
    if len(vs) < 4 or len(vs) % 2:
        raise IntegrityError(f"loop has {len(vs)} vertices; need an even number >= 4")
    if len(set(vs)) != len(vs):
        raise IntegrityError("loop revisits a vertex")
    try:
        st = loop.stitches()
    except Exception as exc:
        raise IntegrityError(f"loop edge is not axis-parallel: {exc}") from exc
    for k in range(len(st)):
        if st[k].orientation == st[k - 1].orientation:
            raise IntegrityError("loop edges do not alternate horizontal/vertical")


def signed_area(vertices) -> Fraction:
    n = len(vertices)
    s = 0
    for k in range(n):
        x1, y1 = vertices[k]
        x2, y2 = vertices[(k + 1) % n]
        s += x1 * y2 - x2 * y1
    return Fraction(s, 2)


def loop_metrics(loop: Loop) -> LoopMetrics:
    _check_simple(loop)
    st = loop.stitches()
    lons = [s.longitude for s in st]
    lats = [s.latitude for s in st]
    width = max(lons) - min(lons)
    height = max(lats) - min(lats)
    if width.denominator != 1 or height.denominator != 1:
        raise IntegrityError("loop width/height is not integral")
    return LoopMetrics(int(width), int(height), len(st), abs(signed_area(loop.vertices)))


def extremal_profile(loop: Loop) -> ExtremalProfile:
    """West/east and south/north extremal stitches of a loop.

    Raises :class:`IntegrityError` when the west-extremal and east-extremal
    latitudes disagree or an extremal latitude carries more than two vertical
    stitches (and likewise for longitudes); on a genuine loop this never
    happens.
    """
    _check_simple(loop)
    st = loop.stitches()
    lon_min = min(s.longitude for s in st)
    lon_max = max(s.longitude for s in st)
    lat_min = min(s.latitude for s in st)
    lat_max = max(s.latitude for s in st)
    vert = [s for s in st if s.orientation == VERTICAL]
    hor = [s for s in st if s.orientation == HORIZONTAL]
    west = tuple(sorted(s for s in vert if s.longitude == lon_min))
    east = tuple(sorted(s for s in vert if s.longitude == lon_max))
    south = tuple(sorted(s for s in hor if s.latitude == lat_min))
    north = tuple(sorted(s for s in hor if s.latitude == lat_max))
    if not (west and east and south and north):
        raise IntegrityError("extremal stitches missing on some side")
    west_lats = {s.latitude for s in west}
    east_lats = {s.latitude for s in east}
    if west_lats != east_lats:
        raise IntegrityError(f"west-extremal latitudes {sorted(west_lats)} != "
                             f"east-extremal latitudes {sorted(east_lats)}")
    south_lons = {s.longitude for s in south}
    north_lons = {s.longitude for s in north}
    if south_lons != north_lons:
        raise IntegrityError(f"south-extremal longitudes {sorted(south_lons)} != "
                             f"north-extremal longitudes {sorted(north_lons)}")
    for y in west_lats:
        n = sum(1 for s in vert if s.latitude == y)
        if n != 2:
            raise IntegrityError(f"extremal latitude {y} carries {n} vertical stitches")
    for x in south_lons:
        n = sum(1 for s in hor if s.longitude == x)
        if n != 2:
            raise IntegrityError(f"extremal longitude {x} carries {n} horizontal stitches")
    return ExtremalProfile(frozenset(west_lats), frozenset(south_lons),
                           west, east, south, north)


def canonicalize(loop: Loop) -> CanonicalLoop:
    vs = loop.vertices
    mx = min(x for x, _ in vs)
    my = min(y for _, y in vs)
    pts = [(x - mx, y - my) for x, y in vs]
    if signed_area(pts) < 0:
        pts.reverse()
    k = pts.index(min(pts))
    return CanonicalLoop(tuple(pts[k:] + pts[:k]))


def loop_from_json(obj) -> Loop:
    return Loop(tuple((int(x), int(y)) for x, y in obj["vertices"]))
