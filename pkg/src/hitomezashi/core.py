"""Lattice primitives, grid labelings and per-line stitch generation.

A square-grid pattern is fully described by two families of residues: one
label per horizontal grid line (``eps``, modulo ``a + b``) and one per vertical
grid line (``eta``, modulo ``c + d``). Everything here is windowed: a labeling
carries a closed integer rectangle and stitches are kept only when both
endpoints lie inside it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .errors import DomainError, PreconditionError

Point = tuple[int, int]

HORIZONTAL = "H"
VERTICAL = "V"

LabelSource = Union[None, int, Mapping[int, int], Callable[[int], int], Iterable[int]]


@dataclass(frozen=True, order=True)
class Stitch:
    """An axis-parallel stitch, anchored at its west (or south) endpoint."""

    orientation: str
    x: int
    y: int
    span: int = 1

    def __post_init__(self):
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise DomainError(f"orientation must be 'H' or 'V', got {self.orientation!r}")
        if self.span < 1:
            raise DomainError(f"stitch span must be >= 1, got {self.span}")

    @property
    def start(self) -> Point:
        return (self.x, self.y)

    @property
    def end(self) -> Point:
        if self.orientation == HORIZONTAL:
            return (self.x + self.span, self.y)
        return (self.x, self.y + self.span)

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return (self.start, self.end)

    @property
    def longitude(self) -> Fraction:
        if self.orientation == HORIZONTAL:
            return Fraction(2 * self.x + self.span, 2)
        return Fraction(self.x)

    @property
    def latitude(self) -> Fraction:
        if self.orientation == VERTICAL:
            return Fraction(2 * self.y + self.span, 2)
        return Fraction(self.y)

    def other(self, p: Point) -> Point:
        s, e = self.endpoints
        if p == s:
            return e
        if p == e:
            return s
        raise DomainError(f"{p} is not an endpoint of {self}")

    def translated(self, dx: int, dy: int) -> "Stitch":
        return Stitch(self.orientation, self.x + dx, self.y + dy, self.span)

    def to_json(self) -> list[list[int]]:
        s, e = self.endpoints
        return [list(s), list(e)]

    @classmethod
    def between(cls, p: Point, q: Point) -> "Stitch":
        """Build the stitch with endpoints ``p`` and ``q`` (in either order)."""
        (x1, y1), (x2, y2) = sorted((p, q))
        if y1 == y2 and x1 != x2:
            return cls(HORIZONTAL, x1, y1, x2 - x1)
        if x1 == x2 and y1 != y2:
            return cls(VERTICAL, x1, y1, y2 - y1)
        raise DomainError(f"{p} and {q} do not span an axis-parallel stitch")


@dataclass(frozen=True)
class Window:
    """Closed integer rectangle ``[x0, x1] x [y0, y1]`` (empty if inverted)."""

    x0: int
    x1: int
    y0: int
    y1: int

    @property
    def is_empty(self) -> bool:
        return self.x1 < self.x0 or self.y1 < self.y0

    def contains(self, p: Point) -> bool:
        return self.x0 <= p[0] <= self.x1 and self.y0 <= p[1] <= self.y1

    def shrink(self, m: int) -> "Window":
        return Window(self.x0 + m, self.x1 - m, self.y0 + m, self.y1 - m)

    def points(self):
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                yield (x, y)

    def transposed(self) -> "Window":
        return Window(self.y0, self.y1, self.x0, self.x1)

    def as_list(self) -> list[int]:
        return [self.x0, self.x1, self.y0, self.y1]

    @classmethod
    def square(cls, lo: int, hi: int) -> "Window":
        return cls(lo, hi, lo, hi)


def _materialize(src: LabelSource, lo: int, hi: int, modulus: int, name: str) -> tuple[int, ...]:
    if hi < lo:
        return ()
    n = hi - lo + 1
    if src is None:
        vals = [0] * n
    elif isinstance(src, int):
        vals = [src] * n
    elif isinstance(src, Mapping):
        missing = [k for k in range(lo, hi + 1) if k not in src]
        if missing:
            raise DomainError(f"{name} labels missing for lines {missing[:5]}")
        vals = [src[k] for k in range(lo, hi + 1)]
    elif callable(src):
        vals = [src(k) for k in range(lo, hi + 1)]
    else:
        vals = list(src)
        if len(vals) != n:
            raise DomainError(f"expected {n} {name} labels, got {len(vals)}")
    return tuple(int(v) % modulus for v in vals)


@dataclass(frozen=True)
class SquareLabeling:
    """Grid labels for an (a,b,c,d) pattern over a finite window.

    ``eps[k]`` is the label of the horizontal line ``y = window.y0 + k``;
    ``eta[k]`` labels the vertical line ``x = window.x0 + k``. Use
    :meth:`build` to construct from mappings/callables; residues are reduced.
    """

    a: int
    b: int
    c: int
    d: int
    window: Window
    eps: tuple[int, ...]
    eta: tuple[int, ...]

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
        w = self.window
        ny = max(0, w.y1 - w.y0 + 1)
        nx = max(0, w.x1 - w.x0 + 1)
        if w.is_empty:
            ny = nx = 0
        if len(self.eps) != ny or len(self.eta) != nx:
            raise DomainError("label tuples do not cover the window")
        object.__setattr__(self, "eps", tuple(v % self.h_modulus for v in self.eps))
        object.__setattr__(self, "eta", tuple(v % self.v_modulus for v in self.eta))

    @classmethod
    def build(cls, a: int, b: int, c: int, d: int, window: Window,
              eps: LabelSource = None, eta: LabelSource = None) -> "SquareLabeling":
        if window.is_empty:
            return cls(a, b, c, d, window, (), ())
        return cls(a, b, c, d, window,
                   _materialize(eps, window.y0, window.y1, a + b, "eps"),
                   _materialize(eta, window.x0, window.x1, c + d, "eta"))

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def h_modulus(self) -> int:
        return self.a + self.b

    @property
    def v_modulus(self) -> int:
        return self.c + self.d

    def eps_at(self, i: int) -> int:
        if not self.window.y0 <= i <= self.window.y1:
            raise DomainError(f"latitude {i} outside window")
        return self.eps[i - self.window.y0]

    def eta_at(self, j: int) -> int:
        if not self.window.x0 <= j <= self.window.x1:
            raise DomainError(f"longitude {j} outside window")
        return self.eta[j - self.window.x0]

    def eps_map(self) -> dict[int, int]:
        return {self.window.y0 + k: v for k, v in enumerate(self.eps)}

    def eta_map(self) -> dict[int, int]:
        return {self.window.x0 + k: v for k, v in enumerate(self.eta)}

    def replace(self, eps: Mapping[int, int] | None = None,
                eta: Mapping[int, int] | None = None) -> "SquareLabeling":
        """Return a copy with some labels overridden."""
        e = self.eps_map()
        t = self.eta_map()
        e.update(eps or {})
        t.update(eta or {})
        return SquareLabeling.build(self.a, self.b, self.c, self.d, self.window, e, t)

    def is_h_endpoint(self, p: Point) -> bool:
        r = (p[0] - self.eps_at(p[1])) % self.h_modulus
        return r == 0 or r == self.a

    def is_v_endpoint(self, p: Point) -> bool:
        r = (p[1] - self.eta_at(p[0])) % self.v_modulus
        return r == 0 or r == self.c

    def to_json(self) -> dict:
        return {
            "a": self.a, "b": self.b, "c": self.c, "d": self.d,
            "window": self.window.as_list(),
            "eps": {str(i): v for i, v in self.eps_map().items()},
            "eta": {str(j): v for j, v in self.eta_map().items()},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "SquareLabeling":
        try:
            window = Window(*(int(v) for v in obj["window"]))
            eps = {int(k): int(v) for k, v in obj["eps"].items()}
            eta = {int(k): int(v) for k, v in obj["eta"].items()}
            return cls.build(int(obj["a"]), int(obj["b"]), int(obj["c"]), int(obj["d"]),
                             window, eps, eta)
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed labeling JSON: {exc}") from exc


def ordinary_labeling(window: Window, eps: LabelSource = None,
                      eta: LabelSource = None) -> SquareLabeling:
    """Shorthand for a (1,1,1,1) labeling."""
    return SquareLabeling.build(1, 1, 1, 1, window, eps, eta)


def random_labeling(a: int, b: int, c: int, d: int, window: Window,
                    rng: random.Random) -> SquareLabeling:
    ny = window.y1 - window.y0 + 1
    nx = window.x1 - window.x0 + 1
    eps = [rng.randrange(a + b) for _ in range(ny)]
    eta = [rng.randrange(c + d) for _ in range(nx)]
    return SquareLabeling(a, b, c, d, window, tuple(eps), tuple(eta))


def transpose(labeling: SquareLabeling) -> SquareLabeling:
    """Reflect across the diagonal ``y = x``; (a,b) and (c,d) trade places."""
    L = labeling
    return SquareLabeling(L.c, L.d, L.a, L.b, L.window.transposed(), L.eta, L.eps)


def _line_anchors(label: int, modulus: int, span: int, lo: int, hi: int) -> range:
    first = lo + (label - lo) % modulus
    return range(first, hi - span + 1, modulus)


def stitches_on_latitude(labeling: SquareLabeling, i: int,
                         xrange: tuple[int, int] | None = None) -> list[Stitch]:
    """Horizontal stitches ``[(k,i),(k+a,i)]``, ``k = eps_i (mod a+b)``, inside ``xrange``."""
    w = labeling.window
    lo, hi = xrange if xrange is not None else (w.x0, w.x1)
    if lo < w.x0 or hi > w.x1:
        raise DomainError(f"x-range {lo, hi} not within window")
    eps = labeling.eps_at(i)
    return [Stitch(HORIZONTAL, k, i, labeling.a)
            for k in _line_anchors(eps, labeling.h_modulus, labeling.a, lo, hi)]


def stitches_on_longitude(labeling: SquareLabeling, j: int,
                          yrange: tuple[int, int] | None = None) -> list[Stitch]:
    w = labeling.window
    lo, hi = yrange if yrange is not None else (w.y0, w.y1)
    if lo < w.y0 or hi > w.y1:
        raise DomainError(f"y-range {lo, hi} not within window")
    eta = labeling.eta_at(j)
    return [Stitch(VERTICAL, j, k, labeling.c)
            for k in _line_anchors(eta, labeling.v_modulus, labeling.c, lo, hi)]


@dataclass(frozen=True)
class PatternWindow:
    labeling: SquareLabeling
    stitches: tuple[Stitch, ...]

    @property
    def window(self) -> Window:
        return self.labeling.window

    def __len__(self):
        return len(self.stitches)

    def stitches_json(self) -> list[list[list[int]]]:
        return sorted(s.to_json() for s in self.stitches)


def generate_window(labeling: SquareLabeling) -> PatternWindow:
    w = labeling.window
    if w.is_empty:
        return PatternWindow(labeling, ())
    out: list[Stitch] = []
    for i in range(w.y0, w.y1 + 1):
        out.extend(stitches_on_latitude(labeling, i))
    for j in range(w.x0, w.x1 + 1):
        out.extend(stitches_on_longitude(labeling, j))
    out.sort()
    return PatternWindow(labeling, tuple(out))


@dataclass(frozen=True, order=True)
class Violation:
    point: Point
    kind: str


VERTICAL_UNMATCHED = "vertical-endpoint-unmatched"
HORIZONTAL_UNMATCHED = "horizontal-endpoint-unmatched"


def default_margin(labeling: SquareLabeling) -> int:
    return 2 * max(labeling.h_modulus, labeling.v_modulus)


def validate_compatibility(pattern: PatternWindow, margin: int | None = None) -> list[Violation]:
    """Points of the margin-shrunk window where the endpoint sets disagree."""
    L = pattern.labeling
    need = max(L.h_modulus, L.v_modulus)
    if margin is None:
        margin = default_margin(L)
    if margin < need:
        raise PreconditionError(f"margin {margin} < max(a+b, c+d) = {need}")
    hpts: set[Point] = set()
    vpts: set[Point] = set()
    for s in pattern.stitches:
        (hpts if s.orientation == HORIZONTAL else vpts).update(s.endpoints)
    inner = pattern.window.shrink(margin)
    out = []
    for p in inner.points():
        h, v = p in hpts, p in vpts
        if v and not h:
            out.append(Violation(p, VERTICAL_UNMATCHED))
        elif h and not v:
            out.append(Violation(p, HORIZONTAL_UNMATCHED))
    return out


def is_valid(labeling: SquareLabeling, margin: int | None = None) -> bool:
    return not validate_compatibility(generate_window(labeling), margin)
