"""Patterns of type Phi, triangular hitomezashi and the (a,b)-triangular long-stitch case.

A pattern of type Phi puts, for every direction ``alpha`` in Phi and every
lattice point ``u``, exactly one of the segments ``[u-alpha, u]`` and
``[u, u+alpha]`` into the pattern. Along a chain ``u + Z*alpha`` this is a
single parity choice, so a labeling is one bit per chain.

Chains are keyed by ``(wedge, s mod g)`` where ``g = gcd(alpha)``,
``p = alpha / g``, ``wedge = u_x p_y - u_y p_x`` and ``s = m u_x + n u_y`` for a
fixed Bezout pair ``m p_x + n p_y = 1``. The position of ``u`` in its chain is
``t = s div g`` and ``[u, u+alpha]`` is present iff ``t = parity (mod 2)``.

Triangular patterns are handled in sheared coordinates where the three
directions are ``(1,0)``, ``(0,1)`` and ``(1,1)``.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Point, Window
from .errors import DomainError, IntegrityError

TRIANGULAR = ((1, 0), (0, 1), (1, 1))
ORDINARY = ((1, 0), (0, 1))
FIG8_DIRS = ((1, 0), (0, 1), (1, 1), (-1, 1))

SQRT3_2 = math.sqrt(3) / 2


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


@dataclass(frozen=True)
class Direction:
    vec: Point
    g: int
    p: Point
    m: int
    n: int

    @classmethod
    def of(cls, vec: Sequence[int]) -> "Direction":
        ax, ay = int(vec[0]), int(vec[1])
        if (ax, ay) == (0, 0):
            raise DomainError("zero vector is not a direction")
        g = math.gcd(ax, ay)
        px, py = ax // g, ay // g
        h, m, n = _egcd(px, py)
        if h < 0:
            m, n = -m, -n
        return cls((ax, ay), g, (px, py), m, n)

    def key(self, u: Point) -> tuple[int, int]:
        s = self.m * u[0] + self.n * u[1]
        return (u[0] * self.p[1] - u[1] * self.p[0], s % self.g)

    def position(self, u: Point) -> int:
        return (self.m * u[0] + self.n * u[1]) // self.g

    @property
    def norm(self) -> int:
        return max(abs(self.vec[0]), abs(self.vec[1]))


@dataclass(frozen=True)
class DirectionSet:
    dirs: tuple[Point, ...]

    def __post_init__(self):
        dirs = tuple((int(x), int(y)) for x, y in self.dirs)
        if not dirs:
            raise DomainError("a direction set must be nonempty")
        for k, (ax, ay) in enumerate(dirs):
            if (ax, ay) == (0, 0):
                raise DomainError("zero vector in direction set")
            for bx, by in dirs[:k]:
                if ax * by - ay * bx == 0:
                    raise DomainError(f"directions {(bx, by)} and {(ax, ay)} are parallel")
        object.__setattr__(self, "dirs", dirs)

    @property
    def info(self) -> tuple[Direction, ...]:
        return tuple(Direction.of(v) for v in self.dirs)

    @property
    def reach(self) -> int:
        return max(Direction.of(v).norm for v in self.dirs)

    def __len__(self):
        return len(self.dirs)

    def to_text(self) -> str:
        return ";".join(f"{x},{y}" for x, y in self.dirs)

    @classmethod
    def parse(cls, text: str) -> "DirectionSet":
        try:
            dirs = [tuple(int(v) for v in part.split(",")) for part in text.split(";") if part.strip()]
        except ValueError as exc:
            raise DomainError(f"directions look like '1,0;0,1', got {text!r}") from exc
        if any(len(d) != 2 for d in dirs):
            raise DomainError(f"directions look like '1,0;0,1', got {text!r}")
        return cls(tuple(dirs))  # type: ignore[arg-type]


def _as_dirset(phi) -> DirectionSet:
    return phi if isinstance(phi, DirectionSet) else DirectionSet(tuple(phi))


# ---------------------------------------------------------------- labelings and patterns

@dataclass(frozen=True)
class PhiLabeling:
    """One parity per chain, for every chain meeting the window."""

    dirs: DirectionSet
    window: Window
    parities: tuple[Mapping[tuple[int, int], int], ...]

    def parity(self, d: int, key) -> int:
        try:
            return self.parities[d][key]
        except KeyError:
            raise DomainError(f"no parity for chain {key} of direction {self.dirs.dirs[d]}") from None

    def plus(self, d: int, u: Point) -> bool:
        """Whether ``[u, u + alpha_d]`` is in the pattern."""
        info = Direction.of(self.dirs.dirs[d])
        return info.position(u) % 2 == self.parity(d, info.key(u))


def chain_keys(dirs: DirectionSet, window: Window) -> list[list[tuple[int, int]]]:
    """Sorted chain keys of each direction over the window's points."""
    out = []
    for info in dirs.info:
        out.append(sorted({info.key(u) for u in window.points()}))
    return out


def build_phi_labeling(phi, window: Window, source) -> PhiLabeling:
    """Labeling from a callable ``(d, key) -> parity`` or a sequence of mappings."""
    dirs = _as_dirset(phi)
    keys = chain_keys(dirs, window)
    pars = []
    for d, ks in enumerate(keys):
        if callable(source):
            pars.append({k: int(source(d, k)) % 2 for k in ks})
        else:
            pars.append({k: int(source[d][k]) % 2 for k in ks})
    return PhiLabeling(dirs, window, tuple(pars))


def sample_labeling(phi, window: Window, seed: int, index: int) -> PhiLabeling:
    """The ``index``-th labeling of a seeded search: fair independent parities per chain."""
    dirs = _as_dirset(phi)
    rng = np.random.default_rng([seed, index])
    pars = []
    for ks in chain_keys(dirs, window):
        draw = rng.integers(0, 2, size=len(ks))
        pars.append({k: int(v) for k, v in zip(ks, draw)})
    return PhiLabeling(dirs, window, tuple(pars))


def restrict_labeling(labeling: PhiLabeling, window: Window) -> PhiLabeling:
    """The same parities on a sub-window."""
    return build_phi_labeling(labeling.dirs, window, lambda d, k: labeling.parity(d, k))


def from_square_labeling(labeling) -> PhiLabeling:
    """The type-{(1,0),(0,1)} labeling equal to an ordinary (1,1,1,1) labeling."""
    if labeling.params != (1, 1, 1, 1):
        raise DomainError("only ordinary (1,1,1,1) labelings have a type-Phi form")
    dirs = DirectionSet(ORDINARY)
    # key of (1,0) on row y is (-y, 0); key of (0,1) on column x is (x, 0)
    return build_phi_labeling(dirs, labeling.window,
                              lambda d, k: labeling.eps_at(-k[0]) if d == 0 else labeling.eta_at(k[0]))


Segment = tuple[Point, Point]


@dataclass(frozen=True)
class PhiPattern:
    labeling: PhiLabeling
    segments: tuple[Segment, ...]

    @property
    def window(self) -> Window:
        return self.labeling.window

    @property
    def dirs(self) -> DirectionSet:
        return self.labeling.dirs


def generate_phi(phi, labeling: PhiLabeling) -> PhiPattern:
    """All segments ``[u, u+alpha]`` with both ends in the window."""
    dirs = _as_dirset(phi)
    if dirs != labeling.dirs:
        raise DomainError("labeling was built for a different direction set")
    w = labeling.window
    segs = []
    for d, info in enumerate(dirs.info):
        ax, ay = info.vec
        for u in w.points():
            v = (u[0] + ax, u[1] + ay)
            if w.contains(v) and labeling.plus(d, u):
                segs.append((u, v))
    segs.sort()
    return PhiPattern(labeling, tuple(segs))


def phi_violations(pattern: PhiPattern, margin: int | None = None) -> list[tuple[Point, Point]]:
    """Interior points where a direction has zero or two incident segments."""
    dirs = pattern.dirs
    margin = dirs.reach if margin is None else margin
    have = set(pattern.segments)
    bad = []
    for u in pattern.window.shrink(margin).points():
        for ax, ay in dirs.dirs:
            fwd = (u, (u[0] + ax, u[1] + ay)) in have
            back = ((u[0] - ax, u[1] - ay), u) in have
            if fwd == back:
                bad.append((u, (ax, ay)))
    return bad


# ---------------------------------------------------------------- components

@dataclass(frozen=True, order=True)
class PhiComponent:
    vertices: tuple[Point, ...]
    edges: tuple[Segment, ...] = field(compare=False)
    finite: bool = field(compare=False, default=True)

    def __len__(self):
        return len(self.vertices)

    def shape(self) -> tuple[Point, ...]:
        """Vertex set translated so its minimum corner is the origin."""
        mx = min(x for x, _ in self.vertices)
        my = min(y for _, y in self.vertices)
        return tuple(sorted((x - mx, y - my) for x, y in self.vertices))

    def to_json(self) -> dict:
        return {"order": len(self.vertices), "finite": self.finite,
                "vertices": [list(v) for v in self.vertices]}


def default_phi_margin(dirs: DirectionSet, stitch_period: int = 2) -> int:
    return 2 * dirs.reach * stitch_period


def phi_components(pattern: PhiPattern, margin: int | None = None) -> list[PhiComponent]:
    """Connected components; ``finite`` iff no vertex lies in the margin band."""
    margin = default_phi_margin(pattern.dirs) if margin is None else margin
    adj: dict[Point, list[Segment]] = defaultdict(list)
    for s in pattern.segments:
        adj[s[0]].append(s)
        adj[s[1]].append(s)
    inner = pattern.window.shrink(margin)
    seen: set[Point] = set()
    out = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        edges = set()
        while stack:
            u = stack.pop()
            for s in adj[u]:
                edges.add(s)
                v = s[1] if s[0] == u else s[0]
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        finite = all(inner.contains(v) for v in comp)
        out.append(PhiComponent(tuple(sorted(comp)), tuple(sorted(edges)), finite))
    return out


VERTEX_TYPES = 8


@dataclass(frozen=True)
class VertexHistogram:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> dict:
        return {"counts": list(self.counts), "total": self.total}


def vertex_type(component: PhiComponent, dirs: DirectionSet, u: Point) -> int:
    """Bit ``d`` is set when ``u`` uses ``[u, u+alpha_d]`` rather than ``[u-alpha_d, u]``."""
    edges = set(component.edges)
    t = 0
    for d, (ax, ay) in enumerate(dirs.dirs):
        fwd = (u, (u[0] + ax, u[1] + ay)) in edges
        back = ((u[0] - ax, u[1] - ay), u) in edges
        if fwd == back:
            raise DomainError(f"vertex {u} does not have exactly one {(ax, ay)} segment")
        t |= int(fwd) << d
    return t


def vertex_histogram(component: PhiComponent, phi=TRIANGULAR) -> VertexHistogram:
    dirs = _as_dirset(phi)
    if len(dirs) != 3:
        raise DomainError(f"vertex types are defined for three directions, got {len(dirs)}")
    counts = [0] * VERTEX_TYPES
    for u in component.vertices:
        counts[vertex_type(component, dirs, u)] += 1
    return VertexHistogram(tuple(counts))


CONSISTENT = "consistent"
COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class DivisibilityReport:
    status: str
    order: int

    @property
    def ok(self) -> bool:
        return self.status == CONSISTENT

    def to_json(self) -> dict:
        return {"status": self.status, "order": self.order, "residue_mod_16": self.order % 16}


def check_divisibility_16(component: PhiComponent | int) -> DivisibilityReport:
    n = component if isinstance(component, int) else len(component.vertices)
    return DivisibilityReport(CONSISTENT if n % 16 == 0 else COUNTEREXAMPLE, n)


# ---------------------------------------------------------------- seeded search

@dataclass(frozen=True)
class Finding:
    index: int
    component: PhiComponent
    labeling: PhiLabeling | None = field(default=None, compare=False, repr=False)

    def chain_parities(self) -> list[dict]:
        """Parities of the chains through the component's vertices."""
        if self.labeling is None:
            return []
        out = []
        for d, info in enumerate(self.labeling.dirs.info):
            keys = sorted({info.key(u) for u in self.component.vertices})
            out.append({f"{k[0]},{k[1]}": self.labeling.parity(d, k) for k in keys})
        return out

    def to_json(self) -> dict:
        return {"index": self.index, "component": self.component.to_json(),
                "chain_parities": self.chain_parities()}


@dataclass(frozen=True)
class SearchResult:
    dirs: DirectionSet
    seed: int
    budget: int
    window: Window
    strategy: str
    examined: int
    findings: tuple[Finding, ...]

    @property
    def components(self) -> list[PhiComponent]:
        return [f.component for f in self.findings]

    def distinct_shapes(self) -> int:
        return len({f.component.shape() for f in self.findings})

    def to_json(self) -> dict:
        return {"dirs": [list(d) for d in self.dirs.dirs], "seed": self.seed,
                "budget": self.budget, "window": self.window.as_list(),
                "strategy": self.strategy, "examined": self.examined,
                "found": len(self.findings), "distinct_shapes": self.distinct_shapes(),
                "orders": sorted(len(f.component) for f in self.findings),
                "findings": [f.to_json() for f in self.findings]}


class _Grid:
    """Precomputed index arrays for fast sampling over a fixed window."""

    def __init__(self, dirs: DirectionSet, window: Window, margin: int):
        self.dirs, self.window = dirs, window
        xs = np.arange(window.x0, window.x1 + 1)
        ys = np.arange(window.y0, window.y1 + 1)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        self.X, self.Y = X.ravel(), Y.ravel()
        self.nx, self.ny = len(xs), len(ys)
        self.n = self.nx * self.ny
        self.keys, self.tpar, self.nbr, self.nkeys = [], [], [], []
        key_lists = chain_keys(dirs, window)
        for info, ks in zip(dirs.info, key_lists):
            (ax, ay), g, (px, py) = info.vec, info.g, info.p
            s = info.m * self.X + info.n * self.Y
            wedge = self.X * py - self.Y * px
            lookup = {k: i for i, k in enumerate(ks)}
            kid = np.array([lookup[(int(wv), int(sv))] for wv, sv in zip(wedge, s % g)])
            self.keys.append(kid)
            self.tpar.append((s // g) % 2)
            Xn, Yn = self.X + ax, self.Y + ay
            inside = ((Xn >= window.x0) & (Xn <= window.x1)
                      & (Yn >= window.y0) & (Yn <= window.y1))
            nb = np.where(inside, (Xn - window.x0) * self.ny + (Yn - window.y0), -1)
            self.nbr.append(nb)
            self.nkeys.append(len(ks))
        inner = window.shrink(margin)
        self.border = ~((self.X >= inner.x0) & (self.X <= inner.x1)
                        & (self.Y >= inner.y0) & (self.Y <= inner.y1))

    def draws(self, seed: int, index: int) -> list[np.ndarray]:
        rng = np.random.default_rng([seed, index])
        return [rng.integers(0, 2, size=k) for k in self.nkeys]

    def scan(self, seed: int, lo: int, hi: int) -> list[tuple[int, tuple[Point, ...]]]:
        rows, cols = [], []
        B = hi - lo
        for b, idx in enumerate(range(lo, hi)):
            off = b * self.n
            for kid, tp, nb, par in zip(self.keys, self.tpar, self.nbr, self.draws(seed, idx)):
                ok = (tp == par[kid]) & (nb >= 0)
                src = np.nonzero(ok)[0]
                rows.append(src + off)
                cols.append(nb[src] + off)
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        G = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(B * self.n, B * self.n))
        _, lab = connected_components(G, directed=False)
        lab = lab.reshape(B, self.n)
        out = []
        for b in range(B):
            # every point has a segment in some direction, so no isolated vertices remain
            bad = np.unique(lab[b][self.border])
            live = np.setdiff1d(np.unique(lab[b]), bad)
            for comp in live:
                pts = np.nonzero(lab[b] == comp)[0]
                verts = tuple(sorted((int(self.X[i]), int(self.Y[i])) for i in pts))
                out.append((lo + b, verts))
        return out


def _scan_task(args):
    dirs, window, margin, seed, lo, hi = args
    return _Grid(dirs, window, margin).scan(seed, lo, hi)


def _component_of(pattern: PhiPattern, verts: tuple[Point, ...], margin: int) -> PhiComponent:
    for comp in phi_components(pattern, margin):
        if comp.vertices[0] == verts[0]:
            if comp.vertices != verts or not comp.finite:
                raise IntegrityError("fast scan and direct generation disagree on a component")
            return comp
    raise IntegrityError("component not found in regenerated pattern")


def search_finite_components(phi, seed: int, budget: int, window: Window | int = 48, *,
                             strategy: str = "sample", margin: int | None = None,
                             limit: int | None = None, jobs: int = 1, batch: int = 32,
                             max_radius: int = 8) -> SearchResult:
    """Seeded search for finite components of type-Phi patterns.

    ``sample`` draws ``budget`` labelings with fair independent chain
    parities; labeling ``i`` depends only on ``(seed, i)``, so the findings do
    not depend on ``jobs``. ``closure`` asks a SAT solver for a labeling whose
    origin component stays inside a box of growing radius; each solver call
    costs one unit of budget. ``limit`` stops after that many findings.
    """
    dirs = _as_dirset(phi)
    if budget <= 0:
        raise DomainError("budget must be positive")
    if isinstance(window, int):
        window = Window.square(0, window)
    margin = default_phi_margin(dirs) if margin is None else margin
    if strategy == "closure":
        return _closure_search(dirs, seed, budget, margin, limit, max_radius)
    if strategy != "sample":
        raise DomainError(f"strategy must be 'sample' or 'closure', got {strategy!r}")
    raw: list[tuple[int, tuple[Point, ...]]] = []
    examined = 0
    grid = _Grid(dirs, window, margin) if jobs == 1 else None
    wave = batch * max(1, jobs) * 4
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for lo in range(0, budget, wave):
            hi = min(budget, lo + wave)
            chunks = [(c, min(hi, c + batch)) for c in range(lo, hi, batch)]
            if pool is None:
                parts = [grid.scan(seed, a, b) for a, b in chunks]
            else:
                parts = list(pool.map(_scan_task, [(dirs, window, margin, seed, a, b)
                                                   for a, b in chunks]))
            for part in parts:
                raw.extend(part)
            examined = hi
            if limit is not None and len(raw) >= limit:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    raw.sort()
    if limit is not None and len(raw) >= limit:
        # keep whole labelings so the cut does not depend on wave size
        cut = raw[limit - 1][0]
        raw = [r for r in raw if r[0] <= cut]
        examined = cut + 1
    findings = []
    for idx, verts in raw:
        lab = sample_labeling(dirs, window, seed, idx)
        # regenerate on the bounding box plus one step, enough to hold every edge
        r = dirs.reach
        box = Window(min(x for x, _ in verts) - r, max(x for x, _ in verts) + r,
                     min(y for _, y in verts) - r, max(y for _, y in verts) + r)
        comp = _component_of(generate_phi(dirs, restrict_labeling(lab, box)), verts, r)
        findings.append(Finding(idx, comp, lab))
    return SearchResult(dirs, seed, budget, window, "sample", examined, tuple(findings))


def _closure_search(dirs: DirectionSet, seed: int, budget: int, margin: int,
                    limit: int | None, max_radius: int) -> SearchResult:
    from pysat.solvers import Cadical153

    rng = random.Random(seed)
    infos = dirs.info
    findings: list[Finding] = []
    calls = 0
    window = Window.square(-max_radius - margin, max_radius + margin)
    for R in range(1, max_radius + 1):
        if calls >= budget or (limit is not None and len(findings) >= limit):
            break
        box = Window.square(-R, R)
        var: dict = {}

        def v(k):
            if k not in var:
                var[k] = len(var) + 1
            return var[k]

        clauses = [[v(("x", (0, 0)))]]
        for u in box.points():
            xu = v(("x", u))
            for d, info in enumerate(infos):
                ax, ay = info.vec
                p = v(("p", d, info.key(u)))
                # [u, u+alpha] present iff parity == position mod 2
                lit_plus = p if info.position(u) % 2 else -p
                fwd, back = (u[0] + ax, u[1] + ay), (u[0] - ax, u[1] - ay)
                clauses.append([-xu, -lit_plus] + ([v(("x", fwd))] if box.contains(fwd) else []))
                clauses.append([-xu, lit_plus] + ([v(("x", back))] if box.contains(back) else []))
        rng.shuffle(clauses)
        with Cadical153(bootstrap_with=clauses) as solver:
            calls += 1
            if not solver.solve():
                continue
            model = {abs(l): l > 0 for l in solver.get_model()}
        fixed = {(k[1], k[2]): int(model.get(i, False)) for k, i in var.items() if k[0] == "p"}
        free_rng = random.Random(f"{seed}:{R}")
        lab = build_phi_labeling(dirs, window,
                                 lambda d, k: fixed.get((d, k), free_rng.randrange(2)))
        pattern = generate_phi(dirs, lab)
        comp = next(c for c in phi_components(pattern, margin) if (0, 0) in c.vertices)
        if comp.finite:
            findings.append(Finding(R, comp, lab))
    return SearchResult(dirs, seed, budget, window, "closure", calls, tuple(findings))


# ---------------------------------------------------------------- shear

def to_true(p) -> tuple[float, float]:
    """Sheared lattice coordinates to the equilateral plane: (X, Y) -> (X - Y/2, Y*sqrt(3)/2)."""
    X, Y = p
    return (X - Y / 2, Y * SQRT3_2)


def from_true(q) -> Point:
    x, y = q
    Y = round(y / SQRT3_2)
    return (round(x + Y / 2), Y)


def shear_segments(segments: Iterable[Segment]) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    return [(to_true(a), to_true(b)) for a, b in segments]


# ---------------------------------------------------------------- (a,b)-triangular

@dataclass(frozen=True)
class TriStitchPattern:
    """Per-chain offsets mod a+b for the three triangular directions.

    On the chain keyed ``k`` of direction ``d`` the stitches are
    ``[u, u + a*alpha_d]`` for positions ``t(u) = offsets[d][k] (mod a+b)``.
    """

    a: int
    b: int
    window: Window
    offsets: tuple[Mapping[tuple[int, int], int], ...]

    @property
    def M(self) -> int:
        return self.a + self.b

    def stitches(self) -> list[Segment]:
        out = []
        for d, info in enumerate(Direction.of(v) for v in TRIANGULAR):
            ax, ay = info.vec
            for u in self.window.points():
                off = self.offsets[d].get(info.key(u))
                if off is None or (info.position(u) - off) % self.M:
                    continue
                v = (u[0] + self.a * ax, u[1] + self.a * ay)
                if self.window.contains(v):
                    out.append((u, v))
        out.sort()
        return out

    def endpoint_sets(self) -> list[set[Point]]:
        sets = [set(), set(), set()]
        for d, info in enumerate(Direction.of(v) for v in TRIANGULAR):
            for u in self.window.points():
                off = self.offsets[d].get(info.key(u))
                if off is not None and (info.position(u) - off) % self.M in (0, self.a):
                    sets[d].add(u)
        return sets

    def violations(self, margin: int | None = None) -> list[Point]:
        margin = self.M if margin is None else margin
        sets = self.endpoint_sets()
        inner = self.window.shrink(margin)
        return [u for u in inner.points()
                if not (u in sets[0]) == (u in sets[1]) == (u in sets[2])]

    def observable(self, core: Window) -> tuple:
        """Stitches and endpoints inside ``core``; equal observables mean equal patterns there."""
        st = tuple(s for s in self.stitches() if core.contains(s[0]) and core.contains(s[1]))
        sets = self.endpoint_sets()
        ends = tuple(sorted(u for u in core.points() if u in sets[0]))
        return (st, ends)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "window": self.window.as_list(),
                "offsets": [{f"{k[0]},{k[1]}": v for k, v in sorted(o.items())}
                            for o in self.offsets]}


@dataclass(frozen=True)
class TriSatResult:
    a: int
    b: int
    window: Window
    status: str  # "SAT" or "UNSAT"
    solutions: tuple[TriStitchPattern, ...]
    nodes: int
    variables: int
    core: Window

    def to_json(self) -> dict:
        out = {"a": self.a, "b": self.b, "window": self.window.as_list(), "result": self.status,
               "core": self.core.as_list(), "variables": self.variables, "nodes": self.nodes}
        if self.status == "SAT":
            out["solutions"] = len(self.solutions)
            out["mutual_translates"] = all_translates(self.solutions, self.core)
        else:
            out["certificate"] = (f"exhaustive search over {self.variables} chain offsets "
                                  f"mod {self.a + self.b} visited {self.nodes} nodes, no solution")
        return out


def _tri_model(M: int, a: int, window: Window):
    infos = [Direction.of(v) for v in TRIANGULAR]
    lines: list[tuple[int, tuple[int, int]]] = []
    index: dict = {}
    pts = list(window.points())
    incid: list[list[tuple[int, int]]] = []  # per point: (line, position mod M)
    for u in pts:
        row = []
        for d, info in enumerate(infos):
            key = (d, info.key(u))
            if key not in index:
                index[key] = len(lines)
                lines.append(key)
            row.append((index[key], info.position(u) % M))
        incid.append(row)
    on_line: list[list[int]] = [[] for _ in lines]
    for pi, row in enumerate(incid):
        for li, _ in row:
            on_line[li].append(pi)
    return infos, lines, pts, incid, on_line


def _endpoint_mask(M: int, a: int, t: int, status: bool) -> int:
    """Offsets ``o`` for which position ``t`` has the given endpoint status."""
    m = 0
    for o in range(M):
        if ((t - o) % M in (0, a)) == status:
            m |= 1 << o
    return m


def ab_triangular_sat(a: int, b: int, side: int | None = None, *, max_solutions: int = 64
                      ) -> TriSatResult:
    """Backtracking over per-chain offsets with the endpoint-coincidence constraint.

    Chains meeting the central core are decided first (center outward). Once
    they are all fixed, the core observable is recorded only if the remaining
    chains admit a consistent completion, so distinct results are distinct
    patterns on the core.
    """
    if not (isinstance(a, int) and isinstance(b, int)) or b < 1 or a <= b:
        raise DomainError("need a > b >= 1 (swap a and b: that flips the cloth over)")
    if math.gcd(a, b) != 1:
        raise DomainError(f"gcd(a,b) = {math.gcd(a, b)}; reduce first")
    M = a + b
    side = 4 * M if side is None else side
    if side < 4 * M:
        raise DomainError(f"window side must be at least 4(a+b) = {4 * M}")
    lo = -(side // 2)
    window = Window.square(lo, lo + side)
    core = window.shrink(M)
    infos, lines, pts, incid, on_line = _tri_model(M, a, window)
    n_lines = len(lines)
    full = (1 << M) - 1
    cx = cy = lo + side // 2

    def line_dist(li):
        return min(max(abs(pts[p][0] - cx), abs(pts[p][1] - cy)) for p in on_line[li])

    core_pts = {i for i, u in enumerate(pts) if core.contains(u)}
    core_lines = {li for i in core_pts for li, _ in incid[i]}
    order = sorted(range(n_lines), key=lambda li: (li not in core_lines, line_dist(li), lines[li]))
    rank = {li: k for k, li in enumerate(order)}
    masks = {}
    for t in range(M):
        masks[(t, True)] = _endpoint_mask(M, a, t, True)
        masks[(t, False)] = _endpoint_mask(M, a, t, False)

    dom = [full] * n_lines
    val: list[int | None] = [None] * n_lines
    nodes = 0
    seen: dict = {}

    def assign(li, o, trail):
        """Fix line li = o and forward-check every point on it; False on a wipe-out."""
        val[li] = o
        for p in on_line[li]:
            status = None
            for lj, t in incid[p]:
                if lj == li:
                    status = (t - o) % M in (0, a)
            for lj, t in incid[p]:
                if lj == li:
                    continue
                if val[lj] is not None:
                    if ((t - val[lj]) % M in (0, a)) != status:
                        return False
                    continue
                nd = dom[lj] & masks[(t, status)]
                if nd != dom[lj]:
                    trail.append((lj, dom[lj]))
                    dom[lj] = nd
                    if nd == 0:
                        return False
        return True

    def pick(phase_core: bool):
        best = None
        for li in order:
            if val[li] is not None or ((li in core_lines) != phase_core):
                continue
            c = bin(dom[li]).count("1")
            if best is None or c < best[0]:
                best = (c, li)
                if c <= 1:
                    break
        return None if best is None else best[1]

    def search(phase_core: bool) -> bool:
        """Depth-first; in the core phase, records observables; else finds one completion."""
        nonlocal nodes
        li = pick(phase_core)
        if li is None:
            if phase_core:
                snap = current()
                key = snap.observable(core)
                if key not in seen and search(False):
                    seen[key] = snap
                return len(seen) >= max_solutions
            return True
        for o in range(M):
            if not dom[li] >> o & 1:
                continue
            nodes += 1
            trail: list = []
            ok = assign(li, o, trail)
            if ok:
                done = search(phase_core)
            val[li] = None
            for lj, old in reversed(trail):
                dom[lj] = old
            if ok and done:
                return True
        return False

    def current() -> TriStitchPattern:
        offs: list[dict] = [{}, {}, {}]
        for li, (d, key) in enumerate(lines):
            if val[li] is not None:
                offs[d][key] = val[li]
        return TriStitchPattern(a, b, window, tuple(offs))

    search(True)
    sols = tuple(seen[k] for k in sorted(seen))
    return TriSatResult(a, b, window, "SAT" if sols else "UNSAT", sols, nodes, n_lines, core)


def translate_pattern_stitches(stitches: Iterable[Segment], v: Point) -> set[Segment]:
    return {((s[0][0] + v[0], s[0][1] + v[1]), (s[1][0] + v[0], s[1][1] + v[1])) for s in stitches}


def are_translates(p: TriStitchPattern, q: TriStitchPattern, core: Window,
                   reach: int | None = None) -> Point | None:
    """A vector ``v`` with ``q = p + v`` on the shrunk core, or None."""
    reach = p.M if reach is None else reach
    inner = core.shrink(reach)
    sp, sq = p.stitches(), q.stitches()

    def restrict(ss):
        return {s for s in ss if inner.contains(s[0]) and inner.contains(s[1])}

    target = restrict(sq)
    for dx in range(-reach, reach + 1):
        for dy in range(-reach, reach + 1):
            if restrict(translate_pattern_stitches(sp, (dx, dy))) == target:
                return (dx, dy)
    return None


def all_translates(solutions: Sequence[TriStitchPattern], core: Window) -> bool:
    return all(are_translates(solutions[0], s, core) is not None for s in solutions[1:])


# (2,1): at an endpoint of type A the three stitches leave along E, NW and SW
# (sheared (1,0), (0,1), (-1,-1)); at type B along W, SE and NE.
_TYPE_A = ((1, 0), (0, 1), (-1, -1))
_TYPE_B = ((-1, 0), (0, -1), (1, 1))


def make_21_triangular(seed_stitch: Segment, window: Window | int = 24) -> TriStitchPattern:
    """The (2,1) pattern containing ``seed_stitch``.

    The seed's midpoint fixes the class ``k`` of non-endpoints ``x + y = k
    (mod 3)``; every chain's offset follows from it. The result is checked to
    branch at 120 degrees at every endpoint, with neighbouring endpoints of
    opposite type.
    """
    if isinstance(window, int):
        window = Window.square(-window // 2, window - window // 2)
    (x0, y0), (x1, y1) = seed_stitch
    step = (x1 - x0, y1 - y0)
    unit = (step[0] // 2, step[1] // 2)
    if (2 * unit[0], 2 * unit[1]) != step or unit not in _TYPE_A + _TYPE_B:
        raise DomainError(f"seed {seed_stitch} is not a length-2 stitch on a triangular line")
    k = (x0 + unit[0] + y0 + unit[1]) % 3
    infos = [Direction.of(v) for v in TRIANGULAR]
    offs: list[dict] = [{}, {}, {}]
    for u in window.points():
        for d, info in enumerate(infos):
            key = info.key(u)
            if key in offs[d] or (u[0] + u[1]) % 3 != k:
                continue
            # u is the middle of a stitch on this chain, so the stitch starts one step back
            offs[d][key] = (info.position(u) - 1) % 3
    pattern = TriStitchPattern(2, 1, window, tuple(offs))
    _check_branching(pattern)
    return pattern


def _check_branching(pattern: TriStitchPattern) -> None:
    have = set(pattern.stitches())
    w = pattern.window
    kind: dict[Point, bool] = {}
    for u in w.shrink(2).points():
        leaving = []
        for dx, dy in _TYPE_A + _TYPE_B:
            v = (u[0] + 2 * dx, u[1] + 2 * dy)
            if tuple(sorted((u, v))) in have:
                leaving.append((dx, dy))
        if not leaving:
            continue
        if sorted(leaving) == sorted(_TYPE_A):
            kind[u] = True
        elif sorted(leaving) == sorted(_TYPE_B):
            kind[u] = False
        else:
            raise IntegrityError(f"endpoint {u} does not branch at 120 degrees: {leaving}")
    for u, v in have:
        if u in kind and v in kind and kind[u] == kind[v]:
            raise IntegrityError(f"stitch {u}-{v} joins endpoints of the same type")


def hexagons_21(pattern: TriStitchPattern, margin: int = 4) -> tuple[int, int]:
    """(complete side-2 hexagons, type-A vertices checked) in the shrunk window."""
    have = set(pattern.stitches())
    ring = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
    inner = pattern.window.shrink(margin)
    checked = complete = 0
    ends = pattern.endpoint_sets()[0]
    for u in inner.points():
        if u not in ends or ((u[0] + 2, u[1]), u) in have or (u, (u[0] + 2, u[1])) not in have:
            continue
        checked += 1
        p, ok = u, True
        for dx, dy in ring:
            q = (p[0] + 2 * dx, p[1] + 2 * dy)
            if tuple(sorted((p, q))) not in have:
                ok = False
                break
            p = q
        complete += ok and p == u
    return complete, checked


def tri_from_labeling_sheared(pattern: TriStitchPattern) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    return shear_segments(pattern.stitches())
