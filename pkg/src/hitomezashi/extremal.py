"""Exhaustive loop census for fixed width and height, and the extremal checks built on it.

A loop of width ``w`` and height ``h`` placed in ``[0,w] x [0,h]`` depends
only on ``eps_0 .. eps_h`` and ``eta_0 .. eta_w``, so the census walks all
``2^(w+h+2)`` such assignments. The fast path lives in :mod:`._kernel`; the
``trace`` method goes through the generic window tracer and exists as a
cross-check.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import _kernel
from .canonical import HCOMB, RUG, VCOMB, WAND, family, kind_canonical
from .core import HORIZONTAL, VERTICAL, Window, generate_window, ordinary_labeling
from .errors import DomainError, IntegrityError, PreconditionError, ResourceError, TheoremViolation
from .loops import (CanonicalLoop, Loop, LoopMetrics, canonicalize, extremal_profile,
                    fraction_json, loop_metrics, loops_in)

DEFAULT_MAX_BITS = 28  # w + h <= 26
ORDERS = ("lex", "gray")
METHODS = ("kernel", "trace")

CLASS_TAGS = ("Rug", "Cross", "Comb", "Wand", "DyckMin", "Other")
_KIND_TO_CLASS = {RUG: "Rug", "Cross": "Cross", HCOMB: "Comb", VCOMB: "Comb", WAND: "Wand"}


def _check_dims(w: int, h: int) -> None:
    for name, v in (("width", w), ("height", h)):
        if not isinstance(v, int) or v < 1 or v % 2 == 0:
            raise DomainError(f"{name} must be an odd positive integer, got {v!r}")


def label_bits(w: int, h: int) -> int:
    return w + h + 2


def code_labels(code: int, w: int, h: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Unpack a census code into ``(eps_0..eps_h, eta_0..eta_w)``."""
    eps = tuple((code >> i) & 1 for i in range(h + 1))
    eta = tuple((code >> (h + 1 + j)) & 1 for j in range(w + 1))
    return eps, eta


def loop_labels(loop: Loop | CanonicalLoop) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Grid labels on ``[0,w] x [0,h]`` forced by a loop placed with its min corner at 0.

    Every row and column of the bounding box carries a vertex, hence a stitch,
    so the labels are fully determined.
    """
    vs = loop.vertices
    mx = min(x for x, _ in vs)
    my = min(y for _, y in vs)
    w = max(x for x, _ in vs) - mx
    h = max(y for _, y in vs) - my
    eps: list[int | None] = [None] * (h + 1)
    eta: list[int | None] = [None] * (w + 1)
    n = len(vs)
    for k in range(n):
        (x1, y1), (x2, y2) = vs[k], vs[(k + 1) % n]
        if y1 == y2:
            eps[y1 - my] = (min(x1, x2) - mx) % 2
        else:
            eta[x1 - mx] = (min(y1, y2) - my) % 2
    if None in eps or None in eta:
        raise IntegrityError("loop leaves a row or column of its bounding box empty")
    return tuple(eps), tuple(eta)


# ---------------------------------------------------------------- enumeration

@dataclass(frozen=True)
class Extremum:
    value: int | Fraction
    witnesses: tuple[CanonicalLoop, ...]

    def to_json(self) -> dict:
        v = fraction_json(self.value) if isinstance(self.value, Fraction) else self.value
        return {"value": v, "witnesses": [c.to_json()["vertices"] for c in self.witnesses]}


@dataclass(frozen=True)
class EnumerationResult:
    """All loops of exact dimensions ``w x h``, modulo translation."""

    w: int
    h: int
    loops: tuple[CanonicalLoop, ...]
    metrics: dict = field(compare=False, repr=False)
    labels_scanned: int = 0
    order: str = "lex"

    @property
    def count(self) -> int:
        return len(self.loops)

    def _extremum(self, key, pick) -> Extremum | None:
        if not self.loops:
            return None
        best = pick(key(self.metrics[c]) for c in self.loops)
        return Extremum(best, tuple(c for c in self.loops if key(self.metrics[c]) == best))

    def min_length(self):
        return self._extremum(lambda m: m.length, min)

    def max_length(self):
        return self._extremum(lambda m: m.length, max)

    def min_area(self):
        return self._extremum(lambda m: m.area, min)

    def max_area(self):
        return self._extremum(lambda m: m.area, max)

    def stats(self) -> dict:
        return {"min_length": self.min_length(), "max_length": self.max_length(),
                "min_area": self.min_area(), "max_area": self.max_area()}

    def to_json(self, include_loops: bool = True) -> dict:
        out = {"width": self.w, "height": self.h, "count": self.count,
               "labels_scanned": self.labels_scanned, "order": self.order,
               "stats": {k: (v.to_json() if v else None) for k, v in self.stats().items()}}
        if include_loops:
            out["loops"] = [{"vertices": [list(p) for p in c.vertices],
                             **self.metrics[c].to_json()} for c in self.loops]
        return out


def _scan_task(args):
    w, h, lo, hi, gray, use_jit = args
    return _kernel.scan_codes(w, h, lo, hi, gray=gray, use_jit=use_jit)


def _trace_codes(w: int, h: int, lo: int, hi: int, gray: bool) -> list[int]:
    """Generic path: build a padded window per code and trace it."""
    window = Window(-1, w + 1, -1, h + 1)
    found = []
    for idx in range(lo, hi):
        code = idx ^ (idx >> 1) if gray else idx
        eps, eta = code_labels(code, w, h)
        lab = ordinary_labeling(window,
                                lambda i: eps[i] if 0 <= i <= h else 0,
                                lambda j: eta[j] if 0 <= j <= w else 0)
        for lp in loops_in(generate_window(lab)):
            m = loop_metrics(lp)
            if m.width == w and m.height == h:
                found.append(code)
                break
    return found


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get("HITOZ_JOBS")
        jobs = int(env) if env else 1
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1, got {jobs}")
    return jobs


def enumerate_loops(w: int, h: int, *, order: str = "lex", method: str = "kernel",
                    jobs: int | None = 1, max_bits: int = DEFAULT_MAX_BITS,
                    allow_large: bool = False, use_jit: bool = True) -> EnumerationResult:
    """Every loop of width ``w`` and height ``h`` modulo translation.

    ``order`` picks lexicographic or Gray-code iteration of the label space;
    the result does not depend on it, nor on ``jobs``.
    """
    _check_dims(w, h)
    if order not in ORDERS:
        raise DomainError(f"order must be one of {ORDERS}, got {order!r}")
    if method not in METHODS:
        raise DomainError(f"method must be one of {METHODS}, got {method!r}")
    bits = label_bits(w, h)
    if bits > max_bits and not allow_large:
        raise ResourceError(f"{w}x{h} needs 2^{bits} label assignments (limit 2^{max_bits}); "
                            "raise max_bits or pass allow_large")
    jobs = resolve_jobs(jobs)
    total = 1 << bits
    gray = order == "gray"
    if method == "trace":
        codes = _trace_codes(w, h, 0, total, gray)
    elif jobs == 1 or total < (1 << 16):
        codes = _kernel.scan_codes(w, h, 0, total, gray=gray, use_jit=use_jit)
    else:
        parts = jobs * 4
        step = -(-total // parts)
        tasks = [(w, h, lo, min(total, lo + step), gray, use_jit) for lo in range(0, total, step)]
        codes = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_scan_task, tasks):
                codes.extend(chunk)
    seen: dict[CanonicalLoop, LoopMetrics] = {}
    for code in codes:
        pts = _kernel.trace_code(code, w, h)
        if pts is None:
            raise IntegrityError(f"kernel flagged code {code} but no loop traced")
        canon = canonicalize(Loop(tuple(pts)))
        if canon not in seen:
            m = loop_metrics(canon.as_loop())
            if (m.width, m.height) != (w, h):
                raise IntegrityError(f"code {code} traced a {m.width}x{m.height} loop")
            seen[canon] = m
    loops = tuple(sorted(seen))
    return EnumerationResult(w, h, loops, {c: seen[c] for c in loops}, total, order)


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class EqualityClass:
    """Structural class of a loop.

    ``tag`` is the first match in the order Rug, Cross, Comb, Wand, DyckMin,
    Other; ``tags`` holds every structural match (a 5x5 cross is also a comb
    and a wand). ``kinds`` lists the named constructions the loop equals.
    """

    tag: str
    tags: frozenset
    kinds: tuple[str, ...] = ()
    dyck_readings: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"tag": self.tag, "tags": sorted(self.tags, key=CLASS_TAGS.index),
                "kinds": list(self.kinds), "dyck_readings": list(self.dyck_readings)}


@lru_cache(maxsize=64)
def _family_index(w: int, h: int) -> dict:
    index: dict[CanonicalLoop, list] = {}
    for kind in family(w, h):
        index.setdefault(kind_canonical(kind), []).append(kind)
    return index


def _dims(vs) -> tuple[int, int]:
    xs = [x for x, _ in vs]
    ys = [y for _, y in vs]
    return max(xs) - min(xs), max(ys) - min(ys)


def dyck_readings(loop: Loop | CanonicalLoop) -> tuple[str, ...]:
    """Orientations in which every stitch shares its coordinate with exactly one other.

    ``horizontal``: each horizontal stitch has the same longitude as exactly one
    other horizontal stitch; ``vertical`` is the transposed statement.
    """
    st = Loop(loop.vertices).stitches()
    out = []
    for name, orient, coord in ((HORIZONTAL_READING, HORIZONTAL, lambda s: s.longitude),
                                (VERTICAL_READING, VERTICAL, lambda s: s.latitude)):
        counts: dict[Fraction, int] = {}
        for s in st:
            if s.orientation == orient:
                counts[coord(s)] = counts.get(coord(s), 0) + 1
        if counts and all(n == 2 for n in counts.values()):
            out.append(name)
    return tuple(out)


HORIZONTAL_READING = "horizontal"
VERTICAL_READING = "vertical"


def _dyck_min(readings: tuple[str, ...], w: int, h: int) -> bool:
    if w > h:
        return HORIZONTAL_READING in readings
    if h > w:
        return VERTICAL_READING in readings
    return bool(readings)


def classify_loop(loop: Loop | CanonicalLoop) -> EqualityClass:
    canon = loop if isinstance(loop, CanonicalLoop) else canonicalize(loop)
    w, h = _dims(canon.vertices)
    kinds = _family_index(w, h).get(canon, [])
    tags = {_KIND_TO_CLASS[k.tag] for k in kinds}
    readings = dyck_readings(canon)
    if _dyck_min(readings, w, h):
        tags.add("DyckMin")
    if not tags:
        tags.add("Other")
    tag = next(t for t in CLASS_TAGS if t in tags)
    return EqualityClass(tag, frozenset(tags), tuple(sorted(k.preset() for k in kinds)), readings)


# ---------------------------------------------------------------- Dyck words

def _transpose_canon(vs) -> CanonicalLoop:
    return canonicalize(Loop(tuple((y, x) for x, y in vs)))


def dyck_code(loop: Loop | CanonicalLoop, orientation: str | None = None) -> str:
    """Dyck word (over ``U``/``D``) of a minimum-length loop.

    Read along the southern run of the counterclockwise traversal from the
    west-extremal stitch to the east-extremal one: each downward vertical step
    is ``U``, each upward one ``D``. With ``orientation='vertical'`` the loop is
    transposed first. The default reads along the longer side.
    """
    canon = loop if isinstance(loop, CanonicalLoop) else canonicalize(loop)
    w, h = _dims(canon.vertices)
    if orientation is None:
        orientation = HORIZONTAL_READING if w >= h else VERTICAL_READING
    if orientation not in (HORIZONTAL_READING, VERTICAL_READING):
        raise DomainError(f"orientation must be horizontal or vertical, got {orientation!r}")
    if orientation not in dyck_readings(canon):
        raise DomainError(f"loop is not a minimum-length loop in the {orientation} reading")
    if orientation == VERTICAL_READING:
        canon = _transpose_canon(canon.vertices)
        w, h = h, w
    vs = list(canon.vertices)
    west = sorted(p for p in vs if p[0] == 0)
    start = vs.index(west[0])
    n = len(vs)
    word = []
    depth = 0
    k = start
    while True:
        x, y = vs[k]
        nx, ny = vs[(k + 1) % n]
        if nx == x:
            word.append("U" if ny < y else "D")
            depth += 1 if ny < y else -1
            if depth < 0:
                raise IntegrityError("southern run rises above its start")
        elif nx < x:
            raise IntegrityError("southern run turned west")
        k = (k + 1) % n
        if vs[k][0] == w:
            break
    if depth != 0 or len(word) != w - 1:
        raise IntegrityError("southern run is not a balanced word of the expected length")
    return "".join(word)


def dyck_height(word: str) -> int:
    depth = top = 0
    for ch in word:
        depth += 1 if ch == "U" else -1
        top = max(top, depth)
    return top


def loop_from_dyck(word: str, orientation: str = HORIZONTAL_READING) -> CanonicalLoop:
    """Inverse of :func:`dyck_code`: the southern run follows the word, the
    northern run is its mirror image one unit above."""
    depth = 0
    south = [(0, 0), (1, 0)]
    x, y = 1, 0
    for ch in word:
        if ch not in "UD":
            raise DomainError(f"Dyck words use U and D only, got {ch!r}")
        y += -1 if ch == "U" else 1
        depth += 1 if ch == "U" else -1
        if depth < 0:
            raise DomainError(f"{word!r} is not a Dyck word")
        south.append((x, y))
        x += 1
        south.append((x, y))
    if depth != 0:
        raise DomainError(f"{word!r} is not a Dyck word")
    north = [(px, 1 - py) for px, py in reversed(south)]
    vs = tuple(south + north)
    if orientation == VERTICAL_READING:
        return _transpose_canon(vs)
    return canonicalize(Loop(vs))


# ---------------------------------------------------------------- extremal report

def loop_congruence_failures(loop: Loop | CanonicalLoop) -> list[str]:
    """Reasons a loop breaks the parity facts every loop obeys (empty if none)."""
    lp = Loop(loop.vertices)
    m = loop_metrics(lp)
    bad = []
    if m.width % 2 == 0 or m.height % 2 == 0:
        bad.append(f"even dimension {m.width}x{m.height}")
    if m.length % 8 != 4:
        bad.append(f"length {m.length} is not 4 mod 8")
    if m.area.denominator != 1 or m.area % 4 != 1:
        bad.append(f"area {m.area} is not 1 mod 4")
    try:
        extremal_profile(lp)
    except IntegrityError as exc:
        bad.append(f"extremal pairing: {exc}")
    return bad


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    observed: object
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        def conv(v):
            return fraction_json(v) if isinstance(v, Fraction) else v
        out = {"name": self.name, "expected": conv(self.expected),
               "observed": conv(self.observed), "status": "pass" if self.passed else "FAIL"}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class ExtremalReport:
    w: int
    h: int
    count: int
    stats: dict
    max_non_rug_length: Extremum | None
    checks: tuple[Check, ...]
    class_tally: dict
    dyck_counts: dict
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"width": self.w, "height": self.h, "count": self.count, "skipped": self.skipped,
                "stats": {k: (v.to_json() if v else None) for k, v in self.stats.items()},
                "max_non_rug_length": (self.max_non_rug_length.to_json()
                                       if self.max_non_rug_length else None),
                "checks": [c.to_json() for c in self.checks],
                "class_tally": dict(sorted(self.class_tally.items())),
                "dyck_counts": dict(sorted(self.dyck_counts.items()))}


def max_length_equality_expected(w: int, h: int) -> bool:
    """Whether a comb or wand of dimensions ``w x h`` exists (so the non-rug length bound is tight)."""
    return w >= 5 and h >= 5 and (w % 4 == 1 or h % 4 == 1 or min(w, h) == 5)


def extremal_report(w: int, h: int, *, result: EnumerationResult | None = None,
                    strict: bool = True, **enum_kwargs) -> ExtremalReport:
    """Check the length and area bounds over the complete census of ``w x h`` loops.

    With ``strict`` a failed check raises :class:`TheoremViolation` carrying the
    offending loop; otherwise failures are recorded in ``checks``.
    """
    if result is None:
        result = enumerate_loops(w, h, **enum_kwargs)
    stats = result.stats()
    if not result.loops:
        return ExtremalReport(w, h, 0, stats, None, (), {}, {}, skipped=True)
    checks: list[Check] = []

    def check(name, expected, observed, ok, witness=None, note=""):
        checks.append(Check(name, expected, observed, ok, note))
        if strict and not ok:
            raise TheoremViolation(f"{w}x{h}: {name}: expected {expected}, observed {observed}",
                                   witness)

    for c in result.loops:
        bad = loop_congruence_failures(c)
        if bad:
            check("congruences", "none broken", "; ".join(bad), False, c)
    check("congruences", "none broken", "none broken", True)

    classes = {c: classify_loop(c) for c in result.loops}
    mn_len = stats["min_length"]
    check("min_length", 4 * max(w, h), mn_len.value, mn_len.value == 4 * max(w, h),
          mn_len.witnesses[0])

    mn_area = stats["min_area"]
    if w >= 3 and h >= 3:
        want = 2 * (w + h) - 7
        check("min_area", want, mn_area.value, mn_area.value == want, mn_area.witnesses[0])
        if min(w, h) >= 5:
            crosses = sorted(c for c in result.loops if "Cross" in classes[c].tags)
            n_cross = ((w - 3) // 2) * ((h - 3) // 2)
            ok = set(mn_area.witnesses) == set(crosses) and len(crosses) == n_cross
            check("min_area_witnesses_are_crosses", n_cross, len(mn_area.witnesses), ok,
                  next(iter(set(mn_area.witnesses) ^ set(crosses)), None))

    mx_area = stats["max_area"]
    want = (w - 1) * (h - 1) + 1
    check("max_area", want, mx_area.value, mx_area.value == want, mx_area.witnesses[0])
    rug_only = len(mx_area.witnesses) == 1 and classes[mx_area.witnesses[0]].tag == "Rug"
    check("max_area_unique_rug", 1, len(mx_area.witnesses), rug_only, mx_area.witnesses[-1])

    non_rug = [c for c in result.loops if "Rug" not in classes[c].tags]
    mx_nr = None
    if non_rug:
        best = max(result.metrics[c].length for c in non_rug)
        mx_nr = Extremum(best, tuple(c for c in non_rug if result.metrics[c].length == best))
    if w >= 5 and h >= 5:
        bound = (w - 1) * (h - 1) + 4
        check("max_non_rug_length_bound", f"<= {bound}", mx_nr.value, mx_nr.value <= bound,
              mx_nr.witnesses[0])
        if max_length_equality_expected(w, h):
            check("max_non_rug_length", bound, mx_nr.value, mx_nr.value == bound,
                  mx_nr.witnesses[0])
            odd = [c for c in mx_nr.witnesses
                   if not classes[c].tags & {"Comb", "Wand"}]
            check("max_non_rug_length_witnesses", "combs/wands only",
                  f"{len(odd)} other" if odd else "combs/wands only", not odd,
                  odd[0] if odd else None)
        else:
            check("max_non_rug_length_open_case", f"< {bound} (no comb or wand exists)",
                  mx_nr.value, mx_nr.value < bound, mx_nr.witnesses[0],
                  note="empirical: both sides are 3 mod 4")

    tally: dict[str, int] = {}
    for ec in classes.values():
        tally[ec.tag] = tally.get(ec.tag, 0) + 1
    dyck = {HORIZONTAL_READING: sum(HORIZONTAL_READING in e.dyck_readings for e in classes.values()),
            VERTICAL_READING: sum(VERTICAL_READING in e.dyck_readings for e in classes.values())}
    return ExtremalReport(w, h, result.count, stats, mx_nr, tuple(checks), tally, dyck)


# ---------------------------------------------------------------- open case

@dataclass(frozen=True)
class OpenCaseReport:
    w: int
    h: int
    status: str
    bound: int
    max_non_rug_length: int | None = None
    witnesses: tuple[CanonicalLoop, ...] = ()
    witness_labels: tuple = ()
    witness_classes: tuple[EqualityClass, ...] = ()
    count: int = 0

    def to_json(self) -> dict:
        return {"width": self.w, "height": self.h, "status": self.status, "empirical": True,
                "bound": self.bound, "count": self.count,
                "max_non_rug_length": self.max_non_rug_length,
                "witnesses": [{"vertices": [list(p) for p in c.vertices],
                               "eps": "".join(map(str, lab[0])),
                               "eta": "".join(map(str, lab[1])),
                               "class": ec.to_json()}
                              for c, lab, ec in zip(self.witnesses, self.witness_labels,
                                                    self.witness_classes)]}


def search_open_case(w: int, h: int, budget: int = 1 << DEFAULT_MAX_BITS,
                     **enum_kwargs) -> OpenCaseReport:
    """Longest non-rug loops when both sides are 3 mod 4, found by complete enumeration.

    Nothing is asserted; the report records what the census shows. ``budget``
    caps the number of label assignments scanned.
    """
    _check_dims(w, h)
    if w % 4 != 3 or h % 4 != 3:
        raise PreconditionError(f"open case needs w = h = 3 mod 4, got {w}x{h}")
    bound = (w - 1) * (h - 1) + 4
    if min(w, h) == 3:
        return OpenCaseReport(w, h, "skipped: every loop with a side of 3 is a rug", bound)
    if (1 << label_bits(w, h)) > budget:
        return OpenCaseReport(w, h, f"skipped: 2^{label_bits(w, h)} assignments exceed budget",
                              bound)
    enum_kwargs.setdefault("allow_large", True)
    res = enumerate_loops(w, h, **enum_kwargs)
    non_rug = [c for c in res.loops if classify_loop(c).tag != "Rug"]
    if not non_rug:
        return OpenCaseReport(w, h, "complete", bound, count=res.count)
    best = max(res.metrics[c].length for c in non_rug)
    wit = tuple(c for c in non_rug if res.metrics[c].length == best)
    return OpenCaseReport(w, h, "complete", bound, best, wit,
                          tuple(loop_labels(c) for c in wit),
                          tuple(classify_loop(c) for c in wit), res.count)
