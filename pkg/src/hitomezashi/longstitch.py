"""Long-stitch (a,b,c,d) patterns: case analysis, strand classes, explicit
parameterizations, dilation, exact counts and a torus backtracking oracle.

Horizontal stitches are ``[(k,i),(k+a,i)]`` with ``k = eps_i (mod a+b)`` and
vertical stitches ``[(j,k),(j,k+c)]`` with ``k = eta_j (mod c+d)``.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (HORIZONTAL, PatternWindow, SquareLabeling, Window, generate_window,
                   transpose, validate_compatibility)
from .errors import DomainError, IndeterminateError, IntegrityError
from .loops import Strand, trace_strands

NO_PATTERNS = "NoPatterns"
RECTANGLES_ONLY = "RectanglesOnly"
ZIGZAGS_ONLY = "ZigZagsOnly"
RECTANGLES_OR_ZIGZAGS = "RectanglesOrZigZags"
AB_CASE = "ABCase"
DEGENERATE = "Degenerate"

RECTANGLE = "Rectangle"
ZIGZAG_POS = "ZigZagPos"
ZIGZAG_NEG = "ZigZagNeg"
ACCORDION_H = "AccordionH"
ACCORDION_V = "AccordionV"
OTHER = "Other"
STRAND_CLASSES = (RECTANGLE, ZIGZAG_POS, ZIGZAG_NEG, ACCORDION_H, ACCORDION_V, OTHER)

# periodic direction words of the infinite strand types
_WORDS = {ZIGZAG_POS: "EN", ZIGZAG_NEG: "ES", ACCORDION_V: "ENWN", ACCORDION_H: "NESE"}
_FLIP = {"E": "W", "W": "E", "N": "S", "S": "N"}


def order_mod(x: int, m: int) -> int:
    """Additive order of ``x`` modulo ``m``."""
    return m // math.gcd(x, m)


# ---------------------------------------------------------------- parameters

@dataclass(frozen=True)
class LongStitchParams:
    a: int
    b: int
    c: int
    d: int
    M: int
    q: int
    r: int
    gab: int
    gcd_cd: int
    case: str

    @property
    def quad(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def generic(self) -> bool:
        return self.a != self.b and self.c != self.d

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "M": self.M,
                "q": self.q, "r": self.r, "gcd_ab": self.gab, "gcd_cd": self.gcd_cd,
                "case": self.case}


def derive_params(a: int, b: int, c: int, d: int) -> LongStitchParams:
    """Case analysis for (a,b,c,d).

    A common factor, or (1,1,1,1), gives ``Degenerate``: such patterns are
    built by :func:`dilate_overlay` from the reduced quadruple.
    """
    for name, v in zip("abcd", (a, b, c, d)):
        if not isinstance(v, int) or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")
    M = a + b
    q, r = order_mod(a, M), order_mod(c, M)
    gab, gcd_cd = math.gcd(a, b), math.gcd(c, d)

    def mk(case):
        return LongStitchParams(a, b, c, d, M, q, r, gab, gcd_cd, case)

    if math.gcd(math.gcd(a, b), math.gcd(c, d)) > 1 or (a, b, c, d) == (1, 1, 1, 1):
        return mk(DEGENERATE)
    if a + b != c + d:
        return mk(NO_PATTERNS)
    if a == b:
        return mk(AB_CASE if r % 2 == 0 else NO_PATTERNS)
    if c == d:
        # a rotation of the a = b case
        return mk(AB_CASE if q % 2 == 0 else NO_PATTERNS)
    both_even = q % 2 == 0 and r % 2 == 0
    if gab != gcd_cd:
        return mk(RECTANGLES_ONLY if both_even else NO_PATTERNS)
    return mk(RECTANGLES_OR_ZIGZAGS if both_even else ZIGZAGS_ONLY)


def parse_quad(text: str) -> tuple[int, int, int, int]:
    try:
        vals = tuple(int(v) for v in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise DomainError(f"expected a,b,c,d, got {text!r}") from exc
    if len(vals) != 4:
        raise DomainError(f"expected four integers a,b,c,d, got {text!r}")
    return vals  # type: ignore[return-value]


def default_window(M: int) -> Window:
    return Window.square(-3 * M, 3 * M)


def periodic_labeling(params: LongStitchParams, eps: Sequence[int], eta: Sequence[int],
                      window: Window | None = None) -> SquareLabeling:
    """Labeling whose labels repeat with periods ``len(eps)`` and ``len(eta)``."""
    window = window or default_window(params.M)
    a, b, c, d = params.quad
    return SquareLabeling.build(a, b, c, d, window,
                                lambda i: eps[i % len(eps)], lambda j: eta[j % len(eta)])


# ---------------------------------------------------------------- counting

@dataclass(frozen=True)
class CountResult:
    case: str
    kind: str  # "zero", "finite" or "continuum"
    value: int | None
    expression: str

    def to_json(self) -> dict:
        return {"case": self.case, "expression": self.expression,
                "value": "continuum" if self.kind == "continuum" else self.value}


def count_patterns(params: LongStitchParams) -> CountResult:
    p = params
    if p.case == DEGENERATE:
        raise DomainError("gcd(a,b,c,d) > 1 or (1,1,1,1): count the reduced quadruple and "
                          "compose with dilate_overlay")
    rect = 2 ** (p.M // p.q + p.M // p.r) * math.factorial(p.M // 2)
    rect_expr = "2^(M/q+M/r)*(M/2)!"
    if p.case == NO_PATTERNS:
        return CountResult(p.case, "zero", 0, "0")
    if p.case == RECTANGLES_ONLY:
        return CountResult(p.case, "finite", rect, rect_expr)
    if p.case == ZIGZAGS_ONLY:
        return CountResult(p.case, "finite", 2 * p.M, "2M")
    if p.case == RECTANGLES_OR_ZIGZAGS:
        return CountResult(p.case, "finite", rect + 2 * p.M, rect_expr + "+2M")
    return CountResult(p.case, "continuum", None, "continuum")


def _torus_tables(a: int, b: int, c: int, d: int):
    """``tab[y][e][x]``: bitmask of column labels consistent at (x,y) when ``eps_y = e``."""
    mh, mv = a + b, c + d
    L = math.lcm(mh, mv)
    tab = []
    for y in range(L):
        rows = []
        for e in range(mh):
            masks = []
            for x in range(L):
                h_end = (x - e) % mh in (0, a)
                m = 0
                for n in range(mv):
                    if ((y - n) % mv in (0, c)) == h_end:
                        m |= 1 << n
                masks.append(m)
            rows.append(masks)
        tab.append(rows)
    return L, tab


def _torus_walk(a, b, c, d, first: range) -> Iterator[tuple[tuple[int, ...], list[int]]]:
    """Depth-first over row labels with column-domain propagation; yields leaves."""
    L, tab = _torus_tables(a, b, c, d)
    full = (1 << (c + d)) - 1
    eps: list[int] = []

    def rec(y, dom):
        if y == L:
            yield tuple(eps), dom
            return
        values = first if y == 0 else range(a + b)
        for e in values:
            masks = tab[y][e]
            nd = [dom[x] & masks[x] for x in range(L)]
            if 0 in nd:
                continue
            eps.append(e)
            yield from rec(y + 1, nd)
            eps.pop()

    yield from rec(0, [full] * L)


def _bits(mask: int) -> list[int]:
    return [n for n in range(mask.bit_length()) if mask >> n & 1]


def _count_task(args) -> int:
    a, b, c, d, e0 = args
    return sum(math.prod(bin(m).count("1") for m in dom)
               for _, dom in _torus_walk(a, b, c, d, range(e0, e0 + 1)))


def _oracle_quad(params: LongStitchParams) -> tuple[int, int, int, int]:
    if params.case == AB_CASE:
        raise DomainError("a = b (or c = d) patterns are not vertically periodic; "
                          "the torus oracle does not apply")
    if params.case == DEGENERATE:
        raise DomainError("reduce by the common factor first")
    return params.quad


def brute_force_count(params: LongStitchParams, jobs: int = 1) -> int:
    """Number of periodic label assignments that are compatible on the torus.

    Rows are assigned in order with ascending values; every column keeps the
    set of labels still consistent and a branch dies when one empties. At a
    leaf the columns are independent, so the leaf contributes the product of
    their domain sizes.
    """
    a, b, c, d = _oracle_quad(params)
    tasks = [(a, b, c, d, e0) for e0 in range(a + b)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return sum(pool.map(_count_task, tasks))
    return sum(_count_task(t) for t in tasks)


def torus_solutions(params: LongStitchParams) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(eps, eta)`` torus solutions in the oracle's deterministic order."""
    a, b, c, d = _oracle_quad(params)
    for eps, dom in _torus_walk(a, b, c, d, range(a + b)):
        for eta in itertools.product(*(_bits(m) for m in dom)):
            yield eps, tuple(eta)


# ---------------------------------------------------------------- strands

def direction_word(strand: Strand) -> str:
    vs = strand.vertices()
    if strand.cyclic:
        vs = vs + vs[:1]
    out = []
    for (x1, y1), (x2, y2) in zip(vs, vs[1:]):
        if y1 == y2:
            out.append("E" if x2 > x1 else "W")
        else:
            out.append("N" if y2 > y1 else "S")
    return "".join(out)


def _matches(word: str, pattern: str) -> bool:
    n = len(pattern)
    return any(all(ch == pattern[(k + ph) % n] for k, ch in enumerate(word)) for ph in range(n))


def classify_strand(strand: Strand, params: LongStitchParams | None = None) -> str:
    """Strand class from the direction word, trying both traversal orientations."""
    if params is not None:
        for s in strand.stitches:
            want = params.a if s.orientation == HORIZONTAL else params.c
            if s.span != want:
                raise DomainError(f"stitch {s} does not fit {params.quad}")
    if strand.cyclic:
        return RECTANGLE if len(strand) == 4 else OTHER
    if len(strand) < 4:
        raise IndeterminateError(f"open strand with {len(strand)} stitches is too short to classify")
    word = direction_word(strand)
    rev = "".join(_FLIP[ch] for ch in reversed(word))
    for tag, pat in _WORDS.items():
        if _matches(word, pat) or _matches(rev, pat):
            return tag
    return OTHER


def strand_classes(pattern: PatternWindow, params: LongStitchParams | None = None
                   ) -> list[tuple[Strand, str | None]]:
    """Every strand with its class, or None when it is too short to tell."""
    out = []
    for s in trace_strands(pattern):
        try:
            out.append((s, classify_strand(s, params)))
        except IndeterminateError:
            out.append((s, None))
    return out


def class_tally(pattern: PatternWindow, params: LongStitchParams | None = None) -> dict[str, int]:
    tally: dict[str, int] = {}
    for _, tag in strand_classes(pattern, params):
        if tag is not None:
            tally[tag] = tally.get(tag, 0) + 1
    return tally


# ---------------------------------------------------------------- rectangles (phi)

def _check_perm(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"sigma must be a permutation of 1..{n}, got {sigma}")
    return sigma


def _check_bits(name: str, bits: Sequence[int], n: int | None) -> tuple[int, ...]:
    bits = tuple(int(v) for v in bits)
    if n is not None and len(bits) != n:
        raise DomainError(f"{name} must have length {n}, got {len(bits)}")
    if any(v not in (0, 1) for v in bits):
        raise DomainError(f"{name} must be a 0/1 sequence")
    return bits


@dataclass(frozen=True)
class RectangleCode:
    u: tuple[int, ...]
    v: tuple[int, ...]
    sigma: tuple[int, ...]

    def to_text(self) -> str:
        return ":".join("".join(map(str, t)) if t is not self.sigma else ",".join(map(str, t))
                        for t in (self.u, self.v, self.sigma))

    @classmethod
    def parse(cls, text: str) -> "RectangleCode":
        try:
            u, v, s = text.split(":")
            return cls(tuple(int(ch) for ch in u), tuple(int(ch) for ch in v),
                       tuple(int(t) for t in s.split(",")))
        except ValueError as exc:
            raise DomainError(f"expected u:v:sigma like 0:1:2,1, got {text!r}") from exc


def tilde(bits: Sequence[int], step: int, M: int) -> tuple[int, ...]:
    """Concatenation of ``i + (bits_i + 2t)*step`` for ``i = 1 .. len(bits)``, reduced mod M."""
    order = order_mod(step, M)
    out = []
    for i, bit in enumerate(bits, start=1):
        out.extend((i + (bit + 2 * t) * step) % M for t in range(order // 2))
    return tuple(out)


def _rect_params(params: LongStitchParams) -> None:
    if params.case not in (RECTANGLES_ONLY, RECTANGLES_OR_ZIGZAGS):
        raise DomainError(f"{params.quad} admits no all-rectangle patterns (case {params.case})")


def _validate_rect_code(code: RectangleCode, params: LongStitchParams) -> RectangleCode:
    M = params.M
    return RectangleCode(_check_bits("u", code.u, M // params.q),
                         _check_bits("v", code.v, M // params.r),
                         _check_perm(code.sigma, M // 2))


def phi_decode(code: RectangleCode, params: LongStitchParams,
               window: Window | None = None) -> SquareLabeling:
    """All-rectangle labeling with southwest corners ``(u~_k, v~_sigma(k)) + M Z^2``."""
    _rect_params(params)
    code = _validate_rect_code(code, params)
    M, a, c = params.M, params.a, params.c
    ut, vt = tilde(code.u, a, M), tilde(code.v, c, M)
    eps: list[int | None] = [None] * M
    eta: list[int | None] = [None] * M
    for k, x in enumerate(ut):
        y = vt[code.sigma[k] - 1]
        for row in (y, (y + c) % M):
            if eps[row] is not None:
                raise IntegrityError(f"latitude {row} claimed twice")
            eps[row] = x
        for col in (x, (x + a) % M):
            if eta[col] is not None:
                raise IntegrityError(f"longitude {col} claimed twice")
            eta[col] = y
    if None in eps or None in eta:
        raise IntegrityError("rectangle corners do not cover every residue")
    return periodic_labeling(params, eps, eta, window)


def _residue_labels(labeling: SquareLabeling, M: int) -> tuple[list[int], list[int]]:
    w = labeling.window
    if w.x1 - w.x0 + 1 < M or w.y1 - w.y0 + 1 < M:
        raise DomainError(f"window must span at least one period ({M})")
    eps: dict[int, int] = {}
    for i in range(w.y0, w.y1 + 1):
        if eps.setdefault(i % M, labeling.eps_at(i)) != labeling.eps_at(i):
            raise DomainError(f"horizontal labels are not {M}-periodic at latitude {i}")
    eta: dict[int, int] = {}
    for j in range(w.x0, w.x1 + 1):
        if eta.setdefault(j % M, labeling.eta_at(j)) != labeling.eta_at(j):
            raise DomainError(f"vertical labels are not {M}-periodic at longitude {j}")
    return [eps[k] for k in range(M)], [eta[k] for k in range(M)]


def phi_encode(pattern: PatternWindow, params: LongStitchParams) -> RectangleCode:
    """Inverse of :func:`phi_decode` on an M-biperiodic all-rectangle window."""
    _rect_params(params)
    for strand, tag in strand_classes(pattern, params):
        if tag is not None and tag != RECTANGLE:
            raise DomainError(f"strand of class {tag} found; not an all-rectangle pattern")
    M, a, c = params.M, params.a, params.c
    eps, eta = _residue_labels(pattern.labeling, M)

    def is_left(x):  # the stitch on longitude x leaves its south end eastward
        return eps[eta[x % M]] == x % M

    def is_bottom(y):  # the stitch on latitude y leaves its west end northward
        return eta[eps[y % M]] == y % M

    u = tuple(0 if is_left(i) else 1 for i in range(1, M // params.q + 1))
    v = tuple(0 if is_bottom(j) else 1 for j in range(1, M // params.r + 1))
    ut, vt = tilde(u, a, M), tilde(v, c, M)
    sigma = []
    for x in ut:
        y = eta[x]
        if eps[y] != x or y not in vt:
            raise DomainError(f"no rectangle has its southwest corner at longitude {x}")
        sigma.append(vt.index(y) + 1)
    return RectangleCode(u, v, tuple(sigma))


def rectangle_codes(params: LongStitchParams) -> Iterator[RectangleCode]:
    _rect_params(params)
    M = params.M
    for u in itertools.product((0, 1), repeat=M // params.q):
        for v in itertools.product((0, 1), repeat=M // params.r):
            for s in itertools.permutations(range(1, M // 2 + 1)):
                yield RectangleCode(u, v, s)


def random_rectangle_code(params: LongStitchParams, rng: random.Random) -> RectangleCode:
    _rect_params(params)
    M = params.M
    sigma = list(range(1, M // 2 + 1))
    rng.shuffle(sigma)
    return RectangleCode(tuple(rng.randrange(2) for _ in range(M // params.q)),
                         tuple(rng.randrange(2) for _ in range(M // params.r)), tuple(sigma))


# ---------------------------------------------------------------- zig-zags

POSITIVE, NEGATIVE = "+", "-"


def zigzag_pattern(params: LongStitchParams, offset: int, sign: str,
                   window: Window | None = None) -> SquareLabeling:
    """The all-zig-zag labeling of the given sign with ``eps_0 = offset``.

    Positive: ``eps_i = i*a/c + t``, ``eta_j = (j - t)*c/a - c``. Negative:
    ``eps_i = -i*a/c + t``, ``eta_j = -(j - t)*c/a``; inverses are mod M.
    """
    if sign not in (POSITIVE, NEGATIVE):
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    if params.case == DEGENERATE or params.quad[0] + params.quad[1] != params.c + params.d:
        raise DomainError(f"{params.quad} admits no zig-zags")
    if params.gab != 1 or params.gcd_cd != 1:
        raise DomainError(f"zig-zags need gcd(a,b) = gcd(c,d) = 1; {params.quad} has "
                          f"{params.gab}, {params.gcd_cd}")
    if not params.generic:
        raise DomainError("zig-zags are impossible when a = b or c = d")
    M, a, c = params.M, params.a, params.c
    ai, ci = pow(a, -1, M), pow(c, -1, M)
    t = offset % M
    s = 1 if sign == POSITIVE else -1
    eps = [(s * i * a * ci + t) % M for i in range(M)]
    if sign == POSITIVE:
        eta = [((j - t) * c * ai - c) % M for j in range(M)]
    else:
        eta = [(-(j - t) * c * ai) % M for j in range(M)]
    return periodic_labeling(params, eps, eta, window)


# ---------------------------------------------------------------- a = b (psi)

@dataclass(frozen=True)
class ABCode:
    """``v`` holds the bits for latitudes ``v_start .. v_start + len(v) - 1``."""

    u: tuple[int, ...]
    v: tuple[int, ...]
    sigma: tuple[int, ...]
    v_start: int = 0

    def v_at(self, i: int) -> int:
        k = i - self.v_start
        if not 0 <= k < len(self.v):
            raise DomainError(f"latitude {i} is outside the v window")
        return self.v[k]


def _psi_checks(a: int, c: int, d: int) -> int:
    M = 2 * a
    params = derive_params(a, a, c, d)
    if params.case == DEGENERATE:
        raise DomainError(f"(a,a,c,d) = {params.quad} is degenerate")
    if c + d != M:
        raise DomainError(f"need c + d = 2a, got {c} + {d} != {M}")
    if params.case != AB_CASE:
        raise DomainError(f"c = {c} has odd order {params.r} mod {M}: no (a,a,c,d) patterns")
    return params.r


def psi_decode(code: ABCode, a: int, c: int, d: int, window: Window) -> SquareLabeling:
    """(a,a,c,d) labeling: ``eta_j = u~_sigma(j mod a)``; each latitude's stitches are
    placed west (``v_i = 0``) or east (``v_i = 1``) within a period."""
    r = _psi_checks(a, c, d)
    M = 2 * a
    u = _check_bits("u", code.u, M // r)
    v = _check_bits("v", code.v, None)
    sigma = _check_perm(code.sigma, a)
    code = ABCode(u, v, sigma, code.v_start)
    for i in (window.y0, window.y1):
        code.v_at(i)
    ut = tilde(u, c, M)
    inv = {s: k for k, s in enumerate(sigma, start=1)}
    where = {}
    for l, y in enumerate(ut, start=1):
        for row in (y, (y + c) % M):
            where[row] = l

    def eta(j):
        return ut[sigma[(j - 1) % a] - 1]

    def eps(i):
        k = inv[where[i % M]]
        return k % a + (a if code.v_at(i) else 0)

    return SquareLabeling.build(a, a, c, d, window, eps, eta)


def ab_labeling(params: LongStitchParams, code: ABCode, window: Window | None = None
                ) -> SquareLabeling:
    """Route an (a,a,c,d) or (a,b,c,c) request through psi (the latter by transposing)."""
    if params.case != AB_CASE:
        raise DomainError(f"{params.quad} is not in the a = b case (case {params.case})")
    window = window or default_window(params.M)
    a, b, c, d = params.quad
    if a == b:
        return psi_decode(code, a, c, d, window)
    return transpose(psi_decode(code, c, a, b, window.transposed()))


def random_ab_code(params: LongStitchParams, window: Window, rng: random.Random) -> ABCode:
    if params.case != AB_CASE:
        raise DomainError(f"{params.quad} is not in the a = b case")
    a, b, c, d = params.quad
    if a == b:
        half, step, lo, hi = a, c, window.y0, window.y1
    else:
        half, step, lo, hi = c, a, window.x0, window.x1
    M = 2 * half
    sigma = list(range(1, half + 1))
    rng.shuffle(sigma)
    return ABCode(tuple(rng.randrange(2) for _ in range(M // order_mod(step, M))),
                  tuple(rng.randrange(2) for _ in range(hi - lo + 1)), tuple(sigma), lo)


# ---------------------------------------------------------------- dilation

def dilate_overlay(patterns: Sequence[SquareLabeling], g: int, sigma: Sequence[int]
                   ) -> SquareLabeling:
    """Dilate each labeling by ``g`` and overlay them, the i-th shifted by ``(i-1, sigma(i)-1)``.

    The output window is the dilation of the common window, so ``g = 1`` with
    the identity returns the input unchanged.
    """
    if not isinstance(g, int) or g < 1:
        raise DomainError(f"g must be a positive integer, got {g!r}")
    if len(patterns) != g:
        raise DomainError(f"need exactly g = {g} patterns, got {len(patterns)}")
    sigma = _check_perm(sigma, g)
    quads = {p.params for p in patterns}
    if len(quads) != 1:
        raise DomainError(f"all patterns must share (a,b,c,d); got {sorted(quads)}")
    (a, b, c, d), = quads
    x0 = max(p.window.x0 for p in patterns)
    x1 = min(p.window.x1 for p in patterns)
    y0 = max(p.window.y0 for p in patterns)
    y1 = min(p.window.y1 for p in patterns)
    out = Window(g * x0, g * x1 + g - 1, g * y0, g * y1 + g - 1)
    if out.is_empty:
        raise DomainError("input windows do not overlap")
    row_owner = {sigma[i] - 1: i for i in range(g)}

    def eps(Y):
        i = row_owner[Y % g]
        return g * patterns[i].eps_at(Y // g) + i

    def eta(X):
        i = X % g
        return g * patterns[i].eta_at(X // g) + sigma[i] - 1

    return SquareLabeling.build(g * a, g * b, g * c, g * d, out, eps, eta)


# Three (3,1,2,2) inputs and the overlay permutation used for the 3-fold dilation demo.
FIG4_PARAMS = (3, 1, 2, 2)
FIG4_SIGMA = (2, 3, 1)
FIG4_CODES = (
    {"u": (0,), "v": "zeros", "sigma": (1, 2)},
    {"u": (1,), "v": "alternate", "sigma": (2, 1)},
    {"u": (0,), "v": "pairs", "sigma": (2, 1)},
)
# Row choices for the mixed rectangle/accordion (2,2,3,1) demo window.
FIG6_V_RULE = "fives"


def v_bits(rule: str, lo: int, hi: int) -> tuple[int, ...]:
    """Named v-sequences: ``zeros``, ``ones``, ``alternate`` (i mod 2), ``pairs``
    ((i div 2) mod 2), ``thirds`` ((i div 3) mod 2) and ``fives`` (1 iff i mod 5 < 2)."""
    rules = {"zeros": lambda i: 0, "ones": lambda i: 1, "alternate": lambda i: i % 2,
             "pairs": lambda i: (i // 2) % 2, "thirds": lambda i: (i // 3) % 2,
             "fives": lambda i: int(i % 5 < 2)}
    if rule not in rules:
        raise DomainError(f"unknown v rule {rule!r}; choose from {sorted(rules)}")
    return tuple(rules[rule](i) for i in range(lo, hi + 1))


def fig4_inputs(window: Window | None = None) -> list[SquareLabeling]:
    params = derive_params(*FIG4_PARAMS)
    window = window or default_window(params.M)
    out = []
    for spec in FIG4_CODES:
        # c = d here, so v indexes longitudes
        v = v_bits(spec["v"], window.x0, window.x1)
        out.append(ab_labeling(params, ABCode(spec["u"], v, spec["sigma"], window.x0), window))
    return out


def fig6_labeling(window: Window | None = None) -> SquareLabeling:
    params = derive_params(2, 2, 3, 1)
    window = window or Window(-8, 20, -8, 20)
    v = v_bits(FIG6_V_RULE, window.y0, window.y1)
    return ab_labeling(params, ABCode((0,), v, (1, 2), window.y0), window)


def is_valid_pattern(labeling: SquareLabeling) -> bool:
    return not validate_compatibility(generate_window(labeling))
