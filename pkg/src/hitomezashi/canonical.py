"""Named extremal loops (rug, cross, combs, wands) built from grid labels.

Each constructor returns a (1,1,1,1) labeling on ``[-1, w+1] x [-1, h+1]``;
the loop itself is recovered by tracing, so the labels stay the single
source of truth. :func:`construct_loop` does the tracing step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import SquareLabeling, Window, generate_window, ordinary_labeling, transpose
from .errors import DomainError, IntegrityError
from .loops import CanonicalLoop, Loop, LoopMetrics, canonicalize, loop_metrics, loops_in

RUG, CROSS, HCOMB, VCOMB, WAND = "Rug", "Cross", "HComb", "VComb", "Wand"
HORIZONTAL_AXIS, VERTICAL_AXIS = "horizontal", "vertical"

# Free wand bits for a width-5, height-15 wand (six teeth slots).
WAND_5x15_BITS = (0, 1, 0, 1, 1, 0)


def _odd(n: int) -> bool:
    return isinstance(n, int) and n >= 1 and n % 2 == 1


def _box(w: int, h: int) -> Window:
    return Window(-1, w + 1, -1, h + 1)


@dataclass(frozen=True)
class CanonicalKind:
    tag: str
    w: int
    h: int
    alpha: int | None = None
    beta: int | None = None
    teeth: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "teeth", tuple(int(t) for t in self.teeth))
        _validate_kind(self)

    def labeling(self) -> SquareLabeling:
        if self.tag == RUG:
            return make_rug(self.w, self.h)
        if self.tag == CROSS:
            return make_cross(self.w, self.h, self.alpha, self.beta)
        if self.tag == HCOMB:
            return make_comb(HORIZONTAL_AXIS, self.w, self.h, self.alpha)
        if self.tag == VCOMB:
            return make_comb(VERTICAL_AXIS, self.w, self.h, self.beta)
        if self.w == 5:
            return make_wand(HORIZONTAL_AXIS, self.h, self.teeth)
        return make_wand(VERTICAL_AXIS, self.w, self.teeth)

    def preset(self) -> str:
        if self.tag == RUG:
            return f"rug:{self.w}x{self.h}"
        if self.tag == CROSS:
            return f"cross:{self.w}x{self.h}:{self.alpha}:{self.beta}"
        if self.tag == HCOMB:
            return f"hcomb:{self.w}x{self.h}:{self.alpha}"
        if self.tag == VCOMB:
            return f"vcomb:{self.w}x{self.h}:{self.beta}"
        bits = "".join(map(str, self.teeth))
        if self.w == 5:
            return f"wand:W5:{self.h}:{bits}"
        return f"wand:H5:{self.w}:{bits}"


def _validate_kind(k: CanonicalKind) -> None:
    w, h = k.w, k.h
    if not (_odd(w) and _odd(h)):
        raise DomainError(f"{k.tag} needs odd positive w,h; got {w}x{h}")
    if k.tag == RUG:
        if (w == 1) != (h == 1):
            raise DomainError(f"no hitomezashi loop has dimensions {w}x{h}")
    elif k.tag == CROSS:
        if w < 5 or h < 5:
            raise DomainError("cross needs w,h >= 5")
        _check_pos("alpha", k.alpha, w)
        _check_pos("beta", k.beta, h)
    elif k.tag == HCOMB:
        if w < 5 or h < 5 or h % 4 != 1:
            raise DomainError(f"horizontal comb needs w,h >= 5 and h = 1 mod 4; got {w}x{h}")
        _check_pos("alpha", k.alpha, w)
    elif k.tag == VCOMB:
        if w < 5 or h < 5 or w % 4 != 1:
            raise DomainError(f"vertical comb needs w,h >= 5 and w = 1 mod 4; got {w}x{h}")
        _check_pos("beta", k.beta, h)
    elif k.tag == WAND:
        if min(w, h) != 5:
            raise DomainError("wand needs min(w,h) = 5")
        long_side = h if w == 5 else w
        need = (long_side - 3) // 2
        if len(k.teeth) != need or any(t not in (0, 1) for t in k.teeth):
            raise DomainError(f"wand of length {long_side} needs {need} teeth bits")
        if 0 not in k.teeth:
            raise DomainError("wand needs at least one zero teeth bit")
    else:
        raise DomainError(f"unknown kind {k.tag!r}")


def _check_pos(name: str, v, side: int) -> None:
    if not isinstance(v, int) or v % 2 == 0 or not 3 <= v <= side - 2:
        raise DomainError(f"{name} must be odd in [3, {side - 2}], got {v}")


def make_rug(w: int, h: int) -> SquareLabeling:
    CanonicalKind(RUG, w, h)
    if w == 1:
        # the unit square; the boundary-label recipe degenerates here
        return ordinary_labeling(_box(1, 1), 0, 0)
    ones_e = {0, h}
    ones_n = {0, w}
    return ordinary_labeling(_box(w, h),
                             lambda i: 1 if i in ones_e else 0,
                             lambda j: 1 if j in ones_n else 0)


def make_cross(w: int, h: int, alpha: int, beta: int) -> SquareLabeling:
    CanonicalKind(CROSS, w, h, alpha, beta)
    zeros_e = {0, h, beta - 1, beta}
    zeros_n = {0, w, alpha - 1, alpha}
    return ordinary_labeling(_box(w, h),
                             lambda i: 0 if i in zeros_e else 1,
                             lambda j: 0 if j in zeros_n else 1)


def _hcomb(w: int, h: int, alpha: int) -> SquareLabeling:
    def eps(i):
        if i in (0, h):
            return 0
        return 0 if i % 4 in (2, 3) else 1

    zeros_n = {0, alpha - 1, alpha, w}
    return ordinary_labeling(_box(w, h), eps, lambda j: 0 if j in zeros_n else 1)


def make_comb(axis: str, w: int, h: int, pos: int) -> SquareLabeling:
    """Horizontal comb with tooth column ``pos``, or its transpose."""
    if axis == HORIZONTAL_AXIS:
        CanonicalKind(HCOMB, w, h, alpha=pos)
        return _hcomb(w, h, pos)
    if axis == VERTICAL_AXIS:
        CanonicalKind(VCOMB, w, h, beta=pos)
        return transpose(_hcomb(h, w, pos))
    raise DomainError(f"axis must be 'horizontal' or 'vertical', got {axis!r}")


def _wand_w5(h: int, teeth) -> SquareLabeling:
    eps = {0: 0, h: 0, 1: 1, h - 1: 1}
    for k, bit in enumerate(teeth, start=1):
        eps[2 * k] = eps[2 * k + 1] = bit
    eta = {0: 0, 1: 1, 2: 0, 3: 0, 4: 1, 5: 0}
    return ordinary_labeling(_box(5, h), lambda i: eps.get(i, 0), lambda j: eta.get(j, 0))


def make_wand(axis: str, length: int, teeth) -> SquareLabeling:
    """Wand of width 5 (``axis='horizontal'``) and height ``length``, or the rotated one.

    ``teeth`` are the free bits ``eps[2i] = eps[2i+1]`` for ``i = 1 .. (length-3)/2``.
    """
    teeth = tuple(teeth)
    if axis == HORIZONTAL_AXIS:
        CanonicalKind(WAND, 5, length, teeth=teeth)
        return _wand_w5(length, teeth)
    if axis == VERTICAL_AXIS:
        CanonicalKind(WAND, length, 5, teeth=teeth)
        # the width-5 wand is symmetric under x -> 5 - x, so a transpose is a rotation
        return transpose(_wand_w5(length, teeth))
    raise DomainError(f"axis must be 'horizontal' or 'vertical', got {axis!r}")


def construct_loop(labeling: SquareLabeling, w: int, h: int) -> Loop:
    """The unique loop of exact dimensions ``w x h`` in a constructor's window."""
    found = [lp for lp in loops_in(generate_window(labeling))
             if (m := loop_metrics(lp)).width == w and m.height == h]
    if len(found) != 1:
        raise IntegrityError(f"expected one {w}x{h} loop, traced {len(found)}")
    return found[0]


def kind_loop(kind: CanonicalKind) -> Loop:
    return construct_loop(kind.labeling(), kind.w, kind.h)


@lru_cache(maxsize=None)
def kind_canonical(kind: CanonicalKind) -> CanonicalLoop:
    return canonicalize(kind_loop(kind))


def closed_form_metrics(kind: CanonicalKind) -> LoopMetrics:
    """Length and area of a named loop from closed-form expressions.

    Rug length/area, cross area, comb length and wand length are the known
    extremal values; cross length, comb area and wand area were derived here
    and are checked against traced loops.
    """
    w, h = kind.w, kind.h
    if kind.tag == RUG:
        if w == 1:
            return LoopMetrics(1, 1, 4, Fraction(1))
        return LoopMetrics(w, h, 4 * (w + h - 3), Fraction((w - 1) * (h - 1) + 1))
    if kind.tag == CROSS:
        return LoopMetrics(w, h, 4 * (w + h - 5), Fraction(2 * (w + h) - 7))
    if kind.tag == HCOMB:
        return LoopMetrics(w, h, (w - 1) * (h - 1) + 4, Fraction((w - 1) * (h - 1) // 2 + h))
    if kind.tag == VCOMB:
        return LoopMetrics(w, h, (w - 1) * (h - 1) + 4, Fraction((w - 1) * (h - 1) // 2 + w))
    long_side = h if w == 5 else w
    # every raised tooth pair (bit 1) removes a 2x2 block from the full width-5 wand
    area = 4 * long_side - 7 - 4 * sum(kind.teeth)
    return LoopMetrics(w, h, 4 * long_side, Fraction(area))


def parse_preset(spec: str) -> CanonicalKind:
    """Parse ``rug:WxH``, ``cross:WxH:A:B``, ``hcomb:WxH:A``, ``vcomb:WxH:B``,
    ``wand:W5:H:bits`` or ``wand:H5:W:bits``."""
    parts = spec.strip().split(":")
    tag = parts[0].lower()
    try:
        if tag == "wand":
            axis, length, bits = parts[1].upper(), int(parts[2]), parts[3]
            teeth = tuple(int(ch) for ch in bits)
            if axis == "W5":
                return CanonicalKind(WAND, 5, length, teeth=teeth)
            if axis == "H5":
                return CanonicalKind(WAND, length, 5, teeth=teeth)
            raise DomainError(f"wand axis must be W5 or H5, got {parts[1]}")
        w, h = (int(v) for v in parts[1].lower().split("x"))
        if tag == "rug" and len(parts) == 2:
            return CanonicalKind(RUG, w, h)
        if tag == "cross" and len(parts) == 4:
            return CanonicalKind(CROSS, w, h, int(parts[2]), int(parts[3]))
        if tag == "hcomb" and len(parts) == 3:
            return CanonicalKind(HCOMB, w, h, alpha=int(parts[2]))
        if tag == "vcomb" and len(parts) == 3:
            return CanonicalKind(VCOMB, w, h, beta=int(parts[2]))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed preset {spec!r}") from exc
    raise DomainError(f"malformed preset {spec!r}")


def family(w: int, h: int) -> list[CanonicalKind]:
    """Every named loop of dimensions ``w x h``."""
    out: list[CanonicalKind] = []
    if not (_odd(w) and _odd(h)):
        return out
    if (w == 1) == (h == 1):
        out.append(CanonicalKind(RUG, w, h))
    if w >= 5 and h >= 5:
        for al in range(3, w - 1, 2):
            for be in range(3, h - 1, 2):
                out.append(CanonicalKind(CROSS, w, h, al, be))
        if h % 4 == 1:
            out.extend(CanonicalKind(HCOMB, w, h, alpha=al) for al in range(3, w - 1, 2))
        if w % 4 == 1:
            out.extend(CanonicalKind(VCOMB, w, h, beta=be) for be in range(3, h - 1, 2))
    if min(w, h) == 5:
        long_side = max(w, h) if w != h else h
        n = (long_side - 3) // 2
        axes = [(5, long_side)] if w == 5 else []
        if h == 5:
            axes.append((w, 5))
        for ww, hh in dict.fromkeys(axes):
            for code in range(2 ** n):
                teeth = tuple((code >> k) & 1 for k in range(n))
                if 0 in teeth:
                    out.append(CanonicalKind(WAND, ww, hh, teeth=teeth))
    return out
