"""Inner loop of the exhaustive loop census.

A label code packs ``eps_0 .. eps_h`` into bits ``0 .. h`` and
``eta_0 .. eta_w`` into bits ``h+1 .. h+w+1``. For each code we look for the
(unique, if any) loop whose vertices fill exactly ``[0,w] x [0,h]``: such a
loop has a west-extremal stitch on ``x = 0`` whose two endpoints both send
their horizontal stitch east, so only those stitches are tried as starts.

Numba is used when importable; the pure-Python path gives identical results.
"""

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _has_loop(code, w, h):
    eps = code & ((1 << (h + 1)) - 1)
    eta = code >> (h + 1)
    eta0 = eta & 1
    limit = 2 * (w + 1) * (h + 1)
    for k in range(h):
        if (k & 1) != eta0:
            continue
        if (eps >> k) & 1 or (eps >> (k + 1)) & 1:
            continue
        x = 0
        y = k
        xmax = 0
        ymin = k
        ymax = k
        steps = 0
        ok = True
        while True:
            # horizontal step: east iff x = eps_y (mod 2)
            if ((x - ((eps >> y) & 1)) & 1) == 0:
                x += 1
            else:
                x -= 1
            if x < 0 or x > w:
                ok = False
                break
            # vertical step: north iff y = eta_x (mod 2)
            if ((y - ((eta >> x) & 1)) & 1) == 0:
                y += 1
            else:
                y -= 1
            if y < 0 or y > h:
                ok = False
                break
            steps += 2
            if x > xmax:
                xmax = x
            if y < ymin:
                ymin = y
            if y > ymax:
                ymax = y
            if x == 0 and y == k:
                break
            if steps > limit:
                ok = False
                break
        if ok and xmax == w and ymin == 0 and ymax == h:
            return True
    return False


def _scan_range(w, h, start, stop, gray, out):
    n = 0
    for idx in range(start, stop):
        code = idx ^ (idx >> 1) if gray else idx
        if _has_loop(code, w, h):
            out[n] = code
            n += 1
    return n


if HAVE_NUMBA:
    _has_loop_jit = njit(cache=True)(_has_loop)

    @njit(cache=True)
    def _scan_range_jit(w, h, start, stop, gray, out):
        n = 0
        for idx in range(start, stop):
            code = idx ^ (idx >> 1) if gray else idx
            if _has_loop_jit(code, w, h):
                out[n] = code
                n += 1
        return n


def scan_codes(w: int, h: int, start: int, stop: int, gray: bool = False,
               use_jit: bool = True) -> list[int]:
    """Codes in ``[start, stop)`` (after Gray mapping, if requested) carrying a w x h loop."""
    chunk = 1 << 16
    found: list[int] = []
    jit = use_jit and HAVE_NUMBA
    out = np.zeros(chunk, dtype=np.int64) if jit else [0] * chunk
    scan = _scan_range_jit if jit else _scan_range
    for lo in range(start, stop, chunk):
        hi = min(stop, lo + chunk)
        n = scan(w, h, lo, hi, gray, out)
        found.extend(int(v) for v in out[:n])
    return found


def trace_code(code: int, w: int, h: int) -> list[tuple[int, int]] | None:
    """Vertices of the w x h loop carried by ``code`` (pure Python, for witnesses)."""
    eps = code & ((1 << (h + 1)) - 1)
    eta = code >> (h + 1)
    for k in range(h):
        if (k & 1) != (eta & 1) or (eps >> k) & 1 or (eps >> (k + 1)) & 1:
            continue
        x, y = 0, k
        pts = [(x, y)]
        ok = True
        while True:
            x += 1 if ((x - ((eps >> y) & 1)) & 1) == 0 else -1
            if not 0 <= x <= w:
                ok = False
                break
            pts.append((x, y))
            y += 1 if ((y - ((eta >> x) & 1)) & 1) == 0 else -1
            if not 0 <= y <= h:
                ok = False
                break
            if (x, y) == (0, k):
                break
            pts.append((x, y))
            if len(pts) > 2 * (w + 1) * (h + 1):
                ok = False
                break
        if ok:
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            if max(xs) == w and min(ys) == 0 and max(ys) == h:
                return pts
    return None
