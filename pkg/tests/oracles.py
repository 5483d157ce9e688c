"""Independent reference implementations used by the tests.

Nothing here imports the package: each oracle recomputes a quantity from
first principles so agreement is meaningful.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


# ---------------------------------------------------------------- ordinary patterns

def ordinary_edges(eps, eta, x0=0, y0=0):
    """Unit stitches of a (1,1,1,1) window with labels indexed from (x0, y0)."""
    nx, ny = len(eta), len(eps)
    edges = set()
    for j in range(ny):
        y = y0 + j
        for i in range(nx - 1):
            x = x0 + i
            if (x - eps[j]) % 2 == 0:
                edges.add(((x, y), (x + 1, y)))
    for i in range(nx):
        x = x0 + i
        for j in range(ny - 1):
            y = y0 + j
            if (y - eta[i]) % 2 == 0:
                edges.add(((x, y), (x, y + 1)))
    return edges


def cycles(edges):
    """Vertex sets of the components of ``edges`` in which every vertex has degree 2."""
    adj = {}
    for p, q in edges:
        adj.setdefault(p, []).append(q)
        adj.setdefault(q, []).append(p)
    seen, out = set(), []
    for s in sorted(adj):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        if all(len(adj[u]) == 2 for u in comp):
            out.append(frozenset(comp))
    return out


def census(w, h):
    """Loops with vertex bounding box exactly [0,w] x [0,h], by brute force over labels.

    Returns a set of frozen vertex sets (a loop is determined by its vertices).
    """
    found = set()
    for eps in product((0, 1), repeat=h + 1):
        for eta in product((0, 1), repeat=w + 1):
            for comp in cycles(ordinary_edges(eps, eta)):
                xs = {p[0] for p in comp}
                ys = {p[1] for p in comp}
                if min(xs) == 0 and max(xs) == w and min(ys) == 0 and max(ys) == h:
                    found.add(comp)
    return found


def flood_area(vertices):
    """Unit cells enclosed by an axis-parallel lattice polygon, counted by flood fill."""
    n = len(vertices)
    xs = [p[0] for p in vertices]
    ys = [p[1] for p in vertices]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    walls = set()
    for k in range(n):
        (ax, ay), (bx, by) = vertices[k], vertices[(k + 1) % n]
        if ay == by:
            for x in range(min(ax, bx), max(ax, bx)):
                walls.add(("h", x, ay))  # edge below cell (x, ay)
        else:
            for y in range(min(ay, by), max(ay, by)):
                walls.add(("v", ax, y))  # edge left of cell (ax, y)
    start = (x0, y0)
    outside, stack = {start}, [start]
    while stack:
        cx, cy = stack.pop()
        for nx, ny, wall in ((cx + 1, cy, ("v", cx + 1, cy)), (cx - 1, cy, ("v", cx, cy)),
                             (cx, cy + 1, ("h", cx, cy + 1)), (cx, cy - 1, ("h", cx, cy))):
            if not (x0 <= nx < x1 and y0 <= ny < y1) or wall in walls or (nx, ny) in outside:
                continue
            outside.add((nx, ny))
            stack.append((nx, ny))
    return (x1 - x0) * (y1 - y0) - len(outside)


# ---------------------------------------------------------------- Dyck words

def dyck_words(n):
    """All Dyck words of semilength n over U/D, generated recursively."""
    if n == 0:
        return [""]
    out = []
    for k in range(n):
        for left in dyck_words(k):
            for right in dyck_words(n - 1 - k):
                out.append("U" + left + "D" + right)
    return sorted(out)


def height(word):
    d = m = 0
    for ch in word:
        d += 1 if ch == "U" else -1
        m = max(m, d)
    return m


@lru_cache(maxsize=None)
def paths_below(n2, k):
    """Walks of n2 up/down steps from depth 0 back to 0 that stay within [0, k]."""
    row = [1] + [0] * k
    for _ in range(n2):
        nxt = [0] * (k + 1)
        for d, c in enumerate(row):
            if c:
                if d + 1 <= k:
                    nxt[d + 1] += c
                if d - 1 >= 0:
                    nxt[d - 1] += c
        row = nxt
    return row[0]


def dyck_height_exact(n, k):
    """Dyck paths of semilength n whose maximum height is exactly k."""
    if k == 0:
        return int(n == 0)
    return paths_below(2 * n, k) - paths_below(2 * n, k - 1)


def catalan(n):
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


# ---------------------------------------------------------------- long stitches on the torus

def torus_count(a, b, c, d):
    """Periodic label assignments (eps, eta) in Z_M^M x Z_M^M with matching endpoints."""
    M = a + b
    assert c + d == M
    h_end = [[(x - e) % M in (0, a) for x in range(M)] for e in range(M)]
    v_end = [[(y - t) % M in (0, c) for y in range(M)] for t in range(M)]
    total = 0
    for eta in product(range(M), repeat=M):
        # column x requires row y's horizontal status at x to equal v_end[eta[x]][y]
        need = [tuple(v_end[eta[x]][y] for x in range(M)) for y in range(M)]
        ways = 1
        for y in range(M):
            ways *= sum(1 for e in range(M) if tuple(h_end[e]) == need[y])
            if not ways:
                break
        total += ways
    return total


def endpoint_mismatches(stitches, window, margin):
    """Interior points that are endpoints of a horizontal stitch but not a vertical one, or vice versa."""
    (x0, x1, y0, y1) = window
    hor, ver = set(), set()
    for (p, q) in stitches:
        (hor if p[1] == q[1] else ver).update((tuple(p), tuple(q)))
    bad = []
    for x in range(x0 + margin, x1 - margin + 1):
        for y in range(y0 + margin, y1 - margin + 1):
            if ((x, y) in hor) != ((x, y) in ver):
                bad.append((x, y))
    return bad
