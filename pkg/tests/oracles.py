"""Slow, independent reimplementations used to cross-check the library.

Everything here is written the dumb way on purpose: tuples and Fractions
instead of bitmasks, full enumeration instead of pruning.  If a test
disagrees with the library, the bug hunt starts from whichever side is
simpler, which should be this one.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def naive_link_edges(
    k: int, n: int, colors: dict[tuple[int, ...], tuple[int, int]]
) -> set[tuple[int, ...]]:
    """Recount link membership straight from the rule, no rank tricks.

    `colors` maps each sorted (k-3)-tuple to a position pair.  A (k-1)-tuple
    f is kept iff for every two positions i < j (1-based) the color of f
    minus those two entries is exactly (i, j).
    """
    kept = set()
    for f in combinations(range(1, n + 1), k - 1):
        ok = True
        for i in range(1, k):
            for j in range(i + 1, k):
                rest = tuple(v for pos, v in enumerate(f, start=1) if pos not in (i, j))
                if colors[rest] != (i, j):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            kept.add(f)
    return kept


def naive_parity_edges(link_edges: set[tuple[int, ...]], n: int, k: int) -> set[tuple[int, ...]]:
    """k-sets keeping an odd number of link edges inside them."""
    out = set()
    for s in combinations(range(1, n + 1), k):
        inside = sum(1 for f in link_edges if set(f) <= set(s))
        if inside % 2 == 1:
            out.add(s)
    return out


def naive_alpha(n: int, edges: list[tuple[int, ...]]) -> int:
    """Largest subset containing no edge, by brute enumeration from the top."""
    edge_sets = [set(e) for e in edges]
    for size in range(n, -1, -1):
        for cand in combinations(range(1, n + 1), size):
            cs = set(cand)
            if not any(e <= cs for e in edge_sets):
                return size
    return 0


def naive_induced_count(edges: list[tuple[int, ...]], subset: tuple[int, ...]) -> int:
    s = set(subset)
    return sum(1 for e in edges if set(e) <= s)


# ── planar geometry, Fraction arithmetic ─────────────────────────────────────


def cross(o, a, b) -> Fraction:
    return Fraction(a[0] - o[0]) * (b[1] - o[1]) - Fraction(a[1] - o[1]) * (b[0] - o[0])


def hull_convex_position_2d(points: list[tuple]) -> bool:
    """All input points lie on their own convex hull (monotone chain).

    Assumes no two points coincide; collinear triples put the middle
    point off the hull, which is what we want.
    """
    pts = sorted(points)
    if len(pts) <= 2:
        return True

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = set(lower[:-1]) | set(upper[:-1])
    return len(hull) == len(pts)


def point_in_triangle_2d(q, triangle) -> bool:
    """Strict interior test; assumes no collinear triples among the inputs."""
    a, b, c = triangle
    signs = {s > 0 for s in (cross(a, b, q), cross(b, c, q), cross(c, a, q))}
    return len(signs) == 1


def det_fraction(rows: list[list]) -> Fraction:
    """Gaussian elimination over Fraction, for checking the integer path."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return out


def general_position_2d(points: list[tuple]) -> bool:
    """No collinear triple, by Fraction cross products."""
    for a, b, c in combinations(points, 3):
        if cross(a, b, c) == 0:
            return False
    return True
