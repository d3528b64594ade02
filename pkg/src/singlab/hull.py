"""Exact polyhedral primitives: double description, ranks, determinants,
pulling triangulations.

Everything here works on integer or Fraction data and never rounds.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DegenerateError
from .rational import primitive


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank; integer input is eliminated fraction-free."""
    if not rows:
        return 0
    if all(isinstance(v, int) for r in rows for v in r):
        return _rank_int([list(r) for r in rows])
    M = [[Fraction(v) for v in r] for r in rows]
    ncols = len(M[0])
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        p = M[rk]
        for i in range(rk + 1, len(M)):
            f = M[i][col] / p[col]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], p)]
        rk += 1
        if rk == len(M):
            break
    return rk


def _rank_int(M: list[list[int]]) -> int:
    ncols = len(M[0])
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        p = M[rk]
        a = p[col]
        for i in range(rk + 1, len(M)):
            b = M[i][col]
            if b:
                M[i] = primitive([a * x - b * y for x, y in zip(M[i], p)])
        rk += 1
        if rk == len(M):
            break
    return rk


def det(rows: Sequence[Sequence]) -> Fraction:
    M = [[Fraction(v) for v in r] for r in rows]
    n = len(M)
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            sign = -sign
        p = M[col]
        out *= p[col]
        for i in range(col + 1, n):
            f = M[i][col] / p[col]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], p)]
    return out * sign


def _basis_rows(rows: list[list[int]]) -> list[int]:
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == len(rows[0]):
                break
    return chosen


def _inverse_columns(A: list[list[int]]) -> list[list[Fraction]]:
    d = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(A)]
    for col in range(d):
        piv = next(i for i in range(col, d) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for i in range(d):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    inv = [row[d:] for row in M]
    return [[inv[i][j] for i in range(d)] for j in range(d)]


def _to_primitive_int(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in vec:
        den = den * v.denominator // _gcd(den, v.denominator)
    return tuple(primitive([int(v * den) for v in vec]))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def cone_dual_rays(rows: Sequence[Sequence[int]]) -> list[tuple[tuple[int, ...], frozenset]]:
    """Extreme rays of ``{y : r . y >= 0 for every row r}`` by double description.

    The rows must span the whole space (so the cone is pointed).  Returns each
    ray as a primitive integer vector together with the set of row indices on
    which it vanishes.
    """
    rows = [list(map(int, r)) for r in rows]
    d = len(rows[0])
    basis = _basis_rows(rows)
    if len(basis) < d:
        raise DegenerateError("constraint rows do not span the ambient space")
    rays = []
    for i, col in enumerate(_inverse_columns([rows[b] for b in basis])):
        zeros = frozenset(b for k, b in enumerate(basis) if k != i)
        rays.append((_to_primitive_int(col), zeros))

    for k, row in enumerate(rows):
        if k in basis:
            continue
        vals = [sum(a * b for a, b in zip(row, r)) for r, _ in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            rays = [(r, z | {k}) if vals[i] == 0 else (r, z) for i, (r, z) in enumerate(rays)]
            continue
        new = []
        for p in pos:
            zp = rays[p][1]
            for q in neg:
                common = zp & rays[q][1]
                if len(common) < d - 2:
                    continue
                if any(common <= rays[o][1] for o in range(len(rays)) if o != p and o != q):
                    continue
                vp, vq = vals[p], vals[q]
                vec = [vp * b - vq * a for a, b in zip(rays[p][0], rays[q][0])]
                new.append((tuple(primitive(vec)), common | {k}))
        rays = [rays[i] for i in pos] + [(rays[i][0], rays[i][1] | {k}) for i in zer] + new
    return rays


def pulling_triangulation(verts: frozenset, dim: int, facet_sets: Sequence[frozenset]) -> list[tuple]:
    """Triangulate the face with vertex set ``verts`` and dimension ``dim``.

    ``facet_sets`` lists the vertex sets of all facets of an ambient polyhedron
    that contains the face; the faces of the face are then its maximal proper
    intersections with those sets.
    """
    facet_sets = tuple(facet_sets)

    @lru_cache(maxsize=None)
    def tri(vs: frozenset, d: int) -> tuple:
        if len(vs) == d + 1:
            return (tuple(sorted(vs)),)
        v0 = min(vs)
        cands = {vs & F for F in facet_sets}
        cands.discard(vs)
        cands.discard(frozenset())
        maximal = [c for c in cands if not any(c < o for o in cands)]
        out = []
        for face in sorted(maximal, key=sorted):
            if v0 in face:
                continue
            for s in tri(face, d - 1):
                out.append(s + (v0,))
        return tuple(out)

    return list(tri(frozenset(verts), dim))


def polytope_hull(points: Sequence[Sequence[Fraction]]):
    """Facets and vertices of ``conv(points)``.

    Returns ``(vertices, facets, incidence)`` where facets are pairs
    ``(w, h)`` meaning ``<w, x> >= h`` and ``incidence[i]`` is the set of
    vertex indices tight on facet ``i``.
    """
    pts = sorted(set(tuple(Fraction(v) for v in p) for p in points))
    n = len(pts[0])
    den = 1
    for p in pts:
        for v in p:
            den = den * v.denominator // _gcd(den, v.denominator)
    rows = [[int(v * den) for v in p] + [1] for p in pts]
    try:
        duals = cone_dual_rays(rows)
    except DegenerateError:
        raise DegenerateError("polytope is lower-dimensional") from None
    facets = []
    for y, _ in duals:
        w = primitive(list(y[:n]))
        g = _gcd_list(y[:n])
        facets.append((tuple(w), Fraction(-y[n], den * g)))
    verts = [p for p in pts
             if rank([w for w, h in facets if sum(a * b for a, b in zip(w, p)) == h]) == n]
    facets.sort()
    inc = [frozenset(i for i, v in enumerate(verts) if sum(a * b for a, b in zip(w, v)) == h)
           for w, h in facets]
    return verts, facets, inc


def _gcd_list(vals) -> int:
    g = 0
    for v in vals:
        g = _gcd(g, abs(v))
    return g or 1


def polytope_volume(points: Sequence[Sequence], allow_degenerate: bool = False) -> Fraction:
    """Exact volume of ``conv(points)`` via a pulling triangulation.

    Raises DegenerateError for lower-dimensional input unless
    ``allow_degenerate`` is set, in which case 0 is returned.
    """
    pts = [tuple(Fraction(v) for v in p) for p in points]
    n = len(pts[0])
    try:
        verts, facets, inc = polytope_hull(pts)
    except DegenerateError:
        if allow_degenerate:
            return Fraction(0)
        raise
    total = Fraction(0)
    for simplex in pulling_triangulation(frozenset(range(len(verts))), n, inc):
        base = verts[simplex[0]]
        total += abs(det([[a - b for a, b in zip(verts[i], base)] for i in simplex[1:]]))
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return total / fact
