"""Indicator diagrams (Newton polyhedra) ``conv(G) + R^n_+``.

A diagram is stored by its minimal generator set; the facet description is
computed lazily by double description on the homogenized cone and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
import math
import os
from typing import Iterable, Sequence

from . import lp
from .errors import CapabilityError, ValidationError
from .expr import Atom, Const, Max, Scale, SingularityExpr, Sum
from .hull import cone_dual_rays, rank
from .rational import as_vector, fmt_rational, parse_rational, primitive

DEFAULT_MAX_DIM = 6

Point = tuple[Fraction, ...]


def max_hull_dim() -> int:
    """Dimension cap for exact hulls; ``SINGLAB_MAX_DIM`` overrides the default."""
    env = os.environ.get("SINGLAB_MAX_DIM")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"SINGLAB_MAX_DIM must be an integer, got {env!r}") from None
    return DEFAULT_MAX_DIM


@dataclass(frozen=True)
class PolyhedronHull:
    vertices: tuple[Point, ...]
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]
    # vertex indices tight on each facet, parallel to ``facets``
    incidence: tuple[frozenset, ...]

    def to_json(self) -> dict:
        return {
            "vertices": [[fmt_rational(v) for v in p] for p in self.vertices],
            "facets": [{"normal": list(w), "offset": fmt_rational(h)} for w, h in self.facets],
        }


def _dominates(a: Sequence, b: Sequence) -> bool:
    return all(x <= y for x, y in zip(a, b))


def in_upper_hull(points: Sequence[Point], p: Point) -> bool:
    """Is ``p`` in ``conv(points) + R^n_+``?  Exact LP feasibility."""
    if not points:
        return False
    if any(_dominates(q, p) for q in points):
        return True
    n = len(p)
    A_ub = [[q[j] for q in points] for j in range(n)]
    return lp.feasible(A_ub, list(p), [[1] * len(points)], [1], nvar=len(points))


def prune(points: Iterable[Sequence], method: str = "auto") -> list[Point]:
    """Drop every point lying in conv(others) + R^n_+; result sorted.

    ``method="lp"`` decides each point by exact LP feasibility; ``"hull"``
    runs one double description on all points and keeps those whose tight
    facets have full rank.  Both are exact; ``"auto"`` picks the hull for
    larger inputs.
    """
    pts = sorted(set(tuple(Fraction(v) for v in p) for p in points))
    # componentwise domination first, on integer coordinates; it is cheap and
    # removes most candidates
    den = 1
    for p in pts:
        for v in p:
            den = math.lcm(den, v.denominator)
    ints = [tuple(int(v * den) for v in p) for p in pts]
    pts = [p for p, a in zip(pts, ints)
           if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in ints)]
    if len(pts) <= 2:
        return pts
    if method == "auto":
        method = "hull" if len(pts) > 4 and len(pts[0]) <= max_hull_dim() else "lp"
    if method == "hull":
        return sorted(_hull_vertices(pts))
    kept = list(pts)
    for p in pts:
        others = [q for q in kept if q != p]
        if others and in_upper_hull(others, p):
            kept = others
    return sorted(kept)


def _hull_data(pts: Sequence[Point], n: int):
    """Facets of ``conv(pts) + R^n_+`` and, per point, the indices of tight facets."""
    den = 1
    for g in pts:
        for v in g:
            den = math.lcm(den, v.denominator)
    rows = [[int(v * den) for v in g] + [1] for g in pts]
    rows += [[int(i == j) for i in range(n)] + [0] for j in range(n)]
    raw = []
    for y, zeros in cone_dual_rays(rows):
        w = y[:n]
        if not any(w):
            continue  # the face at infinity
        g = math.gcd(*w)
        raw.append((tuple(primitive(list(w))), Fraction(-y[n], den * g), zeros))
    raw.sort(key=lambda f: (f[0], f[1]))
    facets = [(w, h) for w, h, _ in raw]
    tight = [[k for k, (_, _, z) in enumerate(raw) if i in z] for i in range(len(pts))]
    return facets, tight


def _hull_vertices(pts: Sequence[Point]) -> list[Point]:
    n = len(pts[0])
    facets, tight = _hull_data(pts, n)
    return [p for p, t in zip(pts, tight) if len(t) >= n and rank([list(facets[k][0]) for k in t]) == n]


@dataclass(frozen=True)
class NewtonPolyhedron:
    n: int
    generators: tuple[Point, ...]

    def __post_init__(self):
        gens = tuple(tuple(Fraction(v) for v in g) for g in self.generators)
        if not gens:
            raise ValidationError("a diagram needs at least one generator")
        for g in gens:
            if len(g) != self.n:
                raise ValidationError(f"generator {g} has length != n={self.n}")
            if any(v < 0 for v in g):
                raise ValidationError(f"generator {g} has a negative coordinate")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_points(cls, points: Iterable[Sequence], n: int | None = None) -> "NewtonPolyhedron":
        pts = [tuple(Fraction(v) for v in p) for p in points]
        if not pts:
            raise ValidationError("a diagram needs at least one generator")
        if n is None:
            n = len(pts[0])
        for p in pts:
            if len(p) != n or any(v < 0 for v in p):
                raise ValidationError(f"bad generator {p}")
        return cls(n, tuple(prune(pts)))

    @classmethod
    def simplex(cls, n: int, J: Iterable[int] | None = None, scale=1) -> "NewtonPolyhedron":
        """``scale * Delta_J``; ``J`` holds 1-based indices (default: all)."""
        J = range(1, n + 1) if J is None else sorted(set(J))
        c = Fraction(scale)
        if c <= 0 or not J or not all(1 <= j <= n for j in J):
            raise ValidationError("simplex needs a positive scale and indices in 1..n")
        # scaled unit vectors are already minimal; build directly, sorted like prune()
        pts = sorted(tuple(c if i == j else Fraction(0) for i in range(1, n + 1)) for j in J)
        return cls(n, tuple(pts))

    def __str__(self):
        return "{" + ", ".join("(" + ",".join(fmt_rational(v) for v in g) + ")" for g in self.generators) + "}"

    @cached_property
    def hull(self) -> PolyhedronHull:
        return hull(self)

    def to_json(self) -> dict:
        return {"n": self.n, "generators": [[fmt_rational(v) for v in g] for g in self.generators]}

    @property
    def contains_origin(self) -> bool:
        return any(all(v == 0 for v in g) for g in self.generators)


def diagram_from_json(obj: dict) -> NewtonPolyhedron:
    try:
        n = int(obj["n"])
        gens = [as_vector(g) for g in obj["generators"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad generator JSON: {exc}") from exc
    return NewtonPolyhedron.from_points(gens, n)


# ---------------------------------------------------------------------------
# construction from expressions


def diagram_of(e: SingularityExpr) -> NewtonPolyhedron:
    """Diagram of a homogeneous piecewise-linear expression.

    Max becomes a generator union and Sum a Minkowski sum.
    """
    return NewtonPolyhedron.from_points(_gens(e.root, e.n), e.n)


def _gens(node, n: int) -> list[Point]:
    zero = tuple(Fraction(0) for _ in range(n))
    if isinstance(node, Const):
        if node.value != 0:
            raise ValidationError("diagram_of needs a homogeneous expression (nonzero constant found)")
        return [zero]
    if isinstance(node, Atom):
        if node.power != 1:
            raise ValidationError("diagram_of needs a piecewise-linear expression (power < 1 found)")
        return [tuple(node.coeff if i == node.index - 1 else Fraction(0) for i in range(n))]
    if isinstance(node, Scale):
        return [tuple(node.factor * v for v in g) for g in _gens(node.child, n)]
    if isinstance(node, Max):
        out = []
        for c in node.children:
            out.extend(_gens(c, n))
        return prune(out)
    acc = [zero]
    for c in node.children:
        acc = prune(tuple(a + b for a, b in zip(p, q)) for p in acc for q in _gens(c, n))
    return acc


# ---------------------------------------------------------------------------
# basic queries


def support_value(G: NewtonPolyhedron, t: Sequence) -> Fraction:
    """``sup_{a in G} <a, t>`` for ``t <= 0``, attained at a generator."""
    t = [Fraction(x) for x in t]
    if any(x > 0 for x in t):
        raise ValidationError("support_value expects a nonpositive direction")
    return max(sum((a * b for a, b in zip(g, t)), Fraction(0)) for g in G.generators)


def directional_number(G: NewtonPolyhedron, a: Sequence) -> Fraction:
    """Lelong-Kiselman number in direction ``a >= 0``: ``min_i <g_i, a>``."""
    a = [Fraction(x) for x in a]
    if any(x < 0 for x in a):
        raise ValidationError("direction must be nonnegative")
    return min(sum((x * y for x, y in zip(g, a)), Fraction(0)) for g in G.generators)


def minkowski_sum(A: NewtonPolyhedron, B: NewtonPolyhedron) -> NewtonPolyhedron:
    if A.n != B.n:
        raise ValidationError("dimension mismatch in Minkowski sum")
    sums = [tuple(x + y for x, y in zip(p, q)) for p in A.generators for q in B.generators]
    return NewtonPolyhedron(A.n, tuple(prune(sums)))


def scale(G: NewtonPolyhedron, c) -> NewtonPolyhedron:
    c = parse_rational(c) if isinstance(c, str) else Fraction(c)
    if c <= 0:
        raise ValidationError("scale factor must be positive")
    return NewtonPolyhedron(G.n, tuple(tuple(c * v for v in g) for g in G.generators))


def truncate(G: NewtonPolyhedron, r) -> NewtonPolyhedron:
    """Diagram of ``I + m^r``: generators augmented with ``r e_j``."""
    r = Fraction(r)
    if r <= 0:
        raise ValidationError("truncation level must be positive")
    axis = [tuple(r if i == j else Fraction(0) for i in range(G.n)) for j in range(G.n)]
    return NewtonPolyhedron(G.n, tuple(prune(list(G.generators) + axis)))


def axis_intercepts(G: NewtonPolyhedron) -> list:
    """``m_j = min{c : c e_j in G}``, ``math.inf`` when the axis misses G."""
    out = []
    for j in range(G.n):
        best = math.inf
        for g in G.generators:
            if all(v == 0 for i, v in enumerate(g) if i != j):
                best = min(best, g[j])
        out.append(best)
    return out


def is_bounded_complement(G: NewtonPolyhedron) -> bool:
    return all(m != math.inf for m in axis_intercepts(G))


def codim_unbounded_locus(G: NewtonPolyhedron) -> int:
    """Smallest index set meeting the support of every generator.

    A diagram containing the origin has empty unbounded locus; by convention
    it gets ``l = n``.
    """
    supports = [frozenset(j for j, v in enumerate(g) if v > 0) for g in G.generators]
    if any(not s for s in supports):
        return G.n
    for size in range(1, G.n + 1):
        for J in combinations(range(G.n), size):
            Js = set(J)
            if all(s & Js for s in supports):
                return size
    return G.n


# ---------------------------------------------------------------------------
# hull and membership


def hull(G: NewtonPolyhedron) -> PolyhedronHull:
    """Exact vertices and facets of ``conv(G) + R^n_+``.

    Generators are lifted to height 1 and the recession rays ``e_j`` to height
    0; facets of the resulting cone are found by double description.
    """
    cap = max_hull_dim()
    if G.n > cap:
        raise CapabilityError(f"exact hull limited to n <= {cap} (got n = {G.n})")
    n = G.n
    facets, tight = _hull_data(G.generators, n)
    vidx = [i for i, t in enumerate(tight) if len(t) >= n and rank([list(facets[k][0]) for k in t]) == n]
    verts = tuple(G.generators[i] for i in vidx)
    inc = tuple(frozenset(pos for pos, i in enumerate(vidx) if k in tight[i]) for k in range(len(facets)))
    return PolyhedronHull(verts, tuple(facets), inc)


def _hull_or_none(G: NewtonPolyhedron) -> PolyhedronHull | None:
    if G.n > max_hull_dim():
        return None
    return G.hull


def _dot(w, x) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(w, x)), Fraction(0))


def contains(G: NewtonPolyhedron, x: Sequence) -> bool:
    x = [Fraction(v) for v in x]
    if any(v < 0 for v in x):
        return False
    H = _hull_or_none(G)
    if H is None:
        return in_upper_hull(list(G.generators), tuple(x))
    return all(_dot(w, x) >= h for w, h in H.facets)


def interior_contains(G: NewtonPolyhedron, x: Sequence) -> bool:
    x = [Fraction(v) for v in x]
    if any(v <= 0 for v in x):
        return False
    H = _hull_or_none(G)
    if H is not None:
        return all(_dot(w, x) > h for w, h in H.facets)
    # x is interior iff x - eps*1 lies in G for some eps > 0
    m = len(G.generators)
    A_ub = [[g[j] for g in G.generators] + [1] for j in range(G.n)]
    res = lp.maximize([0] * m + [1], A_ub, x, [[1] * m + [0]], [1])
    return res.status == lp.OPTIMAL and res.value > 0 or res.status == lp.UNBOUNDED


def boundary_contains(G: NewtonPolyhedron, x: Sequence) -> bool:
    return contains(G, x) and not interior_contains(G, x)
