"""Covolumes, mixed covolumes and higher Lelong numbers.

``covol(G)`` is the volume of ``R^n_+ \\ G``.  Mixed covolumes come from the
polarization identity

    Covol(A_1, ..., A_n) = (1/n!) sum_{S nonempty} (-1)^{n-|S|} Covol(sum_{i in S} A_i)

and ``L_k = n! Covol(G, ..., G, Delta, ..., Delta)`` with k copies of G.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .errors import CapabilityError, InternalError, NonStabilizationError, UnboundedCovolumeError
from .hull import det, polytope_volume, pulling_triangulation
from .polyhedron import (
    NewtonPolyhedron,
    axis_intercepts,
    codim_unbounded_locus,
    is_bounded_complement,
    minkowski_sum,
    scale,
    truncate,
)

DEFAULT_MAX_DOUBLINGS = 20

__all__ = [
    "CovolumeValue",
    "covol",
    "covol_boxed",
    "covol_k",
    "lelong_k",
    "mixed_covol",
    "polytope_volume",
]


@dataclass(frozen=True)
class CovolumeValue:
    value: Fraction
    stabilized_at_r: Fraction | None = None
    terms_evaluated: int = 0


def covol(G: NewtonPolyhedron) -> Fraction:
    return _covol(G.n, G.generators)


@lru_cache(maxsize=8192)
def _covol(n: int, gens: tuple) -> Fraction:
    return _covol_pyramids(NewtonPolyhedron(n, gens))


def _covol_pyramids(G: NewtonPolyhedron) -> Fraction:
    """Exact covolume of a diagram with bounded complement.

    The complement is star-shaped from the origin and its boundary inside the
    open orthant is the union of the facets with positive offset, so it
    decomposes into pyramids with apex 0 over those facets.
    """
    if G.contains_origin:
        return Fraction(0)
    if not is_bounded_complement(G):
        raise UnboundedCovolumeError(f"complement of {G} is unbounded")
    H = G.hull
    n = G.n
    total = Fraction(0)
    for (w, h), verts in zip(H.facets, H.incidence):
        if h <= 0:
            continue
        for simplex in pulling_triangulation(verts, n - 1, H.incidence):
            total += abs(det([H.vertices[i] for i in simplex]))
    return total / factorial(n)


def covol_boxed(G: NewtonPolyhedron, M=None) -> Fraction:
    """``M^n - Vol(G cap [0, M]^n)``; independent of ``M >= max intercept``.

    ``G cap box`` is the convex hull of the boxes ``[g, M 1]`` over the
    generators, whose corners are enumerated directly.
    """
    if not is_bounded_complement(G):
        raise UnboundedCovolumeError(f"complement of {G} is unbounded")
    if M is None:
        M = max(axis_intercepts(G))
    M = Fraction(M)
    if any(v > M for g in G.generators for v in g):
        raise ValueError("box side must dominate every generator coordinate")
    n = G.n
    if M == 0:
        return Fraction(0)
    corners = set()
    for g in G.generators:
        for mask in range(1 << n):
            corners.add(tuple(M if mask >> j & 1 else g[j] for j in range(n)))
    return M**n - polytope_volume(sorted(corners), allow_degenerate=True)


def mixed_covol(*sets: NewtonPolyhedron) -> Fraction:
    """Mixed covolume of n diagrams in dimension n by polarization."""
    n = len(sets)
    if n == 0 or any(A.n != n for A in sets):
        raise ValueError("mixed_covol needs exactly n diagrams of dimension n")
    for A in sets:
        if not is_bounded_complement(A):
            raise UnboundedCovolumeError(f"complement of {A} is unbounded")
    cache: dict[tuple, Fraction] = {}
    total = Fraction(0)
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            acc = sets[S[0]]
            for i in S[1:]:
                acc = minkowski_sum(acc, sets[i])
            key = acc.generators
            if key not in cache:
                cache[key] = covol(acc)
            total += (-1) ** (n - size) * cache[key]
    return total / factorial(n)


def _mixed_with_simplex(A: NewtonPolyhedron, k: int) -> tuple[Fraction, int]:
    """Covol(A x k, Delta x (n-k)), grouping subsets by how many copies they hold."""
    n = A.n
    total = Fraction(0)
    evaluated = 0
    for i in range(k + 1):
        for j in range(n - k + 1):
            if i == 0 and j == 0:
                continue
            evaluated += 1
            total += comb(k, i) * comb(n - k, j) * (-1) ** (n - i - j) * _covol_ij(A.n, A.generators, i, j)
    return total / factorial(n), evaluated


@lru_cache(maxsize=8192)
def _covol_ij(n: int, gens: tuple, i: int, j: int) -> Fraction:
    """``Covol(i A + j Delta)``, cached across k and truncation levels."""
    A = NewtonPolyhedron(n, gens)
    D = NewtonPolyhedron.simplex(n)
    if i == 0:
        S = scale(D, j)
    elif j == 0:
        S = scale(A, i)
    else:
        S = minkowski_sum(scale(A, i), scale(D, j))
    return covol(S)


def covol_k(G: NewtonPolyhedron, k: int, max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> CovolumeValue:
    l = codim_unbounded_locus(G)
    if not 1 <= k <= l:
        raise CapabilityError(f"Covol_k needs 1 <= k <= l = {l}, got k = {k}")
    if is_bounded_complement(G):
        v, terms = _mixed_with_simplex(G, k)
        return CovolumeValue(v, None, terms)
    r0 = max(v for g in G.generators for v in g)
    if r0 == 0:
        r0 = Fraction(1)
    prev = None
    terms = 0
    for m in range(max_doublings + 1):
        r = r0 * 2**m
        v, t = _mixed_with_simplex(truncate(G, r), k)
        terms += t
        if prev is not None and prev[1] == v:
            return CovolumeValue(v, prev[0], terms)
        prev = (r, v)
    raise NonStabilizationError(
        f"Covol_{k} of {G} did not stabilize within {max_doublings} doublings of r"
    )


def lelong_k(G: NewtonPolyhedron, k: int, max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> Fraction:
    """Higher Lelong number ``L_k = n! Covol_k``."""
    value = factorial(G.n) * covol_k(G, k, max_doublings).value
    if k == 1:
        closed = min(sum(g) for g in G.generators)
        if value != closed:
            raise InternalError(f"L_1 mismatch on {G}: covolume engine {value}, closed form {closed}")
    return value


def lelong_all(G: NewtonPolyhedron, max_k: int | None = None,
               max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> dict[int, Fraction]:
    top = codim_unbounded_locus(G)
    if max_k is not None:
        top = min(top, max_k)
    return {k: lelong_k(G, k, max_doublings) for k in range(1, top + 1)}
