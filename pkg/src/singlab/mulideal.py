"""Monomial multiplier ideals of multi-circled singularities.

``z^alpha`` lies in the multiplier ideal of ``c*u`` exactly when
``alpha + (1, ..., 1)`` is an interior point of ``c * G``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
import math
from typing import Sequence

from .errors import ValidationError
from .expr import MonomialIdealPresentation
from .polyhedron import NewtonPolyhedron, interior_contains, scale
from .rational import fmt_rational


def _check_alpha(alpha: Sequence, n: int) -> tuple[int, ...]:
    if len(alpha) != n:
        raise ValidationError(f"exponent must have {n} entries")
    out = []
    for a in alpha:
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise ValidationError("multiplier-ideal exponents must be integers")
            a = a.numerator
        if not isinstance(a, int) or a < 0:
            raise ValidationError("multiplier-ideal exponents must be nonnegative integers")
        out.append(a)
    return tuple(out)


def member(G: NewtonPolyhedron, alpha: Sequence[int], c=1) -> bool:
    c = Fraction(c)
    if c <= 0:
        raise ValidationError("scale c must be positive")
    alpha = _check_alpha(alpha, G.n)
    return interior_contains(scale(G, c), [a + 1 for a in alpha])


class _Membership:
    """Interior test against the facets of ``c * G`` with integer arithmetic."""

    def __init__(self, G: NewtonPolyhedron, c: Fraction):
        H = scale(G, c).hull
        self.vertices = H.vertices
        # <w, alpha + 1> > h  <=>  <w, alpha> * den > h.num - sum(w) * den
        self.tests = []
        for w, h in H.facets:
            self.tests.append((w, h.numerator - sum(w) * h.denominator, h.denominator))
        self.cache: dict[tuple, bool] = {}

    def __call__(self, alpha: tuple[int, ...]) -> bool:
        hit = self.cache.get(alpha)
        if hit is None:
            hit = all(sum(a * b for a, b in zip(w, alpha)) * den > rhs for w, rhs, den in self.tests)
            self.cache[alpha] = hit
        return hit


def generators(G: NewtonPolyhedron, c=1) -> MonomialIdealPresentation:
    """Minimal monomial generators of the multiplier ideal of ``c*u``.

    Scans the box ``[0, B]`` with ``B_j`` the ceiling of the largest j-th
    vertex coordinate of ``c*G``, keeps the minimal members, and certifies
    the box by checking that stepping out of any face never creates a new
    minimal member; otherwise the box grows and the scan repeats.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValidationError("scale c must be positive")
    n = G.n
    is_member = _Membership(G, c)
    bound = [max(math.ceil(v[j]) for v in is_member.vertices) for j in range(n)]
    while True:
        members = [a for a in product(*(range(b + 1) for b in bound)) if is_member(a)]
        minimal = sorted(
            a for a in members
            if all(a[j] == 0 or not is_member(a[:j] + (a[j] - 1,) + a[j + 1:]) for j in range(n))
        )
        grow = _escaping_faces(bound, is_member)
        if not grow:
            return MonomialIdealPresentation(n, tuple(minimal))
        for j in grow:
            bound[j] = 2 * bound[j] + 1


def _escaping_faces(bound: list[int], is_member) -> list[int]:
    n = len(bound)
    bad = []
    for j in range(n):
        ranges = [range(b + 1) for b in bound]
        ranges[j] = range(bound[j] + 1, bound[j] + 2)
        for beta in product(*ranges):
            below = beta[:j] + (beta[j] - 1,) + beta[j + 1:]
            if is_member(beta) and not is_member(below):
                bad.append(j)
                break
    return bad


def generators_to_json(ideal: MonomialIdealPresentation, c) -> dict:
    return {
        "scale": fmt_rational(Fraction(c)),
        "generators": [[int(v) for v in row] for row in ideal.exponents],
    }
