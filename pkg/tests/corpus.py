"""Seeded random diagrams and the fixed corpus shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction as F

from hypothesis import strategies as st

from singlab.polyhedron import NewtonPolyhedron

KINK = NewtonPolyhedron.from_points([(1, 0), (F(1, 4), F(1, 4)), (0, 1)])
TWO_THREE = NewtonPolyhedron.from_points([(2, 0), (0, 3)])


def _coord(rng: random.Random) -> F:
    if rng.random() < 0.3:
        return F(0)
    return F(rng.randint(0, 6), rng.choice([1, 2, 3]))


def random_diagram(rng: random.Random, n: int, max_gens: int = 4) -> NewtonPolyhedron:
    """1..max_gens generators with small rational coordinates, never the origin."""
    pts = []
    for _ in range(rng.randint(1, max_gens)):
        p = tuple(_coord(rng) for _ in range(n))
        if any(p):
            pts.append(p)
    if not pts:
        pts = [tuple(F(1) for _ in range(n))]
    return NewtonPolyhedron.from_points(pts, n)


def random_bounded(rng: random.Random, n: int, extra: int = 2) -> NewtonPolyhedron:
    """Axis points on every coordinate axis plus a few random points."""
    pts = []
    for j in range(n):
        c = F(rng.randint(1, 6), rng.choice([1, 2]))
        pts.append(tuple(c if i == j else F(0) for i in range(n)))
    for _ in range(rng.randint(0, extra)):
        p = tuple(F(rng.randint(0, 4), rng.choice([1, 2, 3])) for _ in range(n))
        if any(p):
            pts.append(p)
    return NewtonPolyhedron.from_points(pts, n)


def random_weight(rng: random.Random, n: int) -> tuple[F, ...]:
    return tuple(F(rng.randint(1, 12), rng.randint(1, 6)) for _ in range(n))


def corpus() -> list[tuple[str, NewtonPolyhedron]]:
    """Named bounded-complement diagrams used by the oracle checks."""
    rng = random.Random(2024)
    out = [
        ("simplex2", NewtonPolyhedron.simplex(2)),
        ("kink", KINK),
        ("two_three", TWO_THREE),
        ("simplex3", NewtonPolyhedron.simplex(3)),
        ("weight3", NewtonPolyhedron.from_points([(2, 0, 0), (0, 1, 0), (0, 0, F(1, 4))])),
    ]
    out += [(f"random2_{i}", random_bounded(rng, 2)) for i in range(2)]
    out += [(f"random3_{i}", random_bounded(rng, 3)) for i in range(2)]
    return out


# hypothesis strategies

rationals = st.builds(F, st.integers(0, 6), st.sampled_from([1, 2, 3]))


@st.composite
def diagrams(draw, n=None, max_gens: int = 4, bounded: bool = False):
    if n is None:
        n = draw(st.integers(2, 3))
    pts = draw(st.lists(st.tuples(*[rationals] * n), min_size=1, max_size=max_gens))
    pts = [p for p in pts if any(p)]
    if bounded:
        for j in range(n):
            c = draw(st.builds(F, st.integers(1, 6), st.sampled_from([1, 2])))
            pts.append(tuple(c if i == j else F(0) for i in range(n)))
    if not pts:
        pts = [tuple(F(1) for _ in range(n))]
    return NewtonPolyhedron.from_points(pts, n)
