import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from corpus import KINK, TWO_THREE, diagrams
from singlab.errors import CapabilityError, DegenerateError, ValidationError
from singlab.expr import parse
from singlab.hull import cone_dual_rays, det, polytope_hull, polytope_volume, rank
from singlab.polyhedron import (
    NewtonPolyhedron,
    axis_intercepts,
    boundary_contains,
    codim_unbounded_locus,
    contains,
    diagram_from_json,
    diagram_of,
    directional_number,
    hull,
    in_upper_hull,
    interior_contains,
    is_bounded_complement,
    minkowski_sum,
    prune,
    scale,
    support_value,
    truncate,
)

# exact linear algebra


def test_rank_and_det():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[F(1, 2), 1], [1, 3]]) == 2
    assert rank([]) == 0
    assert det([[2, 0], [1, 3]]) == 6
    assert det([[1, 2], [2, 4]]) == 0


def test_cone_dual_rays_orthant():
    rays = cone_dual_rays([[1, 0], [0, 1], [1, 1]])
    assert sorted(r for r, _ in rays) == [(0, 1), (1, 0)]
    with pytest.raises(DegenerateError):
        cone_dual_rays([[1, 0], [2, 0]])


def test_polytope_volume():
    assert polytope_volume([(0, 0), (1, 0), (0, 1), (1, 1)]) == 1
    assert polytope_volume([(0, 0), (3, 0), (0, 2)]) == 3
    cube = [(a, b, c) for a in (0, 2) for b in (0, 2) for c in (0, 2)]
    assert polytope_volume(cube) == 8
    assert polytope_volume([(0, 0), (1, 1), (2, 2)], allow_degenerate=True) == 0
    with pytest.raises(DegenerateError):
        polytope_volume([(0, 0), (1, 1), (2, 2)])


def test_polytope_hull_square():
    verts, facets, inc = polytope_hull([(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))])
    assert len(verts) == 4
    assert len(facets) == 4
    assert all(len(s) == 2 for s in inc)


# construction


def test_prune_drops_interior_and_dominated():
    pts = [(1, 0), (F(1, 4), F(1, 4)), (0, 1), (1, 1), (F(1, 2), F(1, 2))]
    assert prune(pts) == [(0, 1), (F(1, 4), F(1, 4)), (1, 0)]


def test_prune_midpoint_of_generators():
    # (1,1) is the midpoint of (2,0) and (0,2)
    assert prune([(1, 1), (2, 0), (0, 2)]) == [(0, 2), (2, 0)]


@given(diagrams(max_gens=6))
def test_prune_methods_agree(G):
    pts = list(G.generators) + [tuple(v + 1 for v in G.generators[0])]
    assert prune(pts, "lp") == prune(pts, "hull") == list(G.generators)


def test_diagram_of_expressions():
    G = diagram_of(parse("max(x1, 1/4*(x1+x2), x2)"))
    assert G == KINK
    assert diagram_of(parse("x1 + x2")).generators == ((F(1), F(1)),)
    assert diagram_of(parse("max(2*x1, 3*x2)")) == TWO_THREE
    with pytest.raises(ValidationError):
        diagram_of(parse("x1^(1/2)"))


def test_diagram_from_json():
    G = diagram_from_json({"n": 2, "generators": [["1/4", "1/4"], [1, 0], [0, 1], [1, 1]]})
    assert G == KINK
    with pytest.raises(ValidationError):
        diagram_from_json({"n": 2})
    with pytest.raises(ValidationError):
        diagram_from_json({"n": 2, "generators": [[-1, 0]]})


def test_simplex():
    D = NewtonPolyhedron.simplex(3, J=[1, 3], scale=2)
    assert D.generators == ((0, 0, 2), (2, 0, 0))
    with pytest.raises(ValidationError):
        NewtonPolyhedron.simplex(2, J=[3])


# queries


def test_support_and_directional():
    assert support_value(KINK, [-1, -1]) == F(-1, 2)
    assert directional_number(KINK, [1, 3]) == 1
    with pytest.raises(ValidationError):
        support_value(KINK, [1, 0])


def test_intercepts_and_locus():
    assert axis_intercepts(TWO_THREE) == [2, 3]
    G = NewtonPolyhedron.from_points([(1, 1)])
    assert axis_intercepts(G) == [math.inf, math.inf]
    assert not is_bounded_complement(G)
    assert codim_unbounded_locus(G) == 1
    assert codim_unbounded_locus(NewtonPolyhedron.from_points([(1, 0, 0), (0, 1, 1)])) == 2
    assert codim_unbounded_locus(NewtonPolyhedron.simplex(3)) == 3
    assert codim_unbounded_locus(NewtonPolyhedron.from_points([(0, 0)])) == 2


def test_truncate_and_minkowski():
    G = truncate(NewtonPolyhedron.from_points([(1, 1)]), 2)
    assert G.generators == ((0, 2), (2, 0))
    S = minkowski_sum(NewtonPolyhedron.simplex(2), NewtonPolyhedron.simplex(2))
    assert S == scale(NewtonPolyhedron.simplex(2), 2)


def test_hull_kink():
    H = KINK.hull
    assert set(H.vertices) == {(0, 1), (F(1, 4), F(1, 4)), (1, 0)}
    assert ((1, 3), 1) in H.facets and ((3, 1), 1) in H.facets
    js = H.to_json()
    assert {"normal": [1, 3], "offset": "1"} in js["facets"]


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("SINGLAB_MAX_DIM", "2")
    G = NewtonPolyhedron.simplex(3)
    with pytest.raises(CapabilityError):
        hull(G)
    # membership falls back to exact LP above the cap
    assert contains(G, [1, 0, 0])
    assert interior_contains(G, [1, 1, 1])
    assert not interior_contains(G, [F(1, 3), F(1, 3), F(1, 3)])


def test_membership():
    assert contains(KINK, [F(1, 4), F(1, 4)])
    assert boundary_contains(KINK, [F(1, 4), F(1, 4)])
    assert not contains(KINK, [F(1, 5), F(1, 5)])
    assert interior_contains(KINK, [1, 1])
    assert not interior_contains(KINK, [2, 0])


@given(diagrams(), st.lists(st.builds(F, st.integers(0, 12), st.integers(1, 4)), min_size=3, max_size=3))
def test_membership_matches_lp(G, x):
    x = x[: G.n]
    assert contains(G, x) == in_upper_hull(list(G.generators), tuple(x))


@given(diagrams(), st.builds(F, st.integers(1, 5), st.integers(1, 3)))
def test_scaling_hull(G, c):
    H, Hc = G.hull, scale(G, c).hull
    assert [w for w, _ in H.facets] == [w for w, _ in Hc.facets]
    assert [c * h for _, h in H.facets] == [h for _, h in Hc.facets]


@given(diagrams())
def test_generators_are_vertices(G):
    assert set(G.hull.vertices) == set(G.generators)
    for g in G.generators:
        assert boundary_contains(G, g)
