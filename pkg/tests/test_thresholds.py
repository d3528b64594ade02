import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from corpus import KINK, TWO_THREE, corpus, diagrams
from singlab.covolume import lelong_k
from singlab.errors import InternalError
from singlab.expr import phi_weight
from singlab.oracles import weight_lambda
from singlab.polyhedron import NewtonPolyhedron, boundary_contains, diagram_of, scale
from singlab.thresholds import (
    ThresholdReport,
    _audit,
    classify_mceq,
    lambda_direction,
    lambda_lp,
    lambda_ray,
    lct,
    lelong_number,
    refined_bound,
    skoda_lower_equality,
    verify_chain,
)


def test_known_thresholds():
    assert lambda_lp(KINK) == F(1, 4)
    assert lct(KINK) == 4
    assert lambda_lp(TWO_THREE) == F(6, 5)
    assert lct(TWO_THREE) == F(5, 6)
    for n in (2, 3, 4):
        assert lct(NewtonPolyhedron.simplex(n)) == n
    assert lct(NewtonPolyhedron.from_points([(0, 0)])) == math.inf


def test_lambda_direction_is_optimal():
    a = lambda_direction(KINK)
    assert sum(a) == 1
    assert min(sum(x * y for x, y in zip(g, a)) for g in KINK.generators) == F(1, 4)


def test_weight_lambda():
    a = (F(1, 2), F(1), F(4))
    assert lambda_lp(diagram_of(phi_weight(a))) == weight_lambda(a) == F(2, 11)


def test_classify():
    assert classify_mceq(NewtonPolyhedron.simplex(3, J=[1, 3], scale=F(5, 2))) == (F(5, 2), (1, 3))
    assert classify_mceq(NewtonPolyhedron.simplex(2)) == (1, (1, 2))
    assert classify_mceq(KINK) is None
    assert classify_mceq(TWO_THREE) is None
    assert classify_mceq(NewtonPolyhedron.from_points([(1, 1)])) is None


def test_skoda_equality_examples():
    assert skoda_lower_equality(KINK)
    assert skoda_lower_equality(NewtonPolyhedron.from_points([(1, 1)]))
    assert skoda_lower_equality(NewtonPolyhedron.simplex(3))
    assert not skoda_lower_equality(TWO_THREE)


def test_report_kink():
    rep = verify_chain(KINK)
    assert (rep.nu, rep.lam, rep.lct, rep.codim_l) == (F(1, 2), F(1, 4), 4, 2)
    assert rep.lelong == {1: F(1, 2), 2: F(1, 2)}
    assert rep.skoda.lower_equality
    assert rep.mceq_class is None
    assert not any(v.equality for v in rep.chain_verdicts.values())


def test_report_equality_case():
    rep = verify_chain(NewtonPolyhedron.simplex(3, J=[1, 2], scale=3))
    assert rep.codim_l == 2
    assert rep.chain_verdicts[2].equality
    assert not rep.chain_verdicts[1].equality


def test_audit_rejects_inconsistent_report():
    rep = verify_chain(KINK)
    bad = ThresholdReport(**{**rep.__dict__, "lam": F(1)})
    with pytest.raises(InternalError):
        _audit(KINK, bad)


@given(st.integers(2, 4).flatmap(lambda n: diagrams(n=n)))
def test_chain_properties(G):
    rep = verify_chain(G)
    assert rep.lam == lambda_ray(G)
    assert rep.nu / G.n <= rep.lam <= rep.nu
    for k, Lk in rep.lelong.items():
        assert F(k) ** k * rep.lam**k <= Lk
    if rep.lam > 0:
        assert boundary_contains(G, [rep.lam] * G.n)
    assert rep.skoda.lower_equality == (rep.lam == rep.nu / G.n)
    assert (rep.mceq_class is not None) == any(v.equality for v in rep.chain_verdicts.values())


@given(diagrams(), st.builds(F, st.integers(1, 5), st.integers(1, 3)))
def test_scaling_invariance(G, c):
    rep, rep_c = verify_chain(G), verify_chain(scale(G, c))
    assert rep_c.lam == c * rep.lam
    assert rep_c.nu == c * rep.nu
    assert rep_c.skoda == rep.skoda
    assert rep_c.chain_verdicts == rep.chain_verdicts
    assert (rep_c.mceq_class is None) == (rep.mceq_class is None)


# refined bound


def _brute_force(G, k, steps=2000):
    """Grid search over the 2-simplex of directions (n = 2 only)."""
    best = -1.0
    gens = np.array([[float(v) for v in g] for g in G.generators])
    for i in range(1, steps):
        a = np.array([i / steps, 1 - i / steps])
        nu = float(np.min(gens @ a))
        denom = float(np.prod(np.sort(a)[-k:])) ** (1 / k)
        best = max(best, nu / (k * denom))
    return best


def test_refined_bound_kink():
    # the optimum sits at the facet normal (1, 3): nu = 1, a_1 a_2 = 3
    rb = refined_bound(KINK, 2)
    assert rb.value == pytest.approx(1 / (2 * math.sqrt(3)), abs=1e-9)
    assert rb.value == pytest.approx(_brute_force(KINK, 2), abs=1e-6)
    assert rb.lower == F(1, 4)
    assert rb.direction[1] / rb.direction[0] == pytest.approx(3, rel=1e-6)


def test_refined_bound_simplex_equality():
    for n in (2, 3):
        rb = refined_bound(NewtonPolyhedron.simplex(n), n)
        assert rb.value == pytest.approx(1 / n, abs=1e-9)


def test_refined_bound_two_three():
    rb = refined_bound(TWO_THREE, 2)
    assert 1.2 - 1e-9 <= rb.value <= math.sqrt(6) / 2 + 1e-9
    assert rb.value == pytest.approx(_brute_force(TWO_THREE, 2), abs=1e-6)
    # regression value from the optimizer
    assert rb.value == pytest.approx(1.2247448713915887, abs=1e-9)


def test_refined_bound_in_certified_interval():
    for _, G in corpus():
        for k in range(1, G.n + 1):
            rb = refined_bound(G, k)
            assert float(rb.lower) - 1e-9 <= rb.value <= rb.upper + 1e-9
            assert rb.upper == pytest.approx(float(lelong_k(G, k)) ** (1 / k) / k)


def test_refined_bound_deterministic():
    a = refined_bound(TWO_THREE, 2, seed=3)
    b = refined_bound(TWO_THREE, 2, seed=3)
    assert a == b


def test_lelong_number():
    assert lelong_number(KINK) == F(1, 2)
