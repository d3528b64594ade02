import math
from fractions import Fraction as F

import numpy as np
import pytest

from corpus import KINK, TWO_THREE, corpus
from singlab.covolume import covol
from singlab.errors import DomainError, UnboundedCovolumeError
from singlab.expr import parse
from singlab.oracles import (
    _radial_moment,
    _simplex_rule,
    _verdict,
    covol_lattice,
    covol_mc,
    integrability_probe,
    weight_lambda,
    weight_lelong,
)
from singlab.polyhedron import NewtonPolyhedron
from singlab.thresholds import lambda_lp


def test_closed_forms():
    a = (F(1, 2), 1, 4)
    assert [weight_lelong(a, k) for k in (1, 2, 3)] == [F(1, 4), F(1, 4), F(1, 2)]
    assert weight_lambda(a) == F(2, 11)


def test_mc_reproducible_and_accurate():
    a = covol_mc(TWO_THREE, samples=200_000, seed=5)
    b = covol_mc(TWO_THREE, samples=200_000, seed=5)
    assert a == b
    assert abs(a.estimate - 3) <= 4 * a.stderr
    assert a.to_json() == {"estimate": a.estimate, "stderr": a.stderr, "seed": 5}


def test_mc_unbounded():
    with pytest.raises(UnboundedCovolumeError):
        covol_mc(NewtonPolyhedron.from_points([(1, 1)]))


def test_lattice_converges():
    errs = [abs(float(covol_lattice(KINK, m)) - 0.25) for m in (8, 32, 128)]
    assert errs[-1] < 0.01
    assert errs[-1] < errs[0]
    assert covol_lattice(NewtonPolyhedron.simplex(2), 1) == 1
    with pytest.raises(DomainError):
        covol_lattice(KINK, 0)


@pytest.mark.parametrize("name, G", corpus())
def test_mc_corpus(name, G):
    est = covol_mc(G, samples=200_000, seed=1)
    assert abs(est.estimate - float(covol(G))) <= 4 * est.stderr + 1e-12


def test_simplex_rule_weights():
    for n, vol in ((2, 1.0), (3, 0.5), (4, 1 / 6)):
        A, w = _simplex_rule(n)
        assert np.allclose(A.sum(axis=1), 1.0)
        assert w.sum() == pytest.approx(vol, rel=1e-10)


def test_radial_moment_branches():
    n = 3
    beta = np.array([-3.0, -0.5, 0.0, 0.4, 5.0])
    R = np.full_like(beta, 2.0)
    got = _radial_moment(n, beta, R)
    s = np.linspace(0, 2, 200001)
    for b, g in zip(beta, got):
        ref = np.trapezoid(s ** (n - 1) * np.exp(-b * s), s)
        assert g == pytest.approx(ref, rel=1e-6)


def test_verdict_rules():
    assert _verdict([1.0, 1.5, 1.5000001]) == "converging"
    assert _verdict([1.0, 2.0, 4.0]) == "diverging"
    assert _verdict([1.0, 2.0, math.inf]) == "diverging"
    assert _verdict([1.0, 2.0, 2.9]) == "inconclusive"
    assert _verdict([1.0, 2.0]) == "inconclusive"


@pytest.mark.parametrize("G", [NewtonPolyhedron.simplex(2), KINK, TWO_THREE])
def test_probe_brackets_threshold(G):
    lam = float(lambda_lp(G))
    assert integrability_probe(G, 1.1 * lam).verdict == "converging"
    assert integrability_probe(G, 0.9 * lam).verdict == "diverging"
    assert integrability_probe(G, lam).verdict != "converging"


def test_probe_accepts_expression():
    res = integrability_probe(parse("max(x1, x2)"), 1.1)
    assert res.verdict == "converging"
    js = res.to_json()
    assert js["lambda"] == 1.1 and len(js["partial_integrals"]) == len(js["depths"])
    with pytest.raises(DomainError):
        integrability_probe(KINK, 0)


def test_probe_unbounded_complement():
    G = NewtonPolyhedron.from_points([(1, 1)])
    assert integrability_probe(G, 1.1).verdict == "converging"
    assert integrability_probe(G, 0.9).verdict == "diverging"


def test_probe_simplex_shallow_depths():
    res = integrability_probe(NewtonPolyhedron.simplex(2), 0.55, (7.5, 15.0, 30.0, 60.0))
    assert res.verdict == "converging"
    # over the whole orthant the integral is 1 / (4 - 2/lam)
    assert res.partial_integrals[-1] == pytest.approx(2.75, rel=1e-6)
