"""Slow independent checks: Monte-Carlo and lattice covolumes, a numeric
integrability probe, and closed forms for the weights ``phi_a``.

None of these share code paths with the exact engines beyond the facet list
of the diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import math
from typing import Sequence

import numpy as np
from scipy.special import gammainc

from .errors import DomainError, UnboundedCovolumeError
from .expr import SingularityExpr, indicator_of
from .polyhedron import NewtonPolyhedron, axis_intercepts, diagram_of, is_bounded_complement

DEFAULT_DEPTHS = (16.0, 32.0, 64.0, 128.0, 256.0)
CONVERGE_RTOL = 1e-4
DIVERGE_RATIO = 1.5

# composite Gauss-Legendre on the simplex of directions: (panels, nodes) per axis
SIMPLEX_GRID = {2: (400, 8), 3: (160, 6), 4: (32, 4)}


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    stderr: float
    seed: int
    samples: int

    def to_json(self) -> dict:
        return {"estimate": self.estimate, "stderr": self.stderr, "seed": self.seed}


@dataclass(frozen=True)
class ProbeResult:
    lam: float
    depths: tuple[float, ...]
    partial_integrals: tuple[float, ...]
    verdict: str

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "depths": list(self.depths),
            "partial_integrals": [_finite_or_tag(v) for v in self.partial_integrals],
            "verdict": self.verdict,
        }


def _finite_or_tag(v: float):
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _oblique_facets(G: NewtonPolyhedron):
    return [(w, h) for w, h in G.hull.facets if h > 0]


def _box_side(G: NewtonPolyhedron) -> Fraction:
    if not is_bounded_complement(G):
        raise UnboundedCovolumeError(f"complement of {G} is unbounded")
    return max(axis_intercepts(G))


def covol_mc(G: NewtonPolyhedron, samples: int = 1_000_000, seed: int = 0,
             chunk: int = 200_000) -> MonteCarloEstimate:
    """Uniform sampling in ``[0, M]^n``; reproducible for a fixed seed."""
    M = float(_box_side(G))
    if M == 0:
        return MonteCarloEstimate(0.0, 0.0, seed, samples)
    facets = _oblique_facets(G)
    W = np.array([w for w, _ in facets], dtype=float)
    h = np.array([float(h) for _, h in facets])
    rng = np.random.default_rng(seed)
    outside = 0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = rng.uniform(0.0, M, size=(m, G.n))
        outside += int(np.count_nonzero(np.any(x @ W.T < h, axis=1)))
        done += m
    p = outside / samples
    vol = M**G.n
    return MonteCarloEstimate(vol * p, vol * math.sqrt(p * (1 - p) / samples), seed, samples)


def covol_lattice(G: NewtonPolyhedron, m: int) -> Fraction:
    """Count points of ``(1/m) Z^n`` in ``[0, M)^n`` outside ``G``; divide by ``m^n``."""
    if m < 1:
        raise DomainError("lattice resolution must be a positive integer")
    M = _box_side(G)
    if M == 0:
        return Fraction(0)
    top = math.ceil(M * m)  # indices 0 .. top-1 satisfy i/m < M
    facets = _oblique_facets(G)
    W = np.array([w for w, _ in facets], dtype=np.int64)
    # <w, i/m> < h  <=>  <w, i> * h.den < h.num * m
    den = np.array([h.denominator for _, h in facets], dtype=np.int64)
    rhs = np.array([h.numerator * m for _, h in facets], dtype=np.int64)
    n = G.n
    count = 0
    axis = np.arange(top, dtype=np.int64)
    lead = n - 1
    # iterate over the first coordinate, vectorize the remaining ones
    rest = np.stack(np.meshgrid(*([axis] * lead), indexing="ij"), axis=-1).reshape(-1, lead) if lead else None
    for i0 in range(top):
        if rest is None:
            pts = np.array([[i0]], dtype=np.int64)
        else:
            pts = np.concatenate([np.full((rest.shape[0], 1), i0, dtype=np.int64), rest], axis=1)
        count += int(np.count_nonzero(np.any((pts @ W.T) * den < rhs, axis=1)))
    return Fraction(count, m**n)


# ---------------------------------------------------------------------------
# integrability probe


def _radial_moment(n: int, beta: np.ndarray, R: np.ndarray) -> np.ndarray:
    """``int_0^R s^{n-1} exp(-beta s) ds`` evaluated elementwise."""
    m = n - 1
    x = beta * R
    out = np.empty_like(x)
    small = np.abs(x) <= 2.0
    big_pos = x > 2.0
    big_neg = x < -2.0
    if small.any():
        u, wts = np.polynomial.legendre.leggauss(24)
        u = 0.5 * (u + 1.0)
        wts = 0.5 * wts
        xs = x[small][:, None]
        out[small] = (wts * u**m * np.exp(-xs * u)).sum(axis=1)
    if big_pos.any():
        xp = x[big_pos]
        out[big_pos] = math.factorial(m) * gammainc(m + 1, xp) / xp ** (m + 1)
    if big_neg.any():
        y = -x[big_neg]
        with np.errstate(over="ignore", invalid="ignore"):
            ey = np.exp(y)
            J = (ey - 1.0) / y
            for j in range(1, m + 1):
                J = (ey - j * J) / y
        out[big_neg] = J
    with np.errstate(over="ignore", invalid="ignore"):
        return R**n * out


def _simplex_rule(n: int):
    """Nodes ``a`` (rows summing to 1) and weights for the standard (n-1)-simplex."""
    panels, k = SIMPLEX_GRID.get(n, (24, 3))
    g, w = np.polynomial.legendre.leggauss(k)
    edges = np.linspace(0.0, 1.0, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    x1 = (mids[:, None] + half[:, None] * g[None, :]).ravel()
    w1 = (half[:, None] * w[None, :]).ravel()
    if n == 1:
        return np.ones((1, 1)), np.ones(1)
    # Duffy map from the unit cube: a_1 = u_1, a_2 = (1-u_1) u_2, ...
    grids = np.meshgrid(*([x1] * (n - 1)), indexing="ij")
    wgrids = np.meshgrid(*([w1] * (n - 1)), indexing="ij")
    U = np.stack([g_.ravel() for g_ in grids], axis=1)
    Wt = np.prod(np.stack([g_.ravel() for g_ in wgrids], axis=1), axis=1)
    A = np.empty((U.shape[0], n))
    remaining = np.ones(U.shape[0])
    jac = np.ones(U.shape[0])
    for j in range(n - 1):
        A[:, j] = remaining * U[:, j]
        jac = jac * remaining
        remaining = remaining * (1.0 - U[:, j])
    A[:, n - 1] = remaining
    return A, Wt * jac


def integrability_probe(
    source: SingularityExpr | NewtonPolyhedron,
    lam: float,
    depths: Sequence[float] = DEFAULT_DEPTHS,
) -> ProbeResult:
    """Partial integrals of ``exp(2(sum t - Psi(t)/lam))`` over ``[-T, 0]^n``.

    In polar form ``t = -s a`` with ``a`` on the simplex the radial integral is
    done in closed form, leaving a composite Gauss-Legendre rule over the
    simplex of directions.  The verdict is a heuristic: "converging" when the
    last doubling adds less than 1e-4 relative, "diverging" when increments
    grow by at least 1.5x, otherwise "inconclusive".
    """
    if lam <= 0:
        raise DomainError("probe exponent lambda must be positive")
    if isinstance(source, SingularityExpr):
        G = diagram_of(indicator_of(source))
    else:
        G = source
    n = G.n
    gens = np.array([[float(v) for v in g] for g in G.generators])
    A, wts = _simplex_rule(n)
    nu = np.min(A @ gens.T, axis=1)
    beta = 2.0 * (1.0 - nu / lam)
    amax = A.max(axis=1)
    partial = []
    for T in depths:
        R = T / amax
        vals = _radial_moment(n, beta, R)
        with np.errstate(over="ignore", invalid="ignore"):
            partial.append(float(np.sum(wts * vals)))
    return ProbeResult(float(lam), tuple(float(t) for t in depths), tuple(partial), _verdict(partial))


def _verdict(partial: Sequence[float]) -> str:
    if len(partial) < 3:
        return "inconclusive"
    if not math.isfinite(partial[-1]):
        return "diverging"
    inc = [b - a for a, b in zip(partial, partial[1:])]
    if partial[-1] > 0 and inc[-1] / partial[-1] < CONVERGE_RTOL:
        return "converging"
    if inc[-2] > 0 and inc[-1] / inc[-2] >= DIVERGE_RATIO:
        return "diverging"
    return "inconclusive"


# ---------------------------------------------------------------------------
# closed forms for weights


def weight_lelong(a: Sequence, k: int) -> Fraction:
    """``L_k(phi_a) = (max_{|J|=k} prod_{j in J} a_j)^{-1}``."""
    best = None
    for J in combinations([Fraction(x) for x in a], k):
        p = Fraction(1)
        for v in J:
            p *= v
        best = p if best is None or p > best else best
    return 1 / best


def weight_lambda(a: Sequence) -> Fraction:
    """``lambda(phi_a) = 1 / sum(a)``."""
    return 1 / sum((Fraction(x) for x in a), Fraction(0))
