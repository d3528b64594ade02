"""Integrability index, log canonical threshold and the inequality chains.

For a diagram ``G`` with Lelong number ``nu = min_i |g_i|_1`` the index is

    lambda = max { min_i <g_i, a> : a >= 0, sum a = 1 }

and equivalently the first ``s`` with ``s (1, ..., 1)`` in ``G``.  Both linear
programs are solved exactly and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np
from scipy.optimize import minimize as _nm_minimize

from . import lp
from .covolume import DEFAULT_MAX_DOUBLINGS, lelong_all
from .errors import InternalError
from .polyhedron import NewtonPolyhedron, boundary_contains, codim_unbounded_locus

REFINED_TOL = 1e-9


@dataclass(frozen=True)
class ChainVerdict:
    holds: bool
    equality: bool


@dataclass(frozen=True)
class SkodaVerdict:
    lower_holds: bool
    upper_holds: bool
    lower_equality: bool


@dataclass(frozen=True)
class RefinedBound:
    value: float
    direction: tuple[float, ...]
    lower: Fraction
    upper: float


@dataclass
class ThresholdReport:
    nu: Fraction
    lam: Fraction
    lct: Fraction | float
    codim_l: int
    lelong: dict[int, Fraction]
    chain_verdicts: dict[int, ChainVerdict]
    skoda: SkodaVerdict
    mceq_class: tuple[Fraction, tuple[int, ...]] | None
    refined_bounds: dict[int, RefinedBound] = field(default_factory=dict)


def lelong_number(G: NewtonPolyhedron) -> Fraction:
    return min(sum(g, Fraction(0)) for g in G.generators)


def lambda_lp(G: NewtonPolyhedron) -> Fraction:
    """``sup_a nu(a) / sum(a)`` as an exact LP in ``(a_1..a_n, lam)``."""
    n = G.n
    A_ub = [[-v for v in g] + [1] for g in G.generators]
    res = lp.maximize([0] * n + [1], A_ub, [0] * len(G.generators), [[1] * n + [0]], [1])
    if res.status != lp.OPTIMAL:
        raise InternalError(f"integrability LP ended {res.status} on {G}")
    return res.value


def lambda_direction(G: NewtonPolyhedron) -> tuple[Fraction, ...]:
    """An optimal direction ``a`` (summing to 1) of the integrability LP."""
    n = G.n
    A_ub = [[-v for v in g] + [1] for g in G.generators]
    res = lp.maximize([0] * n + [1], A_ub, [0] * len(G.generators), [[1] * n + [0]], [1])
    return res.x[:n]


def lambda_ray(G: NewtonPolyhedron) -> Fraction:
    """``min{s : s (1..1) in G}`` as an exact LP over convex weights of generators."""
    m = len(G.generators)
    A_ub = [[g[j] for g in G.generators] + [-1] for j in range(G.n)]
    res = lp.minimize([0] * m + [1], A_ub, [0] * G.n, [[1] * m + [0]], [1])
    if res.status != lp.OPTIMAL:
        raise InternalError(f"diagonal LP ended {res.status} on {G}")
    return res.value


def lct(G: NewtonPolyhedron):
    lam = lambda_lp(G)
    return math.inf if lam == 0 else 1 / lam


def classify_mceq(G: NewtonPolyhedron) -> tuple[Fraction, tuple[int, ...]] | None:
    """Return ``(B, J)`` when ``G = B * Delta_J`` (1-based ``J``), else None."""
    B = None
    J = []
    for g in G.generators:
        support = [j for j, v in enumerate(g) if v != 0]
        if len(support) != 1:
            return None
        v = g[support[0]]
        if B is None:
            B = v
        elif v != B:
            return None
        J.append(support[0] + 1)
    return B, tuple(sorted(J))


def skoda_lower_equality(G: NewtonPolyhedron) -> bool:
    """Is ``(nu/n) (1..1)`` on the boundary of ``G``?"""
    s = lelong_number(G) / G.n
    return boundary_contains(G, [s] * G.n)


def verify_chain(
    G: NewtonPolyhedron,
    max_k: int | None = None,
    lelong: dict[int, Fraction] | None = None,
    max_doublings: int = DEFAULT_MAX_DOUBLINGS,
) -> ThresholdReport:
    """Assemble the exact threshold report and check every theorem-backed verdict.

    Raises InternalError when Skoda's bounds, the generalized chain
    ``k^k lam^k <= L_k``, or the pairing between equality cases and the
    classification fail; those are theorems, so a failure means a bug.
    """
    n = G.n
    nu = lelong_number(G)
    lam = lambda_lp(G)
    lam_ray = lambda_ray(G)
    if lam != lam_ray:
        raise InternalError(f"lambda mismatch on {G}: {lam} vs {lam_ray}")
    l = codim_unbounded_locus(G)
    if lelong is None:
        lelong = lelong_all(G, max_k, max_doublings)
    chain = {}
    for k, Lk in lelong.items():
        lhs = Fraction(k) ** k * lam**k
        chain[k] = ChainVerdict(lhs <= Lk, lhs == Lk)
    skoda = SkodaVerdict(nu / n <= lam, lam <= nu, skoda_lower_equality(G))
    mceq = classify_mceq(G)
    report = ThresholdReport(
        nu=nu,
        lam=lam,
        lct=math.inf if lam == 0 else 1 / lam,
        codim_l=l,
        lelong=dict(lelong),
        chain_verdicts=chain,
        skoda=skoda,
        mceq_class=mceq,
    )
    _audit(G, report)
    return report


def _audit(G: NewtonPolyhedron, rep: ThresholdReport) -> None:
    if not (rep.skoda.lower_holds and rep.skoda.upper_holds):
        raise InternalError(f"Skoda bounds violated on {G}: nu={rep.nu}, lambda={rep.lam}")
    if rep.skoda.lower_equality != (rep.lam * G.n == rep.nu):
        raise InternalError(f"boundary test disagrees with lambda = nu/n on {G}")
    for k, v in rep.chain_verdicts.items():
        if not v.holds:
            raise InternalError(f"k^k lambda^k <= L_k violated at k={k} on {G}")
    if 1 in rep.lelong and rep.lelong[1] != rep.nu:
        raise InternalError(f"L_1 != nu on {G}")
    if rep.nu == 0:
        return
    eq_ks = [k for k, v in rep.chain_verdicts.items() if v.equality]
    if rep.mceq_class is not None:
        size = len(rep.mceq_class[1])
        if size in rep.chain_verdicts and not rep.chain_verdicts[size].equality:
            raise InternalError(f"{G} is B*Delta_J but the chain is strict at k={size}")
    elif eq_ks:
        raise InternalError(f"chain equality at k={eq_ks} on {G} without a B*Delta_J form")


# ---------------------------------------------------------------------------
# refined valuative bound over the phi_a weights


def _refined_objective(gens: np.ndarray, k: int, a: np.ndarray) -> float:
    nu = float(np.min(gens @ a))
    top = np.sort(a)[-k:]
    denom = float(np.prod(top)) ** (1.0 / k)
    if denom <= 0:
        return -math.inf
    return nu / (k * denom)


def refined_bound(
    G: NewtonPolyhedron,
    k: int,
    lelong_k_value: Fraction | None = None,
    seed: int = 0,
    n_random: int = 8,
    maxiter: int = 2000,
) -> RefinedBound:
    """Maximize ``k^{-1} nu(a) / (max_{|J|=k} a_J)^{1/k}`` over ``a > 0``.

    Multi-start Nelder-Mead in log coordinates from the facet normals, the
    uniform direction, the integrability optimizer and a few seeded random
    points.  The result is checked against ``[lambda, k^{-1} L_k^{1/k}]``.
    """
    from .covolume import lelong_k

    n = G.n
    lam = lambda_lp(G)
    Lk = lelong_k(G, k) if lelong_k_value is None else lelong_k_value
    upper = float(Lk) ** (1.0 / k) / k
    if lam == 0:
        return RefinedBound(0.0, tuple([1.0 / n] * n), lam, upper)
    gens = np.array([[float(v) for v in g] for g in G.generators])
    starts = [np.ones(n)]
    starts.append(np.array([float(v) for v in lambda_direction(G)]))
    for w, h in G.hull.facets if n <= 6 else []:
        if h > 0:
            starts.append(np.array(w, dtype=float))
    rng = np.random.default_rng(seed)
    starts.extend(rng.uniform(0.05, 1.0, size=(n_random, n)))

    best_val = -math.inf
    best_dir = None

    def consider(a):
        nonlocal best_val, best_dir
        v = _refined_objective(gens, k, a)
        if v > best_val:
            best_val, best_dir = v, a / a.sum()

    for s in starts:
        consider(s)
        x0 = np.log(np.maximum(s / s.max(), 1e-6))
        res = _nm_minimize(
            lambda x: -_refined_objective(gens, k, np.exp(x - x.max())),
            x0,
            method="Nelder-Mead",
            options={"maxiter": maxiter, "xatol": 1e-12, "fatol": 1e-15},
        )
        consider(np.exp(res.x - res.x.max()))
    if best_val < float(lam) - REFINED_TOL or best_val > upper + REFINED_TOL:
        raise InternalError(
            f"refined bound {best_val} escaped [{float(lam)}, {upper}] on {G} at k={k}"
        )
    return RefinedBound(best_val, tuple(float(x) for x in best_dir), lam, upper)
