"""Dense two-phase simplex over the rationals.

Problems in this package have at most a few dozen variables and constraints,
so a textbook tableau with Bland's anti-cycling rule is both exact and fast
enough.  All variables are nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, col: int) -> None:
    row = T[r]
    piv = row[col]
    if piv != 1:
        T[r] = row = [v / piv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[col]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = col


def _run(T, basis, cost, allowed) -> str:
    while True:
        entering = None
        for j in allowed:
            rc = cost[j]
            for i, b in enumerate(basis):
                if cost[b] and T[i][j]:
                    rc -= cost[b] * T[i][j]
            if rc > 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], entering)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``, ``x >= 0``."""
    nvar = len(c)
    n_ub = len(A_ub)
    m = n_ub + len(A_eq)
    nslack = n_ub
    ncols = nvar + nslack + m
    T: list[list[Fraction]] = []
    for i, (row, rhs) in enumerate(list(zip(A_ub, b_ub)) + list(zip(A_eq, b_eq))):
        line = [Fraction(v) for v in row] + [Fraction(0)] * (nslack + m) + [Fraction(rhs)]
        if i < n_ub:
            line[nvar + i] = Fraction(1)
        if line[-1] < 0:
            line = [-v for v in line]
        line[nvar + nslack + i] = Fraction(1)
        T.append(line)
    basis = [nvar + nslack + i for i in range(m)]

    phase1 = [Fraction(0)] * (nvar + nslack) + [Fraction(-1)] * m
    _run(T, basis, phase1, range(nvar + nslack))
    if any(T[i][-1] != 0 for i, b in enumerate(basis) if b >= nvar + nslack):
        return LPResult(INFEASIBLE)

    # drive zero-valued artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nvar + nslack:
            col = next((j for j in range(nvar + nslack) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1

    cost = [Fraction(v) for v in c] + [Fraction(0)] * (nslack + m)
    status = _run(T, basis, cost, range(nvar + nslack))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    value = sum((cost[j] * x[j] for j in range(nvar)), Fraction(0))
    return LPResult(OPTIMAL, value, tuple(x[:nvar]))


def minimize(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    res = maximize([-Fraction(v) for v in c], A_ub, b_ub, A_eq, b_eq)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, -res.value, res.x)


def feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), nvar: int | None = None) -> bool:
    if nvar is None:
        nvar = len((list(A_ub) + list(A_eq))[0])
    return maximize([0] * nvar, A_ub, b_ub, A_eq, b_eq).status == OPTIMAL
