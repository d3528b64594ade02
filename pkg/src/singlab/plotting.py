"""Figures for the ``analyze --plot-dir`` report path.

Uses the non-interactive Agg backend; every function writes a file and
returns its path.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .polyhedron import NewtonPolyhedron  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}


def _fig(width=4.0, ratio=0.8):
    return plt.subplots(figsize=(width, width * ratio))


def plot_diagram(G: NewtonPolyhedron, lam: Fraction, nu: Fraction, path: Path) -> Path:
    """Newton polygon of a planar diagram with the diagonal point ``lam (1,1)``."""
    if G.n != 2:
        raise ValueError("diagram plot needs n = 2")
    verts = sorted((float(a), float(b)) for a, b in G.hull.vertices)
    top = max([max(p) for p in verts] + [float(lam), float(nu)]) * 1.3 or 1.0
    with plt.rc_context(STYLE):
        fig, ax = _fig()
        xs = [verts[0][0]] + [p[0] for p in verts] + [top]
        ys = [top] + [p[1] for p in verts] + [verts[-1][1]]
        ax.fill(xs + [top], ys + [top], color="0.85", lw=0)
        ax.plot(xs, ys, color="k", lw=1.2)
        ax.plot(*zip(*verts), "o", color="k", ms=3.5)
        ax.plot([0, top], [0, top], ls=":", color="0.4", lw=0.8)
        ax.plot([float(lam)], [float(lam)], "s", color="C3", ms=4, label=r"$\lambda(1,1)$")
        s = float(nu) / 2
        ax.plot([float(nu), 0], [0, float(nu)], ls="--", color="C0", lw=0.8, label=r"$\{\,|x|_1=\nu\,\}$")
        ax.plot([s], [s], "^", color="C0", ms=4)
        ax.set_xlim(0, top)
        ax.set_ylim(0, top)
        ax.set_aspect("equal")
        ax.set_xlabel("$x_1$")
        ax.set_ylabel("$x_2$")
        ax.legend(frameon=False, loc="upper right")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_chain(lelong: dict[int, Fraction], lam: Fraction, path: Path) -> Path:
    """``L_k`` against the lower bound ``k^k lam^k`` on a log scale."""
    ks = sorted(lelong)
    L = np.array([float(lelong[k]) for k in ks])
    lower = np.array([float(Fraction(k) ** k * lam**k) for k in ks])
    with plt.rc_context(STYLE):
        fig, ax = _fig(ratio=0.65)
        ax.plot(ks, L, "o-", color="k", lw=1, ms=4, label="$L_k$")
        ax.plot(ks, lower, "s--", color="C3", lw=1, ms=3.5, label=r"$k^k\lambda^k$")
        if np.all(L > 0) and np.all(lower > 0):
            ax.set_yscale("log")
        ax.set_xticks(ks)
        ax.set_xlabel("$k$")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def write_figures(G: NewtonPolyhedron, report: dict, outdir: str | Path) -> list[Path]:
    """Write every figure that applies to ``report`` into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    lam = Fraction(report["lambda"])
    nu = Fraction(report["nu"])
    lelong = {int(k): Fraction(v) for k, v in report["lelong"].items()}
    paths = []
    if G.n == 2:
        paths.append(plot_diagram(G, lam, nu, outdir / "diagram.png"))
    if lelong:
        paths.append(plot_chain(lelong, lam, outdir / "chain.png"))
    return paths
