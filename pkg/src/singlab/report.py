"""Input loading and the analysis report shared by the CLI subcommands.

Exact quantities are serialized as ``"p/q"`` strings; floating-point fields
are wrapped as ``{"value": x, "approx": true}``; infinity is ``"inf"``.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .covolume import DEFAULT_MAX_DOUBLINGS, lelong_all
from .errors import CapabilityError, ParseError, ValidationError
from .expr import (
    MonomialIdealPresentation,
    SingularityExpr,
    canonical,
    from_monomials,
    indicator_of,
    monomials_from_json,
    parse,
    to_text,
)
from .mulideal import generators, generators_to_json
from .polyhedron import NewtonPolyhedron, diagram_of, max_hull_dim
from .rational import as_vector, fmt_rational
from .thresholds import refined_bound, verify_chain


@dataclass(frozen=True)
class LoadedInput:
    expr: SingularityExpr
    source: str  # "dsl", "monomials" or "generators"


def load_source(text: str) -> LoadedInput:
    """Read DSL text or a ``{"n", "generators"}`` / ``{"n", "monomials"}`` document."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ValidationError("JSON input must be an object")
        if "monomials" in obj:
            return LoadedInput(_checked(from_monomials(monomials_from_json(obj))), "monomials")
        if "generators" in obj:
            try:
                n = int(obj["n"])
                rows = tuple(as_vector(g) for g in obj["generators"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ValidationError(f"bad generator JSON: {exc}") from exc
            return LoadedInput(_checked(from_monomials(MonomialIdealPresentation(n, rows))), "generators")
        raise ValidationError('JSON input needs a "generators" or "monomials" key')
    return LoadedInput(_checked(parse(stripped)), "dsl")


def load_path(path: str | Path) -> LoadedInput:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    return load_source(text)


def _checked(e: SingularityExpr) -> SingularityExpr:
    cap = max_hull_dim()
    if e.n > cap:
        raise CapabilityError(f"dimension {e.n} exceeds the cap n <= {cap}")
    return e


def diagram_for(e: SingularityExpr) -> tuple[SingularityExpr, NewtonPolyhedron]:
    ind = canonical(indicator_of(e))
    return ind, diagram_of(ind)


# ---------------------------------------------------------------------------
# serialization helpers


def q(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return fmt_rational(x)


def approx(x: float) -> dict:
    return {"value": float(x), "approx": True}


def diagram_json(G: NewtonPolyhedron) -> dict:
    H = G.hull
    return {
        "n": G.n,
        "generators": [[q(v) for v in g] for g in G.generators],
        "vertices": [[q(v) for v in p] for p in H.vertices],
        "facets": [{"normal": list(w), "offset": q(h)} for w, h in H.facets],
    }


def mceq_json(cls) -> dict | None:
    if cls is None:
        return None
    B, J = cls
    return {"B": q(B), "J": list(J)}


# ---------------------------------------------------------------------------
# analysis


def analyze(
    e: SingularityExpr,
    max_k: int | None = None,
    multiplier_scale: Fraction | None = None,
    refined: bool = False,
    seed: int = 0,
    max_doublings: int = DEFAULT_MAX_DOUBLINGS,
    timing: bool = False,
) -> dict:
    """Full report for one singularity.

    The output is deterministic for fixed arguments; wall-clock time is only
    included when ``timing`` is set.
    """
    t0 = time.perf_counter()
    canon = canonical(e)
    ind, G = diagram_for(e)
    lelong = lelong_all(G, max_k, max_doublings)
    rep = verify_chain(G, max_k, lelong=lelong, max_doublings=max_doublings)
    out = {
        "tool": {"name": "singlab", "version": __version__},
        "input": {"n": e.n, "expression": to_text(canon.root)},
        "notes": list(e.notes),
        "indicator": to_text(ind.root),
        "diagram": diagram_json(G),
        "codim_l": rep.codim_l,
        "nu": q(rep.nu),
        "lambda": q(rep.lam),
        "lct": q(rep.lct),
        "lelong": {str(k): q(v) for k, v in sorted(rep.lelong.items())},
        "chain": {
            str(k): {"holds": v.holds, "equality": v.equality}
            for k, v in sorted(rep.chain_verdicts.items())
        },
        "skoda": {"lower_holds": rep.skoda.lower_holds, "upper_holds": rep.skoda.upper_holds},
        "skoda_lower_equality": rep.skoda.lower_equality,
        "mceq_class": mceq_json(rep.mceq_class),
    }
    if multiplier_scale is not None:
        out["multiplier_ideal"] = generators_to_json(generators(G, multiplier_scale), multiplier_scale)
    if refined:
        bounds = {}
        for k, Lk in sorted(rep.lelong.items()):
            rb = refined_bound(G, k, lelong_k_value=Lk, seed=seed)
            bounds[str(k)] = {
                "value": approx(rb.value),
                "direction": [approx(a) for a in rb.direction],
                "lower": q(rb.lower),
                "upper": approx(rb.upper),
            }
        out["refined_bounds"] = bounds
        out["seed"] = seed
    if timing:
        out["timing"] = {"seconds": approx(time.perf_counter() - t0)}
    return out


def flatten(obj, prefix: str = "") -> list[tuple[str, str]]:
    """Rows ``(key, value)`` for the tab-delimited text format.

    Nested keys are joined with dots and approximate values print as plain
    decimals; lists of scalars become comma-separated values.
    """
    rows: list[tuple[str, str]] = []
    if isinstance(obj, dict):
        if obj.get("approx") is True and set(obj) == {"value", "approx"}:
            return [(prefix, repr(obj["value"]))]
        if not obj and prefix:
            return [(prefix, "")]
        for k, v in obj.items():
            rows.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return rows
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [(prefix, ",".join(_scalar(v) for v in obj))]
        for i, v in enumerate(obj):
            rows.extend(flatten(v, f"{prefix}.{i}"))
        return rows
    return [(prefix, _scalar(obj))]


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)
