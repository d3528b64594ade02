"""Exact analysis of multi-circled plurisubharmonic singularities.

Newton diagrams, covolumes and higher Lelong numbers, integrability indices,
multiplier ideals and numerical oracles.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CapabilityError,
    DomainError,
    InternalError,
    NonStabilizationError,
    ParseError,
    SingLabError,
    UnboundedCovolumeError,
    ValidationError,
)
from .expr import SingularityExpr, canonical, indicator_of, parse, phi_weight  # noqa: E402
from .polyhedron import NewtonPolyhedron, diagram_of  # noqa: E402
from .covolume import covol, covol_k, lelong_k, mixed_covol  # noqa: E402
from .thresholds import (  # noqa: E402
    classify_mceq,
    lambda_lp,
    lambda_ray,
    lct,
    refined_bound,
    skoda_lower_equality,
    verify_chain,
)
from .mulideal import generators, member  # noqa: E402

__all__ = [
    "CapabilityError", "DomainError", "InternalError", "NonStabilizationError", "ParseError",
    "SingLabError", "UnboundedCovolumeError", "ValidationError",
    "SingularityExpr", "canonical", "indicator_of", "parse", "phi_weight",
    "NewtonPolyhedron", "diagram_of",
    "covol", "covol_k", "lelong_k", "mixed_covol",
    "classify_mceq", "lambda_lp", "lambda_ray", "lct", "refined_bound", "skoda_lower_equality",
    "verify_chain", "generators", "member",
]
