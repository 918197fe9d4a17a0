"""Exact lattice-point counts, successive minima and the bounds relating them."""
from .arith import RationalMatrix, parse_rational
from .bounds import (BoundValue, MuChoice, compare, conjecture_bound, corollary_bound,
                     evaluate_bounds, freyer_lucas_bound, malikiosis_bound, optimal_mu,
                     tointon_bound)
from .errors import (BoundViolation, ContractError, DegenerateBodyError, LatboundError,
                     NotApplicable, ParseError)
from .geometry import Polytope, Subspace, contains, difference_body, gauge, volume_exact
from .harness import (Instance, certify_instance, generate_instance,
                      minkowski_volume_check, mink2_limit_check, run_campaign)
from .lattice import (LatticeBasis, MinimaProfile, count_lattice_points,
                      enumerate_lattice_points, reduce_to_span, successive_minima)
from .squeeze import squeeze_polygon

__version__ = "0.1.0"

__all__ = [
    "BoundValue", "BoundViolation", "ContractError", "DegenerateBodyError", "Instance",
    "LatboundError", "LatticeBasis", "MinimaProfile", "MuChoice", "NotApplicable",
    "ParseError", "Polytope", "RationalMatrix", "Subspace", "certify_instance", "compare",
    "conjecture_bound", "contains", "corollary_bound", "count_lattice_points",
    "difference_body", "enumerate_lattice_points", "evaluate_bounds",
    "freyer_lucas_bound", "gauge", "generate_instance", "malikiosis_bound",
    "minkowski_volume_check", "mink2_limit_check", "optimal_mu", "parse_rational",
    "reduce_to_span", "run_campaign", "squeeze_polygon", "successive_minima",
    "tointon_bound", "volume_exact",
]
