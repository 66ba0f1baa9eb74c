"""Homotopy perturbation transform solver for time-fractional PDEs with
proportional delay, built on exact generalized power-series algebra."""

from .errors import ParseDiagnostic, ResourceError, UsageError
from .gamma_kernel import frac_integral_coeff, log_gamma
from .gseries import GExp, GSeries, Term
from .problems import ExactSolution, ProblemSpec, builtin, exact_eval, load_problem, parse_problem
from .residual import GridSpec, caputo_l1, compare_exact, residual_norm
from .rhs_ast import homotopy_coeff, parse_rhs
from .solver import ErrorEstimate, HptmSolution, error_bound, partial_sum, solve

__all__ = [
    "ParseDiagnostic",
    "ResourceError",
    "UsageError",
    "frac_integral_coeff",
    "log_gamma",
    "GExp",
    "GSeries",
    "Term",
    "ExactSolution",
    "ProblemSpec",
    "builtin",
    "exact_eval",
    "load_problem",
    "parse_problem",
    "GridSpec",
    "caputo_l1",
    "compare_exact",
    "residual_norm",
    "homotopy_coeff",
    "parse_rhs",
    "ErrorEstimate",
    "HptmSolution",
    "error_bound",
    "partial_sum",
    "solve",
]
