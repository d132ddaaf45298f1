"""Multiple-node quadrature for Fourier-Chebyshev coefficients with
arbitrary-precision remainder bounds."""

from .core_math import EllipseCoord, PrecisionContext, RuleParams
from .errors import (
    ConvergenceError,
    FCQError,
    NotBracketedError,
    OffAxisMaximumError,
    PrecisionError,
)
from .hermite_quadrature import (
    CallbackIntegrand,
    ChebyshevSeriesIntegrand,
    Integrand,
    apply_rule,
    build_rule,
)
from .error_bounds import BoundReport, compute_report, optimize_bound
from .reference_oracle import TestIntegrandF0, actual_error, reference_integral

__version__ = "0.1.0"

__all__ = [
    "EllipseCoord",
    "PrecisionContext",
    "RuleParams",
    "FCQError",
    "PrecisionError",
    "ConvergenceError",
    "NotBracketedError",
    "OffAxisMaximumError",
    "Integrand",
    "CallbackIntegrand",
    "ChebyshevSeriesIntegrand",
    "build_rule",
    "apply_rule",
    "BoundReport",
    "compute_report",
    "optimize_bound",
    "TestIntegrandF0",
    "actual_error",
    "reference_integral",
]
