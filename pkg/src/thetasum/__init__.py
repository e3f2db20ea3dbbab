"""Gaussian lattice sums ``y_a(s) = sum_k exp(-(k+a)**2/s**2)`` with dual-series evaluation."""

from ._accel import BACKEND
from .core import (
    DEFAULT_TOL,
    K_CAP,
    S_STAR,
    SQRT_PI,
    DisplacedSumInput,
    EvalReport,
    Method,
    bounds,
    canonicalize_displacement,
    diff0_half,
    e_of_s,
    eval_auto,
    eval_direct,
    eval_transformed,
    evaluate,
    log_excess,
    poisson_integral,
    tail_bound,
    truncation_K,
    y_values,
)
from .errors import DomainError, FitConvergenceError, TruncationCapError
from .grid import GridSpec

__all__ = [
    "BACKEND",
    "DEFAULT_TOL",
    "K_CAP",
    "S_STAR",
    "SQRT_PI",
    "DisplacedSumInput",
    "DomainError",
    "EvalReport",
    "FitConvergenceError",
    "GridSpec",
    "Method",
    "TruncationCapError",
    "bounds",
    "canonicalize_displacement",
    "diff0_half",
    "e_of_s",
    "eval_auto",
    "eval_direct",
    "eval_transformed",
    "evaluate",
    "log_excess",
    "poisson_integral",
    "tail_bound",
    "truncation_K",
    "y_values",
]
