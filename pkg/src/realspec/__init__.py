"""Exact and numerical real-eigenvalue probabilities for products of
truncated Haar orthogonal matrices."""

from .errors import (
    AccuracyError,
    ContractError,
    ConvergenceError,
    DomainError,
    GradingError,
    RealSpecError,
    UnsupportedExactError,
)
from .exact import GradedExact, GradedMatrix, gamma_half, graded_add, graded_det
from .meijer import GIndex, g_eval, k_closed_form, g55_munu, g_odd_m1, pascal_coeff
from .probability import (
    EnsembleSpec,
    ExactProbability,
    Path,
    closed_form_m1,
    probability_exact,
    special_case_L0,
)

__version__ = "0.1.0"
