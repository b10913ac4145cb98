"""Monte Carlo adjusted profile (MCAP) confidence intervals.

Smooths noisy Monte Carlo evaluations of a profile log likelihood, fits a
local quadratic metamodel at the smoothed maximum, and widens the
likelihood-ratio cutoff to account for Monte Carlo error.
"""

from .core import McapResult, mcap
from .metamodel import (
    ErrorBudget,
    QuadraticFit,
    cutoff_delta,
    quadratic_max,
    se_mc_squared,
    se_stat,
    weighted_quadratic_fit,
)
from .profile_io import ProfilePoints, read_profile_csv, read_result, write_fit_table, write_result
from .smoother import SmootherConfig, SmoothFit, smooth, tricube_weights

__all__ = [
    "ErrorBudget", "McapResult", "ProfilePoints", "QuadraticFit", "SmoothFit", "SmootherConfig",
    "cutoff_delta", "mcap", "quadratic_max", "read_profile_csv", "read_result", "se_mc_squared",
    "se_stat", "smooth", "tricube_weights", "weighted_quadratic_fit", "write_fit_table", "write_result",
]
