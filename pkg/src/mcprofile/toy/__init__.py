"""Lognormal latent-variable toy model and MCAP coverage study."""

from .model import (
    ToySpec,
    exact_interval,
    exact_loglik,
    exact_profile,
    lognormal_density,
    mc_density,
    mc_loglik,
    profile_sigma,
    run_profile,
    simulate_data,
)
from .rng import SeededStream
from .study import CoverageReport, coverage_study

__all__ = [
    "CoverageReport", "SeededStream", "ToySpec", "coverage_study", "exact_interval", "exact_loglik",
    "exact_profile", "lognormal_density", "mc_density", "mc_loglik", "profile_sigma", "run_profile",
    "simulate_data",
]
