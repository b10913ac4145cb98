"""The MCAP pipeline: smooth, locate the maximum, fit the local metamodel,
inflate the cutoff, and read the interval off the smoothed curve."""

from dataclasses import dataclass, field

import numpy as np

from . import metamodel
from .errors import InvalidConfidence
from .metamodel import ErrorBudget, QuadraticFit
from .smoother import SmoothFit, SmootherConfig, smooth, tricube_weights

WARN_CI_BOUNDARY = "profile range may not cover the interval"
WARN_MULTIMODAL = "multimodal smoothed profile; CI reported as outer range"
WARN_ARGMAX_BOUNDARY = "smoothed maximum at edge of profile range; metamodel neighbourhood is one-sided"


@dataclass(frozen=True, eq=False)
class McapResult:
    smooth_fit: SmoothFit
    quadratic_fit: QuadraticFit
    budget: ErrorBudget
    config: SmootherConfig
    mle: float
    quadratic_max: float
    ci: tuple
    warnings: list = field(default_factory=list)

    @property
    def delta(self):
        return self.budget.delta

    @property
    def width(self):
        return self.ci[1] - self.ci[0]

    @property
    def fit_table(self):
        """Rows of ``(parameter, smoothed, quadratic)`` over the grid."""
        grid = self.smooth_fit.grid
        return np.column_stack([grid, self.smooth_fit.smoothed, self.quadratic_fit(grid)])


def mcap(points, confidence=0.95, span=0.75, ngrid=1000):
    """Monte Carlo adjusted profile confidence interval.

    Parameters
    ----------
    points : ProfilePoints
        Monte Carlo profile log likelihood evaluations.
    confidence : float
        Nominal coverage in (0, 1).
    span : float
        Smoother span ``lambda``: fraction of points in each local fit.
    ngrid : int
        Number of grid points on which the smoothed profile is evaluated.

    Returns
    -------
    McapResult
        ``mle`` is the grid argmax of the smoothed profile; ``ci`` is the
        range of grid points whose smoothed value lies strictly within
        ``delta`` of the maximum.
    """
    if not 0.0 < confidence < 1.0:
        raise InvalidConfidence(f"confidence must be in (0, 1), got {confidence}")
    config = SmootherConfig(span=span, ngrid=ngrid)
    fit = smooth(points, config)
    mle = fit.argmax

    weights = tricube_weights(mle, points.parameters, span)
    qfit = metamodel.weighted_quadratic_fit(points.parameters, points.loglik, weights)
    budget = metamodel.cutoff_delta(qfit, metamodel.se_mc_squared(qfit), confidence)

    drop = np.max(fit.smoothed) - fit.smoothed
    passing = np.flatnonzero(drop < budget.delta)
    lo_idx, hi_idx = int(passing[0]), int(passing[-1])
    ci = (float(fit.grid[lo_idx]), float(fit.grid[hi_idx]))

    warnings = []
    last = len(fit.grid) - 1
    if fit.argmax_index in (0, last):
        warnings.append(WARN_ARGMAX_BOUNDARY)
    if lo_idx == 0 or hi_idx == last:
        warnings.append(WARN_CI_BOUNDARY)
    if len(passing) != hi_idx - lo_idx + 1:
        warnings.append(WARN_MULTIMODAL)

    return McapResult(
        smooth_fit=fit,
        quadratic_fit=qfit,
        budget=budget,
        config=config,
        mle=mle,
        quadratic_max=metamodel.quadratic_max(qfit),
        ci=ci,
        warnings=warnings,
    )
