"""Weighted quadratic metamodel and the standard-error algebra built on it.

The profile near its maximum is modelled as ``-a*phi**2 + b*phi + c`` plus
IID Monte Carlo noise. From the weighted regression we get the maximiser
``b / (2a)``, its statistical standard error ``1 / sqrt(2a)``, its Monte Carlo
variance by the delta method, and the adjusted likelihood-ratio cutoff.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InsufficientDof,
    InvalidConfidence,
    NonConcaveFit,
    SingularDesign,
    ZeroCurvature,
)
from .normal import chi2_1_ppf


@dataclass(frozen=True, eq=False)
class QuadraticFit:
    """Coefficients of ``-a*phi**2 + b*phi + c`` and their estimated covariance.

    ``covariance`` is the full 3x3 matrix ordered ``(a, b, c)``; ``sigma2`` is
    the weighted residual variance with ``dof`` degrees of freedom.
    """

    a: float
    b: float
    c: float
    covariance: np.ndarray
    sigma2: float
    dof: int

    @property
    def var_a(self):
        return float(self.covariance[0, 0])

    @property
    def var_b(self):
        return float(self.covariance[1, 1])

    @property
    def cov_ab(self):
        return float(self.covariance[0, 1])

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        return -self.a * phi * phi + self.b * phi + self.c


@dataclass(frozen=True)
class ErrorBudget:
    se_stat: float
    se_mc: float
    se_total: float
    delta: float
    confidence: float


def weighted_quadratic_fit(parameters, loglik, weights):
    """Weighted least squares of ``loglik`` on ``(1, phi, -phi**2)``.

    Only points with strictly positive weight enter the fit; ``dof`` is their
    count minus 3. The coefficient covariance is ``sigma2 * inv(X' W X)``
    with ``sigma2 = sum(w * e**2) / dof``, so rescaling all weights leaves it
    unchanged.

    Raises
    ------
    SingularDesign
        Fewer than 3 distinct positively weighted parameter values.
    InsufficientDof
        Fewer than 4 positively weighted points.
    """
    parameters = np.asarray(parameters, dtype=float)
    loglik = np.asarray(loglik, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if not parameters.shape == loglik.shape == weights.shape:
        raise ValueError("parameters, loglik and weights must have equal length")
    if np.any(weights < 0.0) or not np.all(np.isfinite(weights)):
        raise ValueError("weights must be finite and non-negative")

    keep = weights > 0.0
    phi, y, w = parameters[keep], loglik[keep], weights[keep]
    if len(np.unique(phi)) < 3:
        raise SingularDesign("fewer than 3 distinct parameter values with positive weight")
    m = len(phi)
    if m < 4:
        raise InsufficientDof(f"{m} positively weighted points leave no residual degrees of freedom")

    # Fit in u = (phi - centre) / scale, then map back: X = Z @ M.
    centre = float(np.sum(w * phi) / np.sum(w))
    scale = float(np.max(np.abs(phi - centre)))
    u = (phi - centre) / scale
    root_w = np.sqrt(w)
    z = root_w[:, None] * np.column_stack([np.ones_like(u), u, -u * u])
    qmat, rmat = np.linalg.qr(z)
    diag = np.abs(np.diag(rmat))
    if np.min(diag) <= 1e-13 * np.max(diag):
        raise SingularDesign("weighted design matrix is numerically rank deficient")
    gamma = np.linalg.solve(rmat, qmat.T @ (root_w * y))
    resid = y - (z / root_w[:, None]) @ gamma
    dof = m - 3
    sigma2 = float(np.sum(w * resid * resid) / dof)
    r_inv = np.linalg.inv(rmat)
    cov_gamma = sigma2 * (r_inv @ r_inv.T)

    t, s = centre, scale
    transform = np.array([
        [1.0, t, -t * t],
        [0.0, s, -2.0 * t * s],
        [0.0, 0.0, s * s],
    ])
    m_inv = np.linalg.inv(transform)
    beta = m_inv @ gamma
    cov_beta = m_inv @ cov_gamma @ m_inv.T
    cov_beta = 0.5 * (cov_beta + cov_beta.T)

    # reorder (c, b, a) -> (a, b, c)
    perm = [2, 1, 0]
    covariance = cov_beta[np.ix_(perm, perm)]
    covariance.flags.writeable = False
    return QuadraticFit(
        a=float(beta[2]), b=float(beta[1]), c=float(beta[0]),
        covariance=covariance, sigma2=sigma2, dof=dof,
    )


def _require_concave(fit):
    if not fit.a > 0.0:
        raise NonConcaveFit(f"quadratic metamodel has a = {fit.a:.6g} <= 0 (profile not concave)")


def quadratic_max(fit):
    _require_concave(fit)
    return fit.b / (2.0 * fit.a)


def se_stat(fit):
    _require_concave(fit)
    return 1.0 / math.sqrt(2.0 * fit.a)


def se_mc_squared(fit):
    """Delta-method variance of ``b / (2a)`` from the regression covariances."""
    a, b = fit.a, fit.b
    if a == 0.0:
        raise ZeroCurvature("a = 0: the quadratic maximiser is undefined")
    value = (fit.var_b - (2.0 * b / a) * fit.cov_ab + (b * b / (a * a)) * fit.var_a) / (4.0 * a * a)
    # a quadratic form in a PSD matrix; only rounding can push it below zero
    return max(value, 0.0)


def cutoff_delta(fit, se_mc_sq, confidence=0.95):
    """Monte Carlo adjusted cutoff ``chi2_1(confidence) * (a * se_mc**2 + 1/2)``.

    The total standard error adds the two variances before the square root.
    """
    _require_concave(fit)
    if not 0.0 < confidence < 1.0:
        raise InvalidConfidence(f"confidence must be in (0, 1), got {confidence}")
    if se_mc_sq < 0.0:
        raise ValueError(f"se_mc_squared must be non-negative, got {se_mc_sq}")
    stat_sq = 1.0 / (2.0 * fit.a)
    delta = chi2_1_ppf(confidence) * (fit.a * se_mc_sq + 0.5)
    return ErrorBudget(
        se_stat=math.sqrt(stat_sq),
        se_mc=math.sqrt(se_mc_sq),
        se_total=math.sqrt(se_mc_sq + stat_sq),
        delta=delta,
        confidence=float(confidence),
    )
