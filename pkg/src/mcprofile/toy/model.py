"""Lognormal latent-variable toy model.

``Y | X ~ lognormal(X, sigma^2)`` with ``X ~ N(phi, sigma^2)``, so marginally
``log Y ~ N(phi, 2 sigma^2)``. The likelihood is estimated by averaging the
conditional density over J latent draws, with draws frozen by seed: the
n-th observation uses seed ``s + n - 1`` and profile point k (1-based) uses
base seed ``s + N (k - 1)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, InvalidConfig, OptimizationFailure
from ..profile_io import ProfilePoints
from .rng import PURPOSE_DATA, PURPOSE_LIKELIHOOD, SeededStream, normal_block

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

SIGMA_BRACKET = math.log(10.0)  # search log(sigma) within +-ln(10) of the moment guess
SIGMA_SCAN = 11
SIGMA_TOL = 1e-5

# Profile grid half-width in standard errors of mean(log y). Narrow grids
# leave the J=3 Monte Carlo noise (several log units per point) swamping the
# curvature signal within the smoother span.
PROFILE_HALF_WIDTH = 10.5


@dataclass(frozen=True)
class ToySpec:
    n: int = 50
    j: int = 3
    phi0: float = 0.0
    sigma0: float = 1.0
    k: int = 25
    master_seed: int = 0

    def __post_init__(self):
        for name in ("n", "j", "k"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidConfig(f"{name} must be a positive integer, got {value}")
        if self.k < 5:
            raise InvalidConfig(f"k must be at least 5, got {self.k}")
        if not (math.isfinite(self.phi0) and self.sigma0 > 0 and math.isfinite(self.sigma0)):
            raise InvalidConfig("phi0 must be finite and sigma0 positive")
        if self.master_seed < 0:
            raise InvalidConfig(f"master seed must be non-negative, got {self.master_seed}")

    @property
    def seeds_per_replicate(self):
        return self.n * self.k


def _check_positive(y, name="y"):
    y = np.asarray(y, dtype=float)
    if np.any(~(y > 0.0)) or not np.all(np.isfinite(y)):
        raise DomainError(f"{name} must be positive and finite")
    return y


def lognormal_logpdf(y, mu, tau2):
    y = _check_positive(y)
    tau2 = np.asarray(tau2, dtype=float)
    if np.any(~(tau2 > 0.0)):
        raise DomainError("tau2 must be positive")
    logy = np.log(y)
    return -logy - 0.5 * np.log(tau2) - LOG_SQRT_2PI - (logy - mu) ** 2 / (2.0 * tau2)


def lognormal_density(y, mu, tau2):
    """Lognormal density with log-scale mean ``mu`` and variance ``tau2``."""
    value = np.exp(lognormal_logpdf(y, mu, tau2))
    return float(value) if np.ndim(value) == 0 else value


def _mc_logdensity(logy, phi, sigma, draws):
    """``log((1/J) sum_j f_LN(y; phi + sigma*eps_j, sigma^2))`` row by row.

    ``logy`` has shape ``(N,)`` and ``draws`` ``(N, J)``; computed with a
    log-sum-exp so that small J does not underflow in the tails.
    """
    z = (logy[:, None] - phi - sigma * draws) / sigma
    terms = -0.5 * z * z
    top = np.max(terms, axis=1)
    lse = top + np.log(np.mean(np.exp(terms - top[:, None]), axis=1))
    return lse - logy - math.log(sigma) - LOG_SQRT_2PI


def _likelihood_draws(s, nobs, j, master_seed):
    if s < 0:
        raise ValueError(f"seed must be non-negative, got {s}")
    return normal_block(s, nobs, j, master_seed, PURPOSE_LIKELIHOOD)


def mc_density(y, phi, sigma, seed, j, master_seed=0):
    """Monte Carlo estimate of the marginal density of one observation."""
    logy = np.log(_check_positive(np.atleast_1d(float(y))))
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    draws = SeededStream(seed, master_seed).normals(j)[None, :]
    return float(np.exp(_mc_logdensity(logy, phi, sigma, draws))[0])


def mc_loglik(phi, sigma, y, s, j, master_seed=0):
    """Monte Carlo log likelihood; observation n (1-based) uses seed ``s + n - 1``."""
    y = _check_positive(np.atleast_1d(y))
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    draws = _likelihood_draws(s, len(y), j, master_seed)
    return float(np.sum(_mc_logdensity(np.log(y), phi, sigma, draws)))


def exact_loglik(phi, sigma, y):
    """Exact log likelihood, using ``log Y ~ N(phi, 2 sigma^2)``."""
    return float(np.sum(lognormal_logpdf(y, phi, 2.0 * sigma * sigma)))


def exact_profile(phi, y):
    """Exact profile log likelihood of ``phi``, maximised over ``sigma`` in closed form."""
    y = _check_positive(np.atleast_1d(y))
    logy = np.log(y)
    m = np.mean((logy - phi) ** 2)
    if not m > 0.0:
        raise DomainError("profile undefined: all log(y) equal phi")
    nobs = len(y)
    return float(-0.5 * nobs * (1.0 + math.log(2.0 * math.pi) + math.log(m)) - np.sum(logy))


def exact_interval(y, cutoff):
    """Exact profile interval ``{phi : profile(phi) > max - cutoff}``.

    The profile is ``-(N/2) log(v + (phi - mean)^2)`` up to a constant, with
    ``v`` the biased variance of ``log y``, so the interval is symmetric about
    the mean of ``log y`` with half-width ``sqrt(v (exp(2 cutoff / N) - 1))``.
    """
    logy = np.log(_check_positive(np.atleast_1d(y)))
    centre = float(np.mean(logy))
    v = float(np.mean((logy - centre) ** 2))
    half = math.sqrt(v * math.expm1(2.0 * cutoff / len(logy)))
    return centre - half, centre + half


def _golden_max(f, lo, hi, f_lo=None, f_hi=None, tol=SIGMA_TOL):
    """Golden-section search for a maximum of ``f`` on ``[lo, hi]``."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _maximise_sigma(phi, logy, draws):
    """Fixed-draw maximisation of the Monte Carlo log likelihood over sigma.

    A coarse scan on log(sigma) across the bracket locates the best cell;
    golden-section search then refines within its two neighbouring cells.
    Returns ``(sigma_hat, value)``.
    """
    guess = 0.5 * math.log(0.5 * float(np.mean((logy - phi) ** 2)))
    if not math.isfinite(guess):
        raise OptimizationFailure(f"cannot bracket sigma at phi={phi!r}")

    def objective(log_sigma):
        value = float(np.sum(_mc_logdensity(logy, phi, math.exp(log_sigma), draws)))
        return value if math.isfinite(value) else -math.inf

    scan = np.linspace(guess - SIGMA_BRACKET, guess + SIGMA_BRACKET, SIGMA_SCAN)
    values = np.array([objective(x) for x in scan])
    if not np.any(np.isfinite(values)):
        raise OptimizationFailure(f"objective not finite anywhere in the sigma bracket at phi={phi!r}")
    best = int(np.argmax(values))
    lo = scan[max(best - 1, 0)]
    hi = scan[min(best + 1, SIGMA_SCAN - 1)]
    x, fx = _golden_max(objective, lo, hi)
    if values[best] > fx:
        x, fx = scan[best], values[best]
    return math.exp(x), fx


def sigma_bracket(phi, y):
    """The ``(lo, hi)`` sigma range searched by :func:`profile_sigma`."""
    logy = np.log(_check_positive(np.atleast_1d(y)))
    guess = math.sqrt(0.5 * float(np.mean((logy - phi) ** 2)))
    return guess / 10.0, guess * 10.0


def profile_seed(s, nobs, k_index):
    """First seed of profile point ``k_index`` (1-based)."""
    if k_index < 1:
        raise ValueError(f"k_index is 1-based, got {k_index}")
    return s + nobs * (k_index - 1)


def profile_sigma(phi_k, y, s, j, k_index, master_seed=0):
    """Maximise the fixed-seed Monte Carlo log likelihood over sigma at ``phi_k``.

    Returns
    -------
    (float, float)
        The maximising sigma and the attained Monte Carlo log likelihood.
    """
    y = _check_positive(np.atleast_1d(y))
    seed = profile_seed(s, len(y), k_index)
    draws = _likelihood_draws(seed, len(y), j, master_seed)
    return _maximise_sigma(float(phi_k), np.log(y), draws)


def simulate_data(spec, replicate_index):
    """Draw ``N`` observations with ``log y = phi0 + sqrt(2) sigma0 z``."""
    z = SeededStream(replicate_index, spec.master_seed, PURPOSE_DATA).normals(spec.n)
    return np.exp(spec.phi0 + math.sqrt(2.0) * spec.sigma0 * z)


def profile_grid(spec, y):
    """K equally spaced values over ``mean(log y) +- 10.5 sqrt(var(log y) / N)``."""
    logy = np.log(_check_positive(y))
    centre = float(np.mean(logy))
    half = PROFILE_HALF_WIDTH * math.sqrt(float(np.var(logy, ddof=1)) / len(logy))
    return np.linspace(centre - half, centre + half, spec.k)


def run_profile(spec, y, s=0):
    """Monte Carlo profile of ``phi`` for data ``y``, with base seed ``s``."""
    y = _check_positive(np.atleast_1d(y))
    logy = np.log(y)
    grid = profile_grid(spec, y)
    nobs = len(y)
    draws = _likelihood_draws(s, nobs * spec.k, spec.j, spec.master_seed).reshape(spec.k, nobs, spec.j)
    values = np.empty(spec.k)
    for idx, phi in enumerate(grid):
        _, values[idx] = _maximise_sigma(float(phi), logy, draws[idx])
    return ProfilePoints(grid, values)
