"""Local quadratic regression of a Monte Carlo profile over an evaluation grid.

Neighbourhoods follow the tricube rule of the reference MCAP code: with
``q = trunc(span * K)``, points strictly closer than the q-th smallest
distance are included and weighted ``(1 - (d / dmax)**3)**3``, where ``dmax``
is the largest included distance. The farthest included point therefore gets
weight zero. Every grid value is a direct weighted fit; nothing is
interpolated between anchor points.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNeighborhood, InvalidConfig, SingularLocalFit, SpanTooSmall


@dataclass(frozen=True)
class SmootherConfig:
    """Span (fraction of points in each local fit) and grid resolution."""

    span: float = 0.75
    ngrid: int = 1000

    def __post_init__(self):
        if not 0.0 < self.span <= 1.0:
            raise InvalidConfig(f"lambda must be in (0, 1], got {self.span}")
        if int(self.ngrid) != self.ngrid or self.ngrid < 2:
            raise InvalidConfig(f"ngrid must be an integer >= 2, got {self.ngrid}")

    def neighbours(self, k):
        """Order statistic used as the neighbourhood cut for ``k`` points."""
        q = int(self.span * k)
        if q < 3:
            raise SpanTooSmall(f"trunc(lambda * K) = trunc({self.span} * {k}) = {q} < 3")
        return q


@dataclass(frozen=True, eq=False)
class SmoothFit:
    grid: np.ndarray
    smoothed: np.ndarray
    argmax: float

    @property
    def argmax_index(self):
        return int(np.argmax(self.smoothed))


def _tricube_rows(eval_points, parameters, q):
    """Tricube weights, one row per evaluation point (shape ``(G, K)``)."""
    dist = np.abs(parameters[None, :] - eval_points[:, None])
    cut = np.partition(dist, q - 1, axis=1)[:, q - 1]
    included = dist < cut[:, None]
    maxdist = np.max(np.where(included, dist, -np.inf), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = dist / maxdist[:, None]
    ratio = np.where(included & (maxdist[:, None] > 0.0), ratio, 0.0)
    weights = np.where(included, (1.0 - ratio**3) ** 3, 0.0)
    return weights, maxdist


def tricube_weights(eval_point, parameters, span):
    """Tricube neighbourhood weights of ``parameters`` around ``eval_point``.

    Parameters
    ----------
    eval_point : float
    parameters : array_like, shape (K,)
    span : float
        Fraction of points in the neighbourhood; ``trunc(span * K)`` must be
        at least 3.

    Returns
    -------
    ndarray, shape (K,)
        Non-negative weights. When every included point sits exactly on
        ``eval_point`` the included points get weight 1.

    Notes
    -----
    No check is made here that enough distinct points end up with positive
    weight; :func:`smooth` and the metamodel fit enforce that.
    """
    parameters = np.asarray(parameters, dtype=float)
    q = SmootherConfig(span=span, ngrid=2).neighbours(len(parameters))
    weights, _ = _tricube_rows(np.array([float(eval_point)]), parameters, q)
    return weights[0]


def _distinct_positive(weights, parameters):
    """Number of distinct parameter values carrying positive weight, per row."""
    order = np.argsort(parameters, kind="stable")
    sorted_params = parameters[order]
    starts = np.flatnonzero(np.r_[True, sorted_params[1:] != sorted_params[:-1]])
    positive = weights[:, order] > 0.0
    return np.logical_or.reduceat(positive, starts, axis=1).sum(axis=1)


def local_quadratic(eval_points, parameters, loglik, span):
    """Local quadratic fit evaluated at each of ``eval_points``.

    The fit is done in the scaled offset ``u = (phi - g) / dmax`` so the
    fitted intercept is the smoothed value at ``g`` and the design stays
    well conditioned. Values are fitted relative to ``max(loglik)``, which
    makes a constant profile come back exactly constant.
    """
    eval_points = np.asarray(eval_points, dtype=float)
    parameters = np.asarray(parameters, dtype=float)
    loglik = np.asarray(loglik, dtype=float)
    q = SmootherConfig(span=span, ngrid=2).neighbours(len(parameters))
    weights, maxdist = _tricube_rows(eval_points, parameters, q)

    distinct = _distinct_positive(weights, parameters)
    if np.any(distinct < 3):
        bad = eval_points[np.argmax(distinct < 3)]
        raise DegenerateNeighborhood(
            f"fewer than 3 distinct parameter values have positive weight at {bad!r}; "
            "try a larger lambda"
        )

    scale = np.where(maxdist > 0.0, maxdist, 1.0)
    u = (parameters[None, :] - eval_points[:, None]) / scale[:, None]
    root_w = np.sqrt(weights)
    design = root_w[:, :, None] * np.stack([np.ones_like(u), u, u * u], axis=2)
    offset = np.max(loglik)
    response = root_w * (loglik - offset)[None, :]

    qmat, rmat = np.linalg.qr(design)
    diag = np.abs(np.diagonal(rmat, axis1=1, axis2=2))
    if np.any(diag <= 1e-12 * np.max(diag, axis=1, keepdims=True)):
        raise SingularLocalFit("rank-deficient local design")
    rhs = np.einsum("gki,gk->gi", qmat, response)
    coef = np.linalg.solve(rmat, rhs[:, :, None])[:, :, 0]
    return coef[:, 0] + offset


def smooth(points, config=None):
    """Smooth ``points`` on ``config.ngrid`` equally spaced parameter values.

    The grid spans ``[min(parameters), max(parameters)]``. The argmax is the
    first grid point attaining the maximum, so ties go to the smallest
    parameter value.
    """
    config = config or SmootherConfig()
    parameters = points.parameters
    lo, hi = float(np.min(parameters)), float(np.max(parameters))
    if not hi > lo:
        raise DegenerateNeighborhood("all profile points share one parameter value")
    grid = np.linspace(lo, hi, int(config.ngrid))
    smoothed = local_quadratic(grid, parameters, points.loglik, config.span)
    return SmoothFit(grid=grid, smoothed=smoothed, argmax=float(grid[int(np.argmax(smoothed))]))
