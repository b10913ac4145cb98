import math

import numpy as np
import pytest

from mcprofile.core import WARN_CI_BOUNDARY, WARN_MULTIMODAL, mcap
from mcprofile.errors import InvalidConfidence, NonConcaveFit
from mcprofile.profile_io import ProfilePoints
from mcprofile.toy.model import ToySpec, exact_profile, run_profile, simulate_data

CHI2_95_HALF = 1.9207294103470612


def test_exact_quadratic(quadratic_points):
    res = mcap(quadratic_points, span=1.0)
    step = res.smooth_fit.grid[1] - res.smooth_fit.grid[0]
    assert res.delta == pytest.approx(CHI2_95_HALF, rel=1e-6)
    assert abs(res.mle - 1.0) <= step
    half = math.sqrt(CHI2_95_HALF / 5.0)
    assert res.ci[0] == pytest.approx(1 - half, abs=step)
    assert res.ci[1] == pytest.approx(1 + half, abs=step)
    assert res.budget.se_mc == pytest.approx(0.0, abs=1e-6)
    assert res.warnings == []


def test_linear_bias_shift(quadratic_points):
    base = mcap(quadratic_points, span=1.0)
    biased = mcap(quadratic_points.shifted(3.0, 2.0), span=1.0)
    step = base.smooth_fit.grid[1] - base.smooth_fit.grid[0]
    assert biased.delta == pytest.approx(base.delta, rel=1e-6)
    assert abs(biased.width - base.width) <= 2 * step
    assert biased.mle - base.mle == pytest.approx(0.2, abs=step)
    assert biased.quadratic_max - base.quadratic_max == pytest.approx(0.2, rel=1e-8)


def test_vertical_shift_invariance(rng):
    phi = np.linspace(-1, 1, 30)
    pts = ProfilePoints(phi, -8 * phi**2 + rng.normal(0, 0.5, 30))
    a, b = mcap(pts), mcap(pts.shifted(-1234.5))
    assert a.mle == b.mle
    assert a.delta == pytest.approx(b.delta, rel=1e-9)
    assert a.ci == b.ci


def test_confidence_monotone(rng):
    phi = np.linspace(-1, 1, 30)
    pts = ProfilePoints(phi, -8 * phi**2 + rng.normal(0, 0.5, 30))
    r95, r99 = mcap(pts, 0.95), mcap(pts, 0.99)
    assert r99.ci[0] <= r95.ci[0] and r95.ci[1] <= r99.ci[1]


def test_grid_refinement(rng):
    phi = np.linspace(-1, 1, 30)
    pts = ProfilePoints(phi, -8 * phi**2 + rng.normal(0, 0.5, 30))
    coarse, fine = mcap(pts, ngrid=500), mcap(pts, ngrid=1000)
    step = coarse.smooth_fit.grid[1] - coarse.smooth_fit.grid[0]
    assert abs(coarse.ci[0] - fine.ci[0]) <= step
    assert abs(coarse.ci[1] - fine.ci[1]) <= step


def test_ci_invariants(rng):
    for _ in range(20):
        phi = np.sort(rng.uniform(-2, 2, 25))
        pts = ProfilePoints(phi, -3 * (phi - 0.3) ** 2 + rng.normal(0, 0.4, 25))
        res = mcap(pts)
        assert res.ci[0] <= res.mle <= res.ci[1]
        assert phi.min() <= res.ci[0] and res.ci[1] <= phi.max()
        grid, sm = res.smooth_fit.grid, res.smooth_fit.smoothed
        inside = (grid > res.ci[0]) & (grid < res.ci[1])
        passing = sm.max() - sm < res.delta
        assert np.all(grid[passing] >= res.ci[0]) and np.all(grid[passing] <= res.ci[1])
        assert passing[inside].all() or WARN_MULTIMODAL in res.warnings


def test_boundary_warning():
    phi = np.linspace(0, 1, 15)
    res = mcap(ProfilePoints(phi, -0.5 * (phi - 0.5) ** 2), span=1.0)
    assert WARN_CI_BOUNDARY in res.warnings
    assert res.ci == (0.0, 1.0)


def test_multimodal_warning():
    phi = np.linspace(-3, 3, 61)
    y = -0.1 * phi**2 + np.exp(-((phi + 1.5) ** 2) / 0.05) * 0.0 + 0.8 * np.cos(4 * phi)
    res = mcap(ProfilePoints(phi, y), span=0.3)
    assert WARN_MULTIMODAL in res.warnings


def test_convex_profile_fails():
    phi = np.linspace(-1, 1, 11)
    with pytest.raises(NonConcaveFit):
        mcap(ProfilePoints(phi, 2 * phi**2 + 0.01 * np.sin(7 * phi)))


def test_invalid_confidence(quadratic_points):
    with pytest.raises(InvalidConfidence):
        mcap(quadratic_points, confidence=1.5)


def test_fit_table_columns(quadratic_points):
    res = mcap(quadratic_points, span=1.0, ngrid=100)
    table = res.fit_table
    assert table.shape == (100, 3)
    np.testing.assert_allclose(table[:, 2], -5 * (table[:, 0] - 1) ** 2, atol=1e-9)


def test_toy_profile_contains_exact_mle():
    spec = ToySpec(master_seed=42)
    y = simulate_data(spec, 0)
    res = mcap(run_profile(spec, y))
    assert res.ci[0] <= np.mean(np.log(y)) <= res.ci[1]
    assert res.delta > CHI2_95_HALF
