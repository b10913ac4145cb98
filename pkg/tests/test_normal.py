import statistics

import numpy as np
import pytest
from scipy import stats

from mcprofile.errors import InvalidConfidence
from mcprofile.normal import chi2_1_ppf, norm_ppf


def test_matches_scipy_across_range():
    p = np.concatenate([np.linspace(1e-10, 1 - 1e-10, 20001), [1e-300, 1e-50, 2.0**-53]])
    assert np.max(np.abs(norm_ppf(p) - stats.norm.ppf(p))) < 1e-9


@pytest.mark.parametrize("p", [1e-7, 0.025, 0.3, 0.5, 0.8, 0.975, 1 - 1e-7])
def test_matches_stdlib_scalar(p):
    assert norm_ppf(p) == pytest.approx(statistics.NormalDist().inv_cdf(p), rel=1e-12, abs=1e-15)


def test_symmetry():
    p = np.linspace(0.001, 0.499, 50)
    np.testing.assert_allclose(norm_ppf(p), -norm_ppf(1 - p), rtol=1e-13)


def test_rejects_out_of_range():
    with pytest.raises(ValueError):
        norm_ppf(0.0)
    with pytest.raises(ValueError):
        norm_ppf(np.array([0.5, 1.0]))


@pytest.mark.parametrize("conf", [0.5, 0.8, 0.9, 0.95, 0.99, 0.999999])
def test_chi2_quantile(conf):
    assert chi2_1_ppf(conf) == pytest.approx(stats.chi2.ppf(conf, 1), rel=1e-10)


def test_chi2_95_is_196_squared():
    assert chi2_1_ppf(0.95) == pytest.approx(1.959963984540054**2, rel=1e-12)


@pytest.mark.parametrize("conf", [0.0, 1.0, 1.5, -0.2])
def test_chi2_invalid_confidence(conf):
    with pytest.raises(InvalidConfidence):
        chi2_1_ppf(conf)
