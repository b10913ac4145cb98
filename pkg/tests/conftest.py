import numpy as np
import pytest

from mcprofile.profile_io import ProfilePoints


@pytest.fixture
def quadratic_points():
    """Exact quadratic profile -5 (phi - 1)^2 on 21 points over [0, 2]."""
    phi = np.linspace(0.0, 2.0, 21)
    return ProfilePoints(phi, -5.0 * (phi - 1.0) ** 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running simulation checks")
