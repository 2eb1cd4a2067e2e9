import numpy as np
import pytest

from morsebath import DEFAULT_RHO0, SystemConfig, time_grid


@pytest.fixture
def system():
    return SystemConfig(omega_s=2.0, rho0=DEFAULT_RHO0)


@pytest.fixture
def short_grid():
    return time_grid(5.0, 0.01)


@pytest.fixture
def full_grid():
    return time_grid(20.0, 0.01)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
