import numpy as np
import pytest

from pademor import modal

PAPER_Z0 = 12 + 0.5j


@pytest.fixture(scope="session")
def helmholtz():
    """Square-domain Helmholtz model at the reference configuration
    (nu^2 = 12, theta = pi/3, 40x40 modes, energy inner product)."""
    return modal.build_rectangle_helmholtz()


@pytest.fixture(scope="session")
def paper_z0():
    return PAPER_Z0


@pytest.fixture
def two_pole():
    return modal.build_synthetic([1.0, 2.0], [1.0, 1.0])


@pytest.fixture
def three_pole():
    return modal.build_synthetic([1.0, 2.0, 4.0], [1.0, 0.5, 0.25])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
