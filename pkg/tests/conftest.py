"""
tests/conftest.py

Shared fixtures: a seeded generator and two sphere rules.
"""

import numpy as np
import pytest

from src.wave.quadrature import SphereQuadrature


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def gauss_rule():
    return SphereQuadrature("gauss", 32, 64)


@pytest.fixture
def radial_rule():
    return SphereQuadrature("radial", 64, 128)
