"""
tests/test_tetrad.py
"""

import pytest
import sympy as sp

from src.core.errors import FrameSingularityError
from src.wave.tetrad import (
    PHI,
    R,
    T,
    THETA,
    angular_derivatives,
    commutator_residuals,
    frame_report,
    transport_residuals,
    verify_commutators,
    verify_dyad_transport,
)


def test_commutators_on_sample_functions():
    report = verify_commutators()
    assert report.passed, report.failures
    assert report.trials == 5


def test_commutator_residuals_vanish_on_a_radial_wave():
    expr = sp.sin(T - R) / R * sp.cos(THETA) * sp.sin(PHI)
    assert all(value == 0 for value in commutator_residuals(expr).values())


@pytest.mark.parametrize("theta, phi, r", [(0.4, 0.0, 1.0), (1.3, 2.2, 12.0), (2.6, -1.7, 0.3)])
def test_dyad_transport_at_points(theta, phi, r):
    residuals = transport_residuals(theta, phi, r)
    assert set(residuals) == {"delta o", "delta iota", "delta' o", "delta' iota"}
    assert max(residuals.values()) < 1e-6


def test_dyad_transport_suite():
    report = verify_dyad_transport()
    assert report.passed
    assert report.trials == 32


@pytest.mark.parametrize("theta, r", [(0.0, 1.0), (1e-4, 1.0), (1.0, 0.0)])
def test_angular_derivatives_reject_singular_points(theta, r):
    with pytest.raises(FrameSingularityError):
        angular_derivatives(theta, 0.3, r)


def test_frame_report():
    report = frame_report()
    assert report.passed
    assert report.trials == 16
