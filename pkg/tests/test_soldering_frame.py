"""
tests/test_soldering_frame.py

Soldering conventions and the null frame built on them.
"""

import math

import numpy as np
import pytest
from sympy import Rational, sqrt

from src.core.errors import ConventionError, FrameSingularityError
from src.fields.polynomial import PX, PY, PZ, gaussian
from src.spinor.frame import NullFrame, dyad_at_point, dyad_contraction, dyad_spinor, spinor_vector
from src.spinor.soldering import SolderingSet, chart_derivative, validate_conventions


def test_shipped_conventions_measure_c():
    report = validate_conventions(SolderingSet.shipped())
    assert report.c == Rational(-1, 2)
    assert "tau Hermitian" in report.checks


def test_opposite_orientation_is_also_valid():
    report = validate_conventions(SolderingSet.candidate(orientation=1))
    assert report.c in (Rational(1, 2), Rational(-1, 2))


def test_mutated_sigma_is_rejected():
    broken = SolderingSet.shipped().with_sigma_entry(2, 0, 0, 1)
    with pytest.raises(ConventionError, match="det"):
        validate_conventions(broken)


def test_non_symmetric_sigma_is_rejected():
    broken = SolderingSet.shipped().with_sigma_entry(0, 0, 1, 2 / sqrt(2))
    with pytest.raises(ConventionError, match="symmetric"):
        validate_conventions(broken)


def test_bad_tau_is_rejected():
    broken = SolderingSet.shipped().with_tau([[1, 0], [0, 2]])
    with pytest.raises(ConventionError, match="tau"):
        validate_conventions(broken)


def test_chart_derivative_components():
    d00, d01, d11 = chart_derivative().comps
    assert d01 == PX
    assert d00 + d11 == PY * gaussian(0, -2)
    assert d00 - d11 == 2 * PZ


@pytest.mark.parametrize("theta, phi", [(0.3, 0.0), (1.1, 0.7), (2.0, -2.4), (2.9, 3.0)])
def test_dyad_reproduces_tetrad(theta, phi):
    o, iota = dyad_spinor(theta, phi)
    frame = NullFrame(0.0, 1.0, theta, phi, o, iota)
    assert dyad_contraction(o, iota) == pytest.approx(1.0)
    for value in frame.residuals().values():
        assert value < 1e-12


def test_spinor_vector_of_o_is_null():
    o, _ = dyad_spinor(1.1, 0.7)
    vec = spinor_vector(o, o)
    minkowski = vec[0] ** 2 - np.sum(vec[1:] ** 2)
    assert abs(minkowski) < 1e-12


def test_phase_rotation_keeps_tetrad():
    frame = dyad_at_point(3.0, 2.0, 1.1, 0.7)
    rotated = frame.with_phase(0.9)
    assert np.allclose(rotated.l, frame.l)
    assert np.allclose(rotated.n, frame.n)
    assert np.allclose(rotated.m, frame.m * np.exp(1.8j))


@pytest.mark.parametrize("r, theta", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, math.pi - 1e-5)])
def test_frame_singularities(r, theta):
    with pytest.raises(FrameSingularityError):
        dyad_at_point(1.0, r, theta, 0.3)
