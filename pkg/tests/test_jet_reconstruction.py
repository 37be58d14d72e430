"""
tests/test_jet_reconstruction.py

Exact space-time splitting, forward reconstruction from Hertz data and
null components in the adapted dyad.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import ContractViolation, FrameSingularityError
from src.core.utils import japanese_bracket
from src.fields.polynomial import random_poly_spinor
from src.peeling.components import (
    directional_derivative,
    exterior_points,
    null_components,
    verify_component_recursion,
)
from src.peeling.jet import WaveJet, splitting_residual, verify_splitting
from src.peeling.reconstruction import (
    ReconstructedField,
    initial_consistency,
    peel_profile_exponent,
    peel_zeta,
    reconstruct_field_at,
)
from src.peeling.scalar_decay import scalar_closed_form
from src.spinor.core import SymSpinor, lower, symmetric_power
from src.spinor.frame import dyad_at_point
from src.wave.kirchhoff import kirchhoff_eval, profile_wave

POINT = np.array([1.2, -0.4, 0.9])


@pytest.mark.parametrize("spin, degree", [(Fraction(1, 2), 3), (Fraction(1), 3), (Fraction(3, 2), 2)])
def test_splitting_is_exact(spin, degree):
    report = verify_splitting(spin, trials=2, seed=0, degree=degree)
    assert report.passed, report.failures


def test_splitting_needs_a_spinor():
    with pytest.raises(ContractViolation):
        verify_splitting(0, trials=1, seed=0)


def test_jet_follows_the_wave_equation():
    jet = WaveJet.random(2, seed=4, degree=3)
    assert jet.order == 4
    assert jet.wave_residual(0).is_zero()
    assert jet.wave_residual(2).is_zero()
    assert not splitting_residual(jet)
    assert jet.shifted()[0] == jet[1]


def test_jet_data_must_match():
    with pytest.raises(ContractViolation):
        WaveJet(random_poly_spinor(1, 1, 0), random_poly_spinor(2, 1, 0))
    with pytest.raises(ContractViolation):
        WaveJet.random(1, seed=0)[4]


def test_profile_exponent():
    assert peel_profile_exponent(1, -2.5) == pytest.approx(-1.5)
    assert peel_profile_exponent(Fraction(1, 2), 0.5) == pytest.approx(0.5)


def test_peel_zeta_checks_the_coefficient_count():
    with pytest.raises(ContractViolation):
        peel_zeta(1, -2.5, [1.0, 2.0])


def test_initial_value_is_g_of_the_hertz_data(gauss_rule):
    field = ReconstructedField(peel_zeta(1, -2.5, [1.0, 0.5j, -0.3]))
    assert initial_consistency(field, [POINT, 2 * POINT, (0.0, 3.0, -1.0)], gauss_rule) < 1e-12


def test_field_equations_hold_after_evolution(gauss_rule):
    field = ReconstructedField(peel_zeta(1, -2.5, [0.7, -0.2 + 0.4j, 1.0]))
    evolution, divergence = field.field_equation_residual(1.5, POINT, gauss_rule)
    assert evolution < 1e-8
    assert divergence < 1e-8


def test_degenerate_hertz_data():
    field = ReconstructedField(peel_zeta(Fraction(1, 2), -1.5, [0, 0]))
    assert field.is_degenerate()
    assert field.field.is_zero()


def test_reconstruction_domain():
    zeta = peel_zeta(Fraction(1, 2), -1.5, [1.0, 1.0])
    with pytest.raises(ContractViolation):
        reconstruct_field_at(zeta, -1.0, POINT)
    with pytest.raises(FrameSingularityError):
        reconstruct_field_at(zeta, 1.0, (0.0, 0.0, 0.0))
    assert reconstruct_field_at(zeta, 0.0, POINT).valence == 1


@pytest.mark.parametrize("valence", [1, 2, 3])
def test_null_components_of_dyad_powers(valence):
    frame = dyad_at_point(0.0, 1.0, 1.1, 0.7)
    outgoing = null_components(symmetric_power(lower(frame.o), valence), frame)
    incoming = null_components(symmetric_power(lower(frame.iota), valence), frame)
    np.testing.assert_allclose(outgoing, [0] * valence + [1], atol=1e-12)
    np.testing.assert_allclose(incoming, [(-1) ** valence] + [0] * valence, atol=1e-12)


def test_null_components_of_a_scalar():
    frame = dyad_at_point(0.0, 1.0, 1.1, 0.7)
    assert null_components(SymSpinor([2.5 + 1j]), frame) == [2.5 + 1j]


def test_directional_derivative_along_time(gauss_rule):
    wave = profile_wave(-2.5, 1.0, (0, 1, 0))
    along_t = directional_derivative(wave, (1.0, 0.0, 0.0, 0.0))
    expected = kirchhoff_eval(wave.time_derivative(), 2.0, POINT, gauss_rule)
    assert kirchhoff_eval(along_t, 2.0, POINT, gauss_rule) == pytest.approx(expected)


@pytest.mark.parametrize("spin", [Fraction(0), Fraction(1, 2)])
def test_component_recursion(spin, radial_rule):
    report = verify_component_recursion(spin, points=exterior_points(3, seed=1), quadrature=radial_rule)
    assert report.passed, report.failures


def _radial_potential(exponent, t, x):
    """Closed-form wave with data (0, <r>^exponent) at r > 0."""
    r = float(np.linalg.norm(x))
    u, v = t - r, t + r
    power = exponent + 2.0
    return (japanese_bracket(v) ** power - japanese_bracket(u) ** power) / (2.0 * r * power)


def _spin_half_by_differences(coefficients, exponent, t, x, h=1e-4):
    """phi = Curl chi + d_t chi / sqrt 2 with chi = sqrt 2 c_A W, W differenced in space."""
    x = np.asarray(x, dtype=float)
    grad = np.array([
        (_radial_potential(exponent, t, x + h * e) - _radial_potential(exponent, t, x - h * e)) / (2 * h)
        for e in np.eye(3)
    ])
    s = 1.0 / np.sqrt(2.0)
    d00 = s * (-1j * grad[1] + grad[2])
    d01 = s * grad[0]
    d11 = s * (-1j * grad[1] - grad[2])
    d_t = scalar_closed_form(exponent, t, float(np.linalg.norm(x)))
    c0, c1 = coefficients
    root2 = np.sqrt(2.0)
    return (
        root2 * (d01 * c0 - d00 * c1) + c0 * d_t,
        root2 * (d11 * c0 - d01 * c1) + c1 * d_t,
    )


def test_spin_half_reconstruction_matches_finite_differences(radial_rule):
    coefficients = [1.0 + 0.5j, -0.3 + 2.0j]
    delta = -2.5
    zeta = peel_zeta(Fraction(1, 2), delta, coefficients)
    x = 2.0 * np.array([0.48, 0.6, 0.64])
    value = reconstruct_field_at(zeta, 5.0, x, radial_rule)
    expected = _spin_half_by_differences(
        coefficients, peel_profile_exponent(Fraction(1, 2), delta), 5.0, x
    )
    scale = max(abs(c) for c in expected)
    for got, want in zip(value.comps, expected):
        assert abs(got - want) < 1e-6 * scale
