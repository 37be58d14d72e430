"""
tests/test_wave.py

Sphere rules, Kirchhoff evaluation and the closed-form decay estimates.
"""

import math

import numpy as np
import pytest

from src.core.errors import ContractViolation, FrameSingularityError, OrderCapError
from src.core.utils import japanese_bracket
from src.fields.profile import ProfileScalar
from src.wave.checks import verify_null_derivatives, verify_polynomial_solutions, verify_sphere_integrals
from src.wave.estimates import (
    decay_envelope,
    doubling_change,
    doubling_flags,
    envelope_consistency,
    quadrature_compare,
    sphere_weight_integral,
    sphere_weight_oracle,
)
from src.wave.kirchhoff import (
    WaveScalar,
    kirchhoff_eval,
    null_derivatives,
    profile_wave,
    wave_derivative,
)
from src.wave.quadrature import SphereQuadrature, product_rule


def test_product_rule_weights():
    directions, weights = product_rule(8, 16)
    assert weights.sum() == pytest.approx(4 * math.pi)
    np.testing.assert_allclose(np.linalg.norm(directions, axis=1), 1.0)


def test_radial_rule_weights(radial_rule):
    directions, weights = radial_rule.nodes((0.0, 0.0, 3.0), 2.0)
    assert weights.sum() == pytest.approx(4 * math.pi, rel=1e-12)
    np.testing.assert_allclose(np.linalg.norm(directions, axis=1), 1.0)


def test_radial_rule_falls_back_at_the_origin(radial_rule):
    directions, _ = radial_rule.nodes((0.0, 0.0, 0.0), 2.0)
    assert directions.shape == (64 * 128, 3)


def test_quadrature_validation():
    with pytest.raises(ContractViolation):
        SphereQuadrature("lebedev", 8, 8)
    with pytest.raises(ContractViolation):
        SphereQuadrature("gauss", 0, 8)
    assert SphereQuadrature("gauss", 8, 16).doubled() == SphereQuadrature("gauss", 16, 32)


@pytest.mark.parametrize("rule", ["gauss_rule", "radial_rule"])
def test_polynomial_solutions(rule, request):
    report = verify_polynomial_solutions(request.getfixturevalue(rule))
    assert report.passed, report.failures[:3]


def test_null_derivatives_of_polynomial_solution(gauss_rule):
    assert verify_null_derivatives(gauss_rule).passed


def test_kirchhoff_initial_value():
    wave = profile_wave(-2.5, 3.0, (1, 0, 0))
    point = (0.4, -1.0, 2.0)
    assert kirchhoff_eval(wave, 0.0, point) == pytest.approx(wave.f.evaluate(*point))


def test_kirchhoff_rejects_negative_time():
    with pytest.raises(ContractViolation):
        kirchhoff_eval(profile_wave(-2.0), -0.1, (1.0, 0.0, 0.0))


def test_time_derivative_matches_difference_quotient(gauss_rule):
    wave = profile_wave(-2.5)
    point = (0.5, 0.2, 0.1)
    h = 1e-3
    quotient = (kirchhoff_eval(wave, 1.0 + h, point, gauss_rule) - kirchhoff_eval(wave, 1.0 - h, point, gauss_rule)) / (2 * h)
    assert kirchhoff_eval(wave.time_derivative(), 1.0, point, gauss_rule) == pytest.approx(quotient, rel=1e-4)


def test_derivative_solutions_share_a_cache():
    wave = profile_wave(-2.0)
    assert wave.derivative((1, 0, 0)) is wave.derivative((1, 0, 0))
    assert wave.derivative((0, 0, 0)) is wave


def test_order_cap():
    wave = profile_wave(-2.0, max_order=2)
    assert wave_derivative(wave, (1, 1, 0, 0)).order == 2
    with pytest.raises(OrderCapError):
        wave_derivative(wave, (1, 1, 1, 0))
    with pytest.raises(OrderCapError):
        wave.derivative((1, 0, 0)).derivative((0, 1, 0)).time_derivative()


def test_wave_derivative_checks_the_multi_index():
    with pytest.raises(ContractViolation):
        wave_derivative(profile_wave(-2.0), (1, 0, 0))


def test_wave_combination_keeps_the_larger_order():
    wave = profile_wave(-2.0)
    combined = wave + wave.derivative((1, 0, 0))
    assert combined.order == 1
    assert (wave - wave).is_zero()


def test_null_derivatives_undefined_at_origin():
    with pytest.raises(FrameSingularityError):
        null_derivatives(WaveScalar(ProfileScalar.power(-2.0)), 1.0, (0.0, 0.0, 0.0))


@pytest.mark.parametrize("delta", [-3.5, -2.0, -1.0, 0.5, 1.5])
@pytest.mark.parametrize("t, r", [(0.5, 2.0), (10.0, 3.0), (2.0, 50.0)])
def test_sphere_integral_closed_form(delta, t, r):
    assert sphere_weight_integral(delta, t, r) == pytest.approx(sphere_weight_oracle(delta, t, r), rel=1e-11)


@pytest.mark.parametrize("t, r", [(0.0, 3.0), (4.0, 0.0)])
def test_sphere_integral_on_a_point_sphere(t, r):
    expected = 4 * math.pi * japanese_bracket(t - r) ** -1.5
    assert sphere_weight_integral(-1.5, t, r) == pytest.approx(expected)


def test_sphere_integral_rejects_negative_arguments():
    with pytest.raises(ContractViolation):
        sphere_weight_integral(-2.5, -1.0, 1.0)


def test_radial_rule_resolves_far_spheres(radial_rule):
    _, _, error = quadrature_compare(-3.5, 50.0, 50.0, radial_rule)
    assert error < 1e-6


def test_sphere_integral_suite(radial_rule):
    report = verify_sphere_integrals(radial_rule)
    assert report.passed, report.failures[:3]
    assert len(report.details["rows"]) == 8 * 25


def test_envelope_branches():
    bu, bv = japanese_bracket(3.0), japanese_bracket(4.0)
    assert decay_envelope(-2.5, 0, 0, 0, 3.0, 4.0) == pytest.approx(bu**-1.5 / bv)
    assert decay_envelope(-2.5, 1, 1, 0, 3.0, 4.0) == pytest.approx(bu**-2.5 / bv**2)
    assert decay_envelope(-1.0, 0, 0, 0, 3.0, 4.0) == pytest.approx((math.log(bv) - math.log(bu)) / (bv - bu))
    assert decay_envelope(-1.0, 0, 0, 0, 2.0, 2.0) == pytest.approx(1.0 / japanese_bracket(2.0))
    assert decay_envelope(0.5, 0, 0, 0, 3.0, 4.0) == pytest.approx(bv**0.5)


def test_envelope_consistency():
    envelopes = np.array([1.0, 0.5, 0.25, 0.125])
    check = envelope_consistency(2.0 * envelopes, envelopes)
    assert check.passed
    assert check.constant == pytest.approx(2.0)
    assert check.worst_ratio == pytest.approx(1.0)

    growing = envelope_consistency(envelopes * np.array([1.0, 1.0, 1.0, 100.0]), envelopes)
    assert not growing.passed

    assert envelope_consistency(np.zeros(4), envelopes).passed
    with pytest.raises(ContractViolation):
        envelope_consistency([1.0], [1.0, 2.0])


def test_doubling_diagnostics(gauss_rule):
    assert doubling_change(lambda q: 4.0, gauss_rule) == 0.0
    flagged = doubling_flags(lambda point, q: float(q.n_theta * point), [1.0, 2.0], gauss_rule)
    assert [point for point, _ in flagged] == [1.0, 2.0]
