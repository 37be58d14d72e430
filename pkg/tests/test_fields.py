"""
tests/test_fields.py

Scalar backends (polynomial, profile, grid) and weighted norms.
"""

import math

import numpy as np
import pytest

from src.core.errors import ContractViolation, NonMembershipError, ResolutionError
from src.fields.grid import GridField, check_resolved, grid_axis, inverse_laplacian_power
from src.fields.polynomial import X, Y, PolyScalar, gaussian, random_poly_spinor
from src.fields.profile import ProfileScalar
from src.fields.spinor_field import SpinorField
from src.fields.weighted_norm import is_member, norm_exponent, weighted_norm


def test_poly_evaluates_in_the_chart():
    p = PolyScalar(X * Y)
    assert p.evaluate(1.0, 2.0, 0.0) == pytest.approx(2.0 * 2.0)
    assert p.evaluate_chart((1.0, 2.0, 0.0)) == pytest.approx(2.0)


def test_poly_derivative_and_degree():
    p = PolyScalar(X**3 * Y + Y)
    assert p.degree == 4
    assert p.derivative((1, 1, 0)) == PolyScalar(3 * X**2)
    assert p.derivative((0, 0, 1)).is_zero()


def test_random_poly_spinor_is_reproducible():
    a = random_poly_spinor(3, 2, seed=11)
    b = random_poly_spinor(3, 2, seed=11)
    c = random_poly_spinor(3, 2, seed=12)
    assert a == b
    assert a != c
    assert a.valence == 3


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_poly_partials_commute(seed):
    p = random_poly_spinor(0, 4, seed=seed).comps[0]
    assert p.derivative((1, 0, 0)).derivative((0, 1, 0)) == p.derivative((0, 1, 0)).derivative((1, 0, 0))
    assert p.derivative((0, 1, 1)) == p.derivative((0, 0, 1)).derivative((0, 1, 0))


def test_profile_partials_commute():
    f = ProfileScalar.power(-2.5, 1.0, (1, 2, 0)) + ProfileScalar.power(0.5, 2.0j, (0, 0, 1))
    xy = f.partial(0).partial(1)
    yx = f.partial(1).partial(0)
    point = (0.4, -1.1, 2.3)
    assert xy.evaluate(*point) == pytest.approx(yx.evaluate(*point), rel=1e-12)


def test_profile_partial_of_bracket_power():
    f = ProfileScalar.power(-1.5, 2.0)
    assert f.partial(0) == ProfileScalar({(1, 0, 0, -3.5): -3.0})


def test_profile_partial_of_weighted_monomial():
    f = ProfileScalar.power(2.0, 1.0, (0, 0, 1))
    assert f.partial(2) == ProfileScalar.power(2.0) + ProfileScalar.power(0.0, 2.0, (0, 0, 2))


@pytest.mark.parametrize("exponent", [-2.5, -1.0, 0.5])
def test_profile_laplacian_closed_form(exponent):
    f = ProfileScalar.power(exponent)
    x, y, z = 0.3, -1.2, 2.0
    r2 = x * x + y * y + z * z
    b2 = 1.0 + r2
    expected = 3 * exponent * b2 ** (exponent / 2 - 1) + exponent * (exponent - 2) * r2 * b2 ** (exponent / 2 - 2)
    assert f.laplacian().evaluate(x, y, z) == pytest.approx(expected)


def test_profile_from_poly_matches_poly_values():
    p = PolyScalar.from_terms({(1, 1, 0): gaussian(3, 1), (0, 0, 2): gaussian(-1)})
    f = ProfileScalar.from_poly(p)
    point = (0.4, -0.7, 1.3)
    assert f.evaluate(*point) == pytest.approx(p.evaluate(*point))


def test_profile_vectorized_evaluation():
    f = ProfileScalar.power(-2.0, 1.0, (1, 0, 0))
    xs = np.linspace(-1, 1, 5)
    values = f.evaluate(xs, 0 * xs, 0 * xs)
    assert values.shape == (5,)
    assert values[2] == 0


def test_leading_exponent():
    f = ProfileScalar.power(-2.0, 1.0, (1, 1, 0)) + ProfileScalar.power(-3.0)
    assert f.leading_exponent() == 0.0
    assert ProfileScalar().leading_exponent() == -np.inf


def test_spinor_field_needs_consistent_components():
    with pytest.raises(ContractViolation):
        SpinorField([ProfileScalar()], valence=2)
    with pytest.raises(ContractViolation):
        SpinorField([])


def test_grid_inverse_laplacian_of_sine():
    axis = grid_axis(16, math.pi)
    x, _, _ = np.meshgrid(axis, axis, axis, indexing="ij")
    field = GridField(np.sin(2 * x), math.pi)
    theta = inverse_laplacian_power(field, 1)
    assert np.allclose(theta.samples, np.sin(2 * x) / 4.0, atol=1e-12)
    assert np.allclose(inverse_laplacian_power(field, 2).samples, np.sin(2 * x) / 16.0, atol=1e-12)


def test_grid_spectral_derivative():
    axis = grid_axis(16, math.pi)
    _, y, _ = np.meshgrid(axis, axis, axis, indexing="ij")
    field = GridField(np.cos(3 * y), math.pi)
    assert np.allclose(field.derivative((0, 1, 0)).samples, -3 * np.sin(3 * y), atol=1e-10)


def test_grid_rejects_unresolved_noise(rng):
    noise = GridField(rng.normal(size=(16, 16, 16)))
    with pytest.raises(ResolutionError):
        check_resolved(SpinorField([noise]))


def test_grid_shape_is_checked():
    with pytest.raises(ContractViolation):
        GridField(np.zeros((4, 4, 5)))


def test_norm_exponent_bookkeeping():
    phi = SpinorField([ProfileScalar.power(-2.0)])
    assert norm_exponent(phi, 1) == [-2.0, -3.0]
    assert is_member(phi, 1, 0.0)
    assert not is_member(phi, 0, -2.5)


def test_weighted_norm_closed_form():
    phi = SpinorField([ProfileScalar.power(-2.0)])
    assert weighted_norm(phi, 0, -0.5) == pytest.approx(math.pi / 2, rel=1e-8)


def test_weighted_norm_divergence_raises():
    phi = SpinorField([ProfileScalar.power(-1.0)])
    with pytest.raises(NonMembershipError):
        weighted_norm(phi, 0, -1.5)
