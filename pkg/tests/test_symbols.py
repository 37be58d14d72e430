"""
tests/test_symbols.py
"""

from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import ContractViolation
from src.operators.tags import Curl, Div, G, Lap, Twist
from src.symbols.checks import (
    exactness_at,
    laplacian_symbol_residual,
    random_xi,
    verify_hermitian_symbol,
    verify_symbol_exactness,
    verify_symbol_suite,
)
from src.symbols.symbol import SymbolMatrix, XiSpinor, symbol


def test_xi_spinor_squares_to_minus_norm():
    xi = XiSpinor((0.3, -1.2, 0.8))
    s00, s01, s11 = xi.spinor.comps
    # xi_AB xi^AB = 2 (xi_00 xi_11 - xi_01^2)
    assert 2 * (s00 * s11 - s01 * s01) == pytest.approx(-xi.squared_norm)


@pytest.mark.parametrize("spin", [Fraction(1), Fraction(3, 2), Fraction(2)])
def test_exactness_at_a_coordinate_axis(spin):
    valence = int(2 * spin)
    result = exactness_at(valence, XiSpinor((0.0, 0.0, 1.0)))
    assert result["ranks"] == (valence - 1, 2, valence - 1)
    assert result["twist_g"] < 1e-8
    assert result["g_div"] < 1e-8


def test_symbol_shapes():
    xi = XiSpinor((1.0, 2.0, -0.5))
    assert symbol(Div(4), xi).shape == (3, 5)
    assert symbol(Twist(2), xi).shape == (5, 3)


def test_symbol_is_homogeneous():
    xi = XiSpinor((0.4, -0.1, 0.9))
    small = symbol(G(3), xi).matrix
    large = symbol(G(3), xi.scaled(2.0)).matrix
    np.testing.assert_allclose(large, 4.0 * small, atol=1e-12)


def test_rank_of_zero_symbol():
    assert SymbolMatrix(None, np.zeros((2, 2))).rank(1e-10) == 0
    assert SymbolMatrix(None, np.zeros((0, 2))).rank(1e-10) == 0


@pytest.mark.parametrize("spin", [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2)])
def test_symbol_exactness_random(spin):
    report = verify_symbol_exactness(spin, trials=5, seed=3)
    assert report.passed, report.failures
    assert report.details["worst_subspace_distance"] < 1e-8


def test_symbol_exactness_needs_spin_one():
    with pytest.raises(ContractViolation):
        verify_symbol_exactness(Fraction(1, 2), trials=1, seed=0)


@pytest.mark.parametrize("valence", range(1, 6))
def test_curl_symbol_is_hermitian(valence):
    assert verify_hermitian_symbol(valence, trials=5, seed=valence).passed


@pytest.mark.parametrize("valence, power", [(1, 1), (2, 2), (4, 3)])
def test_laplacian_symbol(valence, power, rng):
    assert laplacian_symbol_residual(valence, power, random_xi(rng)) < 1e-10


def test_symbol_suite():
    reports = verify_symbol_suite(2, trials=3, seed=1)
    assert len(reports) == 3 + 4 + 1
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("valence", [0, 2, 3])
def test_laplacian_symbol_at_unit_covector_is_identity(valence):
    matrix = symbol(Lap(valence, 1), XiSpinor((0.0, 0.0, 1.0))).matrix
    np.testing.assert_allclose(matrix, np.eye(valence + 1), atol=1e-12)


def test_squared_laplacian_symbol_is_positive():
    xi = XiSpinor((0.0, 3.0, 4.0))
    matrix = symbol(Lap(1, 2), xi).matrix
    np.testing.assert_allclose(matrix, 625.0 * np.eye(2), atol=1e-9)


def test_curl_symbol_is_i_times_hermitian():
    matrix = symbol(Curl(2), XiSpinor((0.0, 0.0, 1.0))).matrix
    eigen = np.linalg.eigvals(-1j * matrix)
    np.testing.assert_allclose(eigen.imag, 0.0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.eigvals(matrix).real, 0.0, atol=1e-12)


def test_symbol_of_g1_is_identity():
    matrix = symbol(G(1), XiSpinor((0.2, -0.7, 1.1))).matrix
    np.testing.assert_allclose(matrix, np.eye(2), atol=1e-12)
