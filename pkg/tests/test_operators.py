"""
tests/test_operators.py

Exact operator matrices, their application and the identity suites.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import ContractViolation
from src.fields.polynomial import random_poly_spinor
from src.fields.profile import ProfileScalar
from src.fields.spinor_field import SpinorField
from src.operators.calculus import (
    OperatorMatrix,
    apply,
    contraction_matrix,
    curl_matrix,
    g_coefficients,
    g_matrix,
    lap_matrix,
)
from src.operators.identities import (
    g3_twist_div_coefficient,
    g4_alternate_residual,
    matrix_identity_residuals,
    verify_g_annihilation,
    verify_identity_suite,
)
from src.operators.tags import Curl, Div, G, Lap, OperatorKind, OperatorTag, Twist

POINTS = [(0.3, -0.4, 1.1), (-1.5, 0.2, 0.7), (2.0, 1.0, -0.5)]


def _to_profile(phi):
    return SpinorField([ProfileScalar.from_poly(c) for c in phi.comps])


def _values(phi):
    return np.array([[c.evaluate(*p) for c in phi.comps] for p in POINTS])


@pytest.mark.parametrize(
    "valence, expected",
    [
        (1, [1]),
        (2, [2]),
        (3, [3, Fraction(-1, 2)]),
        (4, [4, -2]),
        (5, [5, -5, Fraction(1, 4)]),
    ],
)
def test_g_coefficients(valence, expected):
    assert g_coefficients(valence) == expected


def test_tag_valence_bookkeeping():
    assert Div(4).target == 2
    assert Twist(1).target == 3
    assert G(5).degree == 4
    assert Lap(2, 3).degree == 6
    with pytest.raises(ContractViolation):
        OperatorTag(OperatorKind.LAP, 2, -1)


def test_first_contraction_is_identity():
    assert (contraction_matrix(3, 0) - OperatorMatrix.identity(3)).is_zero()


def test_g2_is_twice_the_curl():
    assert (g_matrix(2) - curl_matrix(2).scale(2)).is_zero()


def test_contraction_out_of_range():
    with pytest.raises(ContractViolation):
        contraction_matrix(2, 3)


@pytest.mark.parametrize("valence", range(1, 6))
def test_matrix_identities_vanish(valence):
    residuals = matrix_identity_residuals(valence)
    assert residuals
    for name, residual in residuals.items():
        assert residual.is_zero(), name


def test_g3_alternate_coefficient():
    assert g3_twist_div_coefficient() == Fraction(1, 3)


def test_g4_alternate_form():
    assert g4_alternate_residual().is_zero()


def test_laplacian_matrix_is_diagonal():
    lap = lap_matrix(2)
    for i, row in enumerate(lap.rows):
        for j, entry in enumerate(row):
            assert bool(entry) == (i == j)
    assert lap.degree == 2


def test_apply_rejects_valence_mismatch():
    phi = random_poly_spinor(2, 1, seed=0)
    with pytest.raises(ContractViolation):
        apply(Div(3), phi)


def test_div_of_valence_one_is_trivial():
    phi = random_poly_spinor(1, 2, seed=3)
    out = apply(Div(1), phi)
    assert out.valence == -1
    assert out.comps == ()


def test_scalar_laplacian_is_minus_nabla_squared():
    f = ProfileScalar.power(-1.5, 1.0, (1, 0, 0)) + ProfileScalar.power(-2.5)
    out = apply(Lap(0), SpinorField([f]))
    for point in POINTS:
        assert out.comps[0].evaluate(*point) == pytest.approx(-f.laplacian().evaluate(*point))


@pytest.mark.parametrize("tag", [Curl(2), Div(3), Twist(1), G(3), Lap(2)])
def test_exact_and_profile_backends_agree(tag):
    phi = random_poly_spinor(tag.source, 3, seed=7)
    exact = _to_profile(apply(tag, phi))
    numeric = apply(tag, _to_profile(phi))
    np.testing.assert_allclose(_values(numeric), _values(exact), rtol=1e-10, atol=1e-10)


def test_small_identity_suite_passes():
    reports = verify_identity_suite(1, trials=3, seed=0, max_degree=2)
    assert reports
    assert all(r.passed for r in reports), [r.summary_line() for r in reports if not r.passed]


def test_mutated_g_coefficients_are_caught():
    report = verify_g_annihilation(3, trials=4, seed=0, max_degree=3, coefficients=[3, Fraction(1, 2)])
    assert not report.passed
    assert "seed" in report.failures[0]


def test_g_annihilation_needs_valence_two():
    with pytest.raises(ContractViolation):
        verify_g_annihilation(1, trials=1, seed=0)
