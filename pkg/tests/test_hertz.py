"""
tests/test_hertz.py

Polynomial kernels of Laplacian powers and spectral Hertz data.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import ContractViolation, OrthogonalityError, PreconditionError
from src.fields.grid import GridField
from src.fields.polynomial import X, PolyScalar, random_poly_spinor
from src.fields.spinor_field import SpinorField
from src.hertz.kernel import kernel_basis, scalar_kernel
from src.hertz.orthogonality import (
    orthogonality_report,
    touches_boundary,
    twistor_inner_product,
    verify_twistor_orthogonality,
)
from src.hertz.solver import (
    HertzProblem,
    random_compact_spinor,
    random_hertz_problem,
    round_trip_residual,
    solve_hertz_data,
    verify_hertz_roundtrip,
)
from src.operators.calculus import apply
from src.operators.tags import Lap

RESOLUTION = 48
HALF_LENGTH = 12.0


@pytest.mark.parametrize(
    "power, degree, dimension",
    [(1, 2, 9), (1, 3, 16), (2, 3, 20), (2, 4, 34), (2, 1, 4)],
)
def test_scalar_kernel_dimensions(power, degree, dimension):
    assert len(scalar_kernel(power, degree)) == dimension


def test_spinor_kernel_dimension_and_membership():
    basis = kernel_basis(2, 1, 2)
    assert basis.dimension == 27
    for phi in basis.basis:
        assert apply(Lap(2), phi).is_zero()


def test_kernel_rejects_negative_arguments():
    with pytest.raises(ContractViolation):
        scalar_kernel(-1, 2)
    with pytest.raises(ContractViolation):
        kernel_basis(-1, 1, 2)


@pytest.mark.parametrize("spin", [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)])
def test_hertz_roundtrip(spin):
    report = verify_hertz_roundtrip(spin, seed=5, resolution=RESOLUTION, half_length=HALF_LENGTH)
    assert report.passed, report.failures
    assert report.details["round_trip"] < 1e-8
    assert report.details["divergence"] < 1e-10


def test_solve_recovers_a_preimage():
    problem, _ = random_hertz_problem(Fraction(3, 2), seed=2, resolution=RESOLUTION, half_length=HALF_LENGTH)
    zeta = solve_hertz_data(problem)
    assert zeta.valence == 3
    assert round_trip_residual(zeta, problem.phi) < 1e-8


def test_half_spin_data_are_their_own_hertz_data():
    phi = random_compact_spinor(1, seed=0, resolution=16, half_length=HALF_LENGTH)
    assert solve_hertz_data(HertzProblem(Fraction(1, 2), phi)) is phi


def test_problem_checks_valence():
    phi = random_compact_spinor(1, seed=0, resolution=16, half_length=HALF_LENGTH)
    with pytest.raises(ContractViolation):
        HertzProblem(Fraction(1), phi)


def test_solve_rejects_divergent_data():
    phi = random_compact_spinor(2, seed=4, resolution=RESOLUTION, half_length=HALF_LENGTH)
    with pytest.raises(PreconditionError, match="divergence"):
        solve_hertz_data(HertzProblem(Fraction(1), phi))


def test_solve_rejects_a_mean():
    constant = GridField(np.ones((16, 16, 16)), HALF_LENGTH)
    phi = SpinorField([constant, constant.zero_like(), constant])
    with pytest.raises(PreconditionError, match="mean"):
        solve_hertz_data(HertzProblem(Fraction(1), phi))


def test_zero_data_give_zero_hertz_data():
    zero = GridField(np.zeros((16, 16, 16)), HALF_LENGTH)
    zeta = solve_hertz_data(HertzProblem(Fraction(2), SpinorField.zeros(4, zero)))
    assert zeta.is_zero()


def test_orthogonality_fails_without_the_divergence_constraint():
    phi = random_compact_spinor(2, seed=8, resolution=RESOLUTION, half_length=HALF_LENGTH)
    etas = [random_poly_spinor(0, 2, seed) for seed in range(2)]
    assert not orthogonality_report(phi, etas).passed


def test_orthogonality_checks_eta_valence():
    phi = random_compact_spinor(2, seed=8, resolution=16, half_length=HALF_LENGTH)
    with pytest.raises(ContractViolation):
        twistor_inner_product(phi, random_poly_spinor(1, 1, 0))


def test_divergence_free_data_are_orthogonal_to_twist_images():
    problem, _ = random_hertz_problem(Fraction(1), seed=5, resolution=RESOLUTION, half_length=HALF_LENGTH)
    eta = random_poly_spinor(0, 2, 5 * 31)
    product = verify_twistor_orthogonality(problem.phi, eta)
    _, scale = twistor_inner_product(problem.phi, eta)
    assert abs(product) < 1e-8 * scale


def test_orthogonality_raises_on_data_that_are_not_divergence_free():
    phi = random_compact_spinor(2, seed=8, resolution=RESOLUTION, half_length=HALF_LENGTH, width=1.0)
    assert not touches_boundary(phi)
    # Twist of a linear eta is a constant spinor
    eta = SpinorField([PolyScalar(X)])
    with pytest.raises(OrthogonalityError):
        verify_twistor_orthogonality(phi, eta)


def test_boundary_data_are_inconclusive(caplog):
    phi = random_compact_spinor(2, seed=8, resolution=16, half_length=3.0, width=2.0)
    assert touches_boundary(phi)
    verify_twistor_orthogonality(phi, SpinorField([PolyScalar(X)]))
    assert "inconclusive" in caplog.text
