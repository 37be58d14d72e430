"""
src/hertz/solver.py

Spectral construction of Hertz-potential data: given divergence-free grid
data phi of spin s, find zeta with G_{2s} zeta = phi.

With m = floor(s) and theta = Delta^-m phi (zero mode removed), the
Laplacian power identity gives zeta = -(-2)^(1-m) Curl theta for integer s
and zeta = (-2)^(-m) theta for half-integer s. Div theta vanishes on the
torus, so the Twist F Div term drops out.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from config import (
    DIVERGENCE_TOLERANCE,
    GRID_HALF_LENGTH,
    GRID_RESOLUTION,
    MEAN_TOLERANCE,
    ROUND_TRIP_TOLERANCE,
    SOURCE_WIDTH,
)
from src.core.errors import ContractViolation, PreconditionError, ResolutionError
from src.core.reporting import VerificationReport
from src.fields.grid import (
    GridField,
    grid_coordinates,
    grid_gradient_norm,
    grid_spinor_norm,
    inverse_laplacian_power,
    spectral_apply,
)
from src.fields.polynomial import random_poly_spinor
from src.fields.spinor_field import SpinorField
from src.hertz.orthogonality import orthogonality_report
from src.operators.tags import Curl, Div, G


@dataclass(frozen=True)
class HertzProblem:
    """Spin s and divergence-free grid data phi of valence 2s."""

    spin: Fraction
    phi: SpinorField

    def __post_init__(self):
        if self.phi.valence != int(2 * self.spin):
            raise ContractViolation(
                f"spin {self.spin} needs valence {int(2 * self.spin)}, got {self.phi.valence}"
            )

    @property
    def valence(self):
        return int(2 * self.spin)

    @property
    def power(self):
        """m = floor(s)."""
        return math.floor(self.spin)

    def divergence_residual(self):
        """||Div phi|| / ||grad phi|| on the grid (0 for valence 1)."""
        if self.valence < 2:
            return 0.0
        scale = grid_gradient_norm(self.phi)
        if scale == 0.0:
            return 0.0
        return grid_spinor_norm(spectral_apply(Div(self.valence), self.phi)) / scale

    def mean_residual(self):
        """Largest component mean relative to the largest sample magnitude."""
        peak = max(float(np.max(np.abs(c.samples))) for c in self.phi.comps)
        if peak == 0.0:
            return 0.0
        return max(abs(c.mean()) for c in self.phi.comps) / peak


def solve_hertz_data(problem, tolerance=ROUND_TRIP_TOLERANCE):
    """
    Hertz data zeta with G_{2s} zeta = phi.

    Args:
        problem: HertzProblem
        tolerance: Relative round-trip residual allowed

    Returns:
        SpinorField of GridField components

    Raises:
        PreconditionError: when phi is not divergence free or has a nonzero mean (s >= 1)
        ResolutionError: when the round trip misses the tolerance
    """
    phi = problem.phi
    valence = problem.valence
    if valence == 1:
        return phi
    if phi.is_zero():
        return SpinorField.zeros(valence, phi.zero)

    divergence = problem.divergence_residual()
    if divergence > DIVERGENCE_TOLERANCE:
        raise PreconditionError(f"data not divergence free: relative residual {divergence:.3e}")
    mean = problem.mean_residual()
    if mean > MEAN_TOLERANCE:
        raise PreconditionError(f"data carry a nonzero mean: relative mean {mean:.3e}")

    m = problem.power
    theta = phi.map(lambda c: inverse_laplacian_power(c, m))
    if valence % 2 == 0:
        weight = -((-2.0) ** (1 - m))
        zeta = spectral_apply(Curl(valence), theta).scale(weight)
    else:
        zeta = theta.scale((-2.0) ** (-m))

    residual = round_trip_residual(zeta, phi)
    logging.info(f"Hertz solve s={problem.spin}: round-trip residual {residual:.3e}")
    if residual > tolerance:
        raise ResolutionError(f"Hertz round trip residual {residual:.3e} > {tolerance:.1e}")
    return zeta


def round_trip_residual(zeta, phi):
    """||G zeta - phi|| / ||phi||."""
    rebuilt = spectral_apply(G(zeta.valence), zeta)
    scale = grid_spinor_norm(phi)
    diff = grid_spinor_norm(rebuilt - phi)
    return diff / scale if scale else diff


def random_compact_spinor(valence, seed, resolution=GRID_RESOLUTION, half_length=GRID_HALF_LENGTH,
                          width=SOURCE_WIDTH, degree=2):
    """
    Gaussian-localized random spinor field: each component is
    exp(-|x - c|^2 / (2 w^2)) times a random complex polynomial of the given degree.

    Args:
        valence: Spinor valence
        seed: Seed for numpy.random.default_rng
        resolution, half_length: Grid parameters
        width: Gaussian width w
        degree: Polynomial degree

    Returns:
        SpinorField of GridField components
    """
    rng = np.random.default_rng(seed)
    x, y, z = grid_coordinates(resolution, half_length)
    comps = []
    for _ in range(valence + 1):
        center = rng.uniform(-0.5, 0.5, size=3)
        dx, dy, dz = x - center[0], y - center[1], z - center[2]
        envelope = np.exp(-(dx**2 + dy**2 + dz**2) / (2.0 * width**2))
        poly = np.zeros_like(x, dtype=complex)
        for a in range(degree + 1):
            for b in range(degree + 1 - a):
                for c in range(degree + 1 - a - b):
                    coeff = complex(rng.normal(), rng.normal()) / (1.0 + a + b + c)
                    poly = poly + coeff * dx**a * dy**b * dz**c
        comps.append(GridField(envelope * poly, half_length))
    return SpinorField(comps)


def random_hertz_problem(spin, seed, resolution=GRID_RESOLUTION, half_length=GRID_HALF_LENGTH):
    """phi = G_{2s} zeta0 for a random compact zeta0; returns (problem, zeta0)."""
    spin = Fraction(spin)
    valence = int(2 * spin)
    zeta0 = random_compact_spinor(valence, seed, resolution, half_length)
    phi = spectral_apply(G(valence), zeta0)
    return HertzProblem(spin, phi), zeta0


def verify_hertz_roundtrip(spin, seed, resolution=GRID_RESOLUTION, half_length=GRID_HALF_LENGTH,
                           tolerance=ROUND_TRIP_TOLERANCE, eta_count=2):
    """
    Solve for Hertz data of a random divergence-free source and check the
    round trip, the discrete divergence and orthogonality to Twist images.

    Returns:
        VerificationReport with details round_trip and divergence
    """
    spin = Fraction(spin)
    report = VerificationReport(name=f"Hertz round trip s={spin} seed={seed}", trials=1)
    problem, _ = random_hertz_problem(spin, seed, resolution, half_length)
    divergence = problem.divergence_residual()
    report.details["divergence"] = divergence
    if divergence > DIVERGENCE_TOLERANCE:
        report.record_failure(f"discrete Div phi residual {divergence:.3e}")
    try:
        zeta = solve_hertz_data(problem, tolerance)
    except (PreconditionError, ResolutionError) as exc:
        report.record_failure(f"seed {seed}: {exc}")
        return report
    residual = round_trip_residual(zeta, problem.phi)
    report.details["round_trip"] = residual
    if problem.valence >= 2:
        etas = [
            random_poly_spinor(problem.valence - 2, 2, seed * 31 + index) for index in range(eta_count)
        ]
        report.merge(orthogonality_report(problem.phi, etas))
        report.trials = 1
    return report
