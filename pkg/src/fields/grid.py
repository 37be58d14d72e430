"""
src/fields/grid.py

Periodic grid fields on the box [-L, L)^3 with spectral calculus.

Derivatives are Fourier multipliers ik (the Nyquist mode included), so the
discrete operators compose exactly like their continuum counterparts.
"""

import math

import numpy as np

from config import GRID_HALF_LENGTH, GRID_RESOLUTION, SPECTRAL_TAIL_TOLERANCE
from src.core.errors import ContractViolation, ResolutionError
from src.fields.polynomial import SQRT2
from src.fields.spinor_field import SpinorField
from src.operators.calculus import as_matrix

# Modes with some |k_j| above this fraction of k_max count as the tail
_TAIL_FRACTION = 2.0 / 3.0


def grid_axis(resolution, half_length):
    """Sample positions x_j = -L + 2L j / N."""
    return -half_length + 2.0 * half_length * np.arange(resolution) / resolution


def grid_coordinates(resolution=GRID_RESOLUTION, half_length=GRID_HALF_LENGTH):
    """Meshgrid (x, y, z) of shape (N, N, N), 'ij' indexing."""
    axis = grid_axis(resolution, half_length)
    return np.meshgrid(axis, axis, axis, indexing="ij")


def wavenumbers(resolution=GRID_RESOLUTION, half_length=GRID_HALF_LENGTH):
    """Angular wavenumber meshgrid (kx, ky, kz) matching grid_coordinates."""
    k = 2.0 * math.pi * np.fft.fftfreq(resolution, d=2.0 * half_length / resolution)
    return np.meshgrid(k, k, k, indexing="ij")


class GridField:
    """Complex samples of a periodic scalar on an N^3 grid."""

    exact_chart = False
    __slots__ = ("samples", "half_length")

    def __init__(self, samples, half_length=GRID_HALF_LENGTH):
        samples = np.asarray(samples, dtype=complex)
        if samples.ndim != 3 or len(set(samples.shape)) != 1:
            raise ContractViolation(f"grid samples must be N x N x N, got {samples.shape}")
        self.samples = samples
        self.half_length = float(half_length)

    @classmethod
    def from_function(cls, func, resolution=GRID_RESOLUTION, half_length=GRID_HALF_LENGTH):
        """Sample func(x, y, z) (vectorized) on the grid."""
        x, y, z = grid_coordinates(resolution, half_length)
        return cls(func(x, y, z), half_length)

    @classmethod
    def from_scalar(cls, scalar, resolution=GRID_RESOLUTION, half_length=GRID_HALF_LENGTH):
        """Sample any backend with a vectorized evaluate(x, y, z)."""
        return cls.from_function(scalar.evaluate, resolution, half_length)

    @property
    def resolution(self):
        return self.samples.shape[0]

    @property
    def spacing(self):
        return 2.0 * self.half_length / self.resolution

    def zero_like(self):
        return GridField(np.zeros_like(self.samples), self.half_length)

    def is_zero(self):
        return not np.any(self.samples)

    def spectrum(self):
        return np.fft.fftn(self.samples)

    def derivative(self, mono):
        """Spectral partial derivative d^a/dx^a d^b/dy^b d^c/dz^c."""
        if not any(mono):
            return self
        kx, ky, kz = wavenumbers(self.resolution, self.half_length)
        multiplier = (1j * kx) ** mono[0] * (1j * ky) ** mono[1] * (1j * kz) ** mono[2]
        return GridField(np.fft.ifftn(self.spectrum() * multiplier), self.half_length)

    def scale(self, coeff):
        return GridField(self.samples * complex(coeff), self.half_length)

    def tail_energy(self):
        """Fraction of spectral energy in the outer band |k_j| > (2/3) k_max."""
        spectrum = self.spectrum()
        total = float(np.sum(np.abs(spectrum) ** 2))
        if total == 0.0:
            return 0.0
        k_max = math.pi / self.spacing
        kx, ky, kz = wavenumbers(self.resolution, self.half_length)
        limit = _TAIL_FRACTION * k_max
        band = (np.abs(kx) > limit) | (np.abs(ky) > limit) | (np.abs(kz) > limit)
        return float(np.sum(np.abs(spectrum[band]) ** 2)) / total

    def mean(self):
        return complex(np.mean(self.samples))

    def l2_norm(self):
        return math.sqrt(float(np.sum(np.abs(self.samples) ** 2)) * self.spacing**3)

    def boundary_max(self):
        """Largest magnitude on the faces of the box."""
        s = np.abs(self.samples)
        return float(max(s[0].max(), s[-1].max(), s[:, 0].max(), s[:, -1].max(),
                         s[:, :, 0].max(), s[:, :, -1].max()))

    def conjugate(self):
        return GridField(np.conj(self.samples), self.half_length)

    def _check(self, other):
        if not isinstance(other, GridField):
            return False
        if other.samples.shape != self.samples.shape or other.half_length != self.half_length:
            raise ContractViolation("grid fields live on different grids")
        return True

    def __add__(self, other):
        if self._check(other):
            return GridField(self.samples + other.samples, self.half_length)
        if isinstance(other, (int, float, complex)) and other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if self._check(other):
            return GridField(self.samples - other.samples, self.half_length)
        return NotImplemented

    def __neg__(self):
        return GridField(-self.samples, self.half_length)

    def __mul__(self, other):
        if isinstance(other, GridField) and self._check(other):
            return GridField(self.samples * other.samples, self.half_length)
        return self.scale(other)

    __rmul__ = __mul__

    def __repr__(self):
        return f"GridField(N={self.resolution}, L={self.half_length})"


def grid_spinor_norm(phi):
    """L2 norm of a grid spinor field with the pointwise spinor norm sum C(k,i)|phi_i|^2."""
    if phi.valence < 0:
        return 0.0
    k = phi.valence
    spacing = phi.zero.spacing
    total = 0.0
    for i, comp in enumerate(phi.comps):
        total += math.comb(k, i) * float(np.sum(np.abs(comp.samples) ** 2))
    return math.sqrt(total * spacing**3)


def grid_gradient_norm(phi):
    """L2 norm of all first derivatives of a grid spinor field."""
    if phi.valence < 0:
        return 0.0
    total = 0.0
    for axis in range(3):
        mono = tuple(1 if j == axis else 0 for j in range(3))
        derived = SpinorField([c.derivative(mono) for c in phi.comps], zero=phi.zero)
        total += grid_spinor_norm(derived) ** 2
    return math.sqrt(total)


def check_resolved(phi, tolerance=SPECTRAL_TAIL_TOLERANCE):
    """
    Raise ResolutionError when any component carries spectral tail energy.

    Returns:
        The largest tail-energy fraction over the components
    """
    worst = max((c.tail_energy() for c in phi.comps), default=0.0)
    if worst > tolerance:
        raise ResolutionError(
            f"grid field under-resolved: tail energy {worst:.3e} > {tolerance:.1e}"
        )
    return worst


def spectral_multipliers(matrix, resolution, half_length):
    """Fourier multiplier arrays of an operator matrix, entry by entry."""
    kx, ky, kz = wavenumbers(resolution, half_length)
    # chart derivative d/dx' = (1/sqrt 2) d/dx  ->  ik / sqrt 2
    point = (1j * kx / SQRT2, 1j * ky / SQRT2, 1j * kz / SQRT2)
    out = {}
    for i, row in enumerate(matrix.rows):
        for j, entry in enumerate(row):
            if entry:
                total = np.zeros_like(kx, dtype=complex)
                for (a, b, c), coeff in entry.terms():
                    value = complex(float(coeff.x), float(coeff.y))
                    total = total + value * point[0] ** a * point[1] ** b * point[2] ** c
                out[(i, j)] = total
    return out


def spectral_apply(op, phi, tolerance=SPECTRAL_TAIL_TOLERANCE):
    """
    Apply an operator to a grid spinor field with Fourier multipliers.

    Args:
        op: OperatorTag or OperatorMatrix
        phi: SpinorField of GridField components
        tolerance: Largest admissible tail-energy fraction

    Returns:
        SpinorField of GridField components

    Raises:
        ResolutionError: when phi is not resolved on its grid
    """
    matrix = as_matrix(op)
    if phi.valence != matrix.source:
        raise ContractViolation(
            f"operator expects valence {matrix.source}, field has {phi.valence}"
        )
    zero = phi.zero
    if matrix.target < 0:
        return SpinorField.trivial(matrix.target, zero)
    if matrix.source < 0:
        return SpinorField.zeros(matrix.target, zero)
    check_resolved(phi, tolerance)

    n, length = zero.resolution, zero.half_length
    spectra = [c.spectrum() for c in phi.comps]
    multipliers = spectral_multipliers(matrix, n, length)
    comps = []
    for i in range(matrix.target + 1):
        total = np.zeros((n, n, n), dtype=complex)
        for j in range(matrix.source + 1):
            multiplier = multipliers.get((i, j))
            if multiplier is not None:
                total += multiplier * spectra[j]
        comps.append(GridField(np.fft.ifftn(total), length))
    return SpinorField(comps, zero=zero)


def inverse_laplacian_power(field, power):
    """
    Solve Delta^power theta = field spectrally (Delta = -nabla^2), zero mode set to 0.

    Args:
        field: GridField
        power: Laplacian power m >= 0

    Returns:
        GridField theta with zero mean
    """
    if power == 0:
        return field
    kx, ky, kz = wavenumbers(field.resolution, field.half_length)
    k2 = kx**2 + ky**2 + kz**2
    inverse = np.zeros_like(k2)
    nonzero = k2 > 0
    inverse[nonzero] = 1.0 / k2[nonzero] ** power
    return GridField(np.fft.ifftn(field.spectrum() * inverse), field.half_length)
