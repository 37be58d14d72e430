"""
src/spinor/frame.py

Normalized null tetrad and its spin dyad at a spacetime point.

l = (dt + dr)/sqrt(2), n = (dt - dr)/sqrt(2), m = (d_theta + i/sin(theta) d_phi)/(r sqrt(2)),
with l = o o-bar, n = iota iota-bar, m = o iota-bar and o_A iota^A = 1.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from config import FRAME_TOLERANCE, THETA_MARGIN
from src.core.errors import ConventionError, FrameSingularityError
from src.core.utils import spherical_basis
from src.spinor.soldering import shipped_soldering

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def spinor_vector(alpha, beta, soldering=None):
    """
    Spacetime vector of the spinor pair alpha^A conj(beta)^{A'}.

    Args:
        alpha: Contravariant pair (alpha^0, alpha^1)
        beta: Contravariant pair whose conjugate fills the primed slot

    Returns:
        numpy complex array (V^t, V^x, V^y, V^z)
    """
    soldering = soldering or shipped_soldering()
    sigma = soldering.sigma_numeric()
    tau = soldering.tau_numeric()
    alpha = np.asarray(alpha, dtype=complex)
    beta_bar = np.conj(np.asarray(beta, dtype=complex))
    time = INV_SQRT2 * np.einsum("a,b,ab->", alpha, beta_bar, tau)
    # w^B = beta-bar^{A'} tau^B_{A'}, tau^B_{A'} = eps^{BC} tau_{CA'}
    w = np.array([tau[1] @ beta_bar, -(tau[0] @ beta_bar)])
    space = -np.einsum("a,b,jab->j", alpha, w, sigma)
    return np.concatenate(([time], space))


def dyad_spinor(theta, phi):
    """
    Spin dyad (o, iota) adapted to the direction (theta, phi).

    Returns:
        Tuple of numpy complex pairs (o, iota)
    """
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    diff = st
    total = complex(cp, -ct * sp)
    cross = -0.5 * complex(ct * cp, -sp)
    a_sq = 0.5 * (total + diff)
    b_sq = 0.5 * (total - diff)
    if abs(a_sq) >= abs(b_sq):
        a = cmath.sqrt(a_sq)
        b = cross / a
    else:
        b = cmath.sqrt(b_sq)
        a = cross / b
    o = np.array([a, b])
    iota = np.array([-np.conj(b), np.conj(a)])
    return o, iota


def dyad_contraction(o, iota):
    """o_A iota^A with o_A = o^B eps_BA."""
    return -o[1] * iota[0] + o[0] * iota[1]


@dataclass(frozen=True)
class NullFrame:
    """Null tetrad at a point; dyad columns are o^A and iota^A."""

    t: float
    r: float
    theta: float
    phi: float
    o: np.ndarray
    iota: np.ndarray

    @property
    def dyad(self):
        return np.column_stack([self.o, self.iota])

    @property
    def l(self):
        return spinor_vector(self.o, self.o)

    @property
    def n(self):
        return spinor_vector(self.iota, self.iota)

    @property
    def m(self):
        return spinor_vector(self.o, self.iota)

    def expected_vectors(self):
        """Closed-form l, n and unit-normalized m (Cartesian components)."""
        r_hat, theta_hat, phi_hat = spherical_basis(self.theta, self.phi)
        l = INV_SQRT2 * np.concatenate(([1.0], r_hat))
        n = INV_SQRT2 * np.concatenate(([1.0], -r_hat))
        m = INV_SQRT2 * np.concatenate(([0.0], theta_hat + 1j * phi_hat))
        return l, n, m

    def with_phase(self, angle):
        """Rotate the dyad phase: o -> e^{i angle} o, iota -> e^{-i angle} iota."""
        phase = cmath.exp(1j * angle)
        return NullFrame(self.t, self.r, self.theta, self.phi, phase * self.o, self.iota / phase)

    def residuals(self):
        l, n, m = self.expected_vectors()
        return {
            "normalization": abs(dyad_contraction(self.o, self.iota) - 1.0),
            "l": float(np.max(np.abs(self.l - l))),
            "n": float(np.max(np.abs(self.n - n))),
            "m": float(np.max(np.abs(self.m - m))),
        }


def dyad_at_point(t, r, theta, phi, margin=THETA_MARGIN, tolerance=FRAME_TOLERANCE):
    """
    Build and validate the null frame at (t, r, theta, phi).

    Raises:
        FrameSingularityError: r <= 0 or theta within margin of the axis
        ConventionError: the constructed dyad misses l, n, m or the normalization
    """
    if r <= 0:
        raise FrameSingularityError(f"null frame undefined at r = {r}")
    if theta < margin or theta > math.pi - margin:
        raise FrameSingularityError(
            f"theta = {theta} lies within {margin} of the axis where the tetrad is singular"
        )
    o, iota = dyad_spinor(theta, phi)
    frame = NullFrame(t, r, theta, phi, o, iota)
    for name, value in frame.residuals().items():
        if value > tolerance:
            raise ConventionError(f"null frame check '{name}' off by {value:.3e}")
    return frame
