"""
src/peeling/components.py

Null components of spinor fields in the adapted dyad, and the numeric check
of the recursion that relates the components of xi^A' nabla_AA' psi to
tetrad derivatives of the components of psi.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from config import RECURSION_STEP, RECURSION_TOLERANCE, THETA_MARGIN
from src.core.errors import ContractViolation
from src.core.parallel import parallel_map
from src.core.reporting import VerificationReport
from src.core.utils import spherical_to_cartesian
from src.fields.profile import ProfileScalar
from src.fields.spinor_field import SpinorField
from src.spinor.core import SymSpinor, contract_all, lower
from src.spinor.frame import NullFrame, dyad_at_point, dyad_contraction, dyad_spinor
from src.wave.kirchhoff import WaveScalar, default_quadrature, kirchhoff_eval

UNIT_MONOS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def null_components(phi, frame):
    """
    phi_i = phi contracted with i copies of iota and 2s - i copies of o.

    Args:
        phi: SymSpinor of valence 2s
        frame: NullFrame (or any object with o and iota)

    Returns:
        list of 2s + 1 complex values
    """
    k = phi.valence
    if k == 0:
        return [complex(phi.comps[0])]
    return [
        complex(contract_all(phi, [frame.iota] * i + [frame.o] * (k - i))) for i in range(k + 1)
    ]


def component_magnitudes(phi, frame):
    return [abs(c) for c in null_components(phi, frame)]


def frame_coefficients(eta, o, iota):
    """
    (alpha, beta) with conj(eta) = alpha o-bar + beta iota-bar.

    Args:
        eta: Constant unprimed spinor whose conjugate is xi^A'
    """
    a = -dyad_contraction(iota, eta)
    b = dyad_contraction(o, eta)
    return complex(np.conj(a)), complex(np.conj(b))


def constant_spinor_vectors(eta, theta=1.0, phi=0.4):
    """
    Cartesian 4-vectors V_B with xi^B' nabla_BB' = V_B^a d_a for xi = conj(eta).

    V_B = o_B (beta n + alpha m-bar) - iota_B (alpha l + beta m), computed in
    the tetrad at (theta, phi); the result does not depend on the angles.
    """
    frame = dyad_at_point(0.0, 1.0, theta, phi)
    l, n, m = frame.expected_vectors()
    alpha, beta = frame_coefficients(eta, frame.o, frame.iota)
    o_low, iota_low = lower(frame.o), lower(frame.iota)
    outgoing = beta * n + alpha * np.conj(m)
    incoming = alpha * l + beta * m
    return [o_low[b] * outgoing - iota_low[b] * incoming for b in range(2)]


def directional_derivative(w, vector):
    """V^a d_a of a WaveScalar."""
    total = w.time_derivative().scale(complex(vector[0]))
    for axis, mono in enumerate(UNIT_MONOS):
        if vector[axis + 1] != 0:
            total = total + w.derivative(mono).scale(complex(vector[axis + 1]))
    return total


def raise_by_constant_spinor(psi, eta):
    """
    xi^A' nabla_AA' psi_B...: a field of valence k + 1 from one of valence k.

    The result is symmetric when psi comes from a wave solution, so
    component n is read off with A = 1 (n >= 1) or A = 0 (n = 0).
    """
    vectors = constant_spinor_vectors(eta)
    comps = [directional_derivative(psi.comps[0], vectors[0])]
    for n in range(1, psi.valence + 2):
        comps.append(directional_derivative(psi.comps[n - 1], vectors[1]))
    return SpinorField(comps, zero=psi.zero)


def recursion_potential():
    """Scalar wave solution used for the recursion check."""
    f = ProfileScalar.power(-2.0) + ProfileScalar.power(-4.0, 0.3, (1, 0, 1))
    g = ProfileScalar.power(-3.0, 0.5, (0, 1, 0))
    return WaveScalar(f, g)


def _random_spinor(rng):
    pair = rng.normal(size=2) + 1j * rng.normal(size=2)
    return pair / np.linalg.norm(pair)


def build_recursion_fields(spin, seed):
    """
    (psi, phi, eta) with psi of spin s built from a scalar potential and
    phi = xi^A' nabla_AA' psi, xi = conj(eta).
    """
    valence = int(2 * Fraction(spin))
    rng = np.random.default_rng(seed)
    chi = recursion_potential()
    psi = SpinorField([chi], zero=chi.zero_like())
    for _ in range(valence):
        psi = raise_by_constant_spinor(psi, _random_spinor(rng))
    eta = _random_spinor(rng)
    return psi, raise_by_constant_spinor(psi, eta), eta


class _ComponentSampler:
    """psi_i(t, r, theta, phi) with the dyad sign matched to a reference o."""

    def __init__(self, field, quadrature, reference):
        self.field = field
        self.quadrature = quadrature
        self.reference = reference

    def __call__(self, t, r, theta, phi):
        o, iota = dyad_spinor(theta, phi)
        if np.linalg.norm(o + self.reference) < np.linalg.norm(o - self.reference):
            o, iota = -o, -iota
        x = spherical_to_cartesian(r, theta, phi)
        comps = [kirchhoff_eval(c, t, x, self.quadrature) for c in self.field.comps]
        return np.array(null_components(SymSpinor(comps), NullFrame(t, r, theta, phi, o, iota)))


def _difference(func, h):
    return (-func(2 * h) + 8 * func(h) - 8 * func(-h) + func(-2 * h)) / (12 * h)


def tetrad_derivatives(sampler, t, r, theta, phi, h=RECURSION_STEP):
    """D, D', delta, delta' of all components at one point (by finite differences)."""
    inv = 1.0 / math.sqrt(2.0)
    d_null = _difference(lambda s: sampler(t + s, r + s, theta, phi), h) * inv
    d_null_prime = _difference(lambda s: sampler(t + s, r - s, theta, phi), h) * inv
    d_theta = _difference(lambda s: sampler(t, r, theta + s, phi), h)
    d_phi = _difference(lambda s: sampler(t, r, theta, phi + s), h)
    scale = inv / r
    angular = 1j / math.sin(theta)
    return {
        "D": d_null,
        "D'": d_null_prime,
        "delta": scale * (d_theta + angular * d_phi),
        "delta'": scale * (d_theta - angular * d_phi),
    }


def recursion_prediction(psi_values, derivatives, alpha, beta, spin, r, theta):
    """
    Components of phi predicted from psi:

        phi_0 = alpha D psi_0 + beta delta psi_0 - s beta cot(theta)/(r sqrt 2) psi_0
        phi_i = alpha delta' psi_{i-1} + beta D' psi_{i-1}
                + alpha/(r sqrt 2) ((s + 1 - i) cot(theta) psi_{i-1} - (2s + 1 - i) psi_i)
    """
    s = float(spin)
    k = len(psi_values) - 1
    cot = 1.0 / math.tan(theta)
    inv = 1.0 / (r * math.sqrt(2.0))
    out = [
        alpha * derivatives["D"][0]
        + beta * derivatives["delta"][0]
        - s * beta * cot * inv * psi_values[0]
    ]
    for i in range(1, k + 2):
        tail = psi_values[i] if i <= k else 0.0
        out.append(
            alpha * derivatives["delta'"][i - 1]
            + beta * derivatives["D'"][i - 1]
            + alpha * inv * ((s + 1 - i) * cot * psi_values[i - 1] - (2 * s + 1 - i) * tail)
        )
    return np.array(out)


def recursion_residual(psi, phi, eta, spin, point, quadrature=None):
    """
    Relative residual of the component recursion at (t, r, theta, phi).
    """
    t, r, theta, angle = point
    if theta < THETA_MARGIN or theta > math.pi - THETA_MARGIN:
        raise ContractViolation(f"theta = {theta} is inside the axis margin")
    quadrature = quadrature or default_quadrature()
    frame = dyad_at_point(t, r, theta, angle)
    alpha, beta = frame_coefficients(eta, frame.o, frame.iota)
    psi_sampler = _ComponentSampler(psi, quadrature, frame.o)
    phi_sampler = _ComponentSampler(phi, quadrature, frame.o)
    psi_values = psi_sampler(t, r, theta, angle)
    measured = phi_sampler(t, r, theta, angle)
    predicted = recursion_prediction(
        psi_values, tetrad_derivatives(psi_sampler, t, r, theta, angle), alpha, beta, spin, r, theta
    )
    scale = max(float(np.max(np.abs(measured))), 1e-300)
    return float(np.max(np.abs(measured - predicted))) / scale


def exterior_points(count, seed, margin=0.4):
    """Random (t, r, theta, phi) with r/3 <= t <= 3r and theta away from the axis."""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        r = float(rng.uniform(2.0, 20.0))
        t = float(r * rng.uniform(1.0 / 3.0, 3.0))
        theta = float(rng.uniform(margin, math.pi - margin))
        phi = float(rng.uniform(-math.pi, math.pi))
        points.append((t, r, theta, phi))
    return points


def verify_component_recursion(spin, points=None, seed=0, tolerance=RECURSION_TOLERANCE, quadrature=None):
    """
    Check the recursion for a spin-(s + 1/2) field built from a spin-s field.

    Args:
        spin: Spin s of psi (0, 1/2, 1, ...)
        points: (t, r, theta, phi) samples; defaults to 20 exterior points
        seed: Seed for the constant spinors and default points
        tolerance: Largest accepted relative residual
    """
    points = exterior_points(20, seed) if points is None else list(points)
    psi, phi, eta = build_recursion_fields(spin, seed)
    report = VerificationReport(f"component recursion s={spin}", trials=len(points))
    residuals = parallel_map(
        lambda point: recursion_residual(psi, phi, eta, spin, point, quadrature), points
    )
    for point, value in zip(points, residuals):
        if value > tolerance:
            report.record_failure(f"residual {value:.3e} at (t, r, theta, phi) = {point}")
    report.details["worst_residual"] = max(residuals) if residuals else 0.0
    logging.info(report.summary_line())
    return report
