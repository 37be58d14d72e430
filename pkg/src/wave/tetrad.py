"""
src/wave/tetrad.py

Null-tetrad calculus in spherical coordinates (t, r, theta, phi):

    D  = (d_t + d_r)/sqrt 2,    D' = (d_t - d_r)/sqrt 2,
    delta = (d_theta + (i/sin theta) d_phi)/(r sqrt 2),  delta' its conjugate.

Commutators are checked symbolically with sympy on closed-form spacetime
functions; the transport of the spin dyad along the tetrad is checked by
finite differences of the shipped dyad construction.
"""

import logging
import math

import numpy as np
import sympy as sp

from config import FRAME_TOLERANCE, RECURSION_STEP, RECURSION_TOLERANCE, THETA_MARGIN
from src.core.errors import FrameSingularityError
from src.core.reporting import VerificationReport
from src.spinor.frame import NullFrame, dyad_spinor

T, R, THETA, PHI = sp.symbols("t r theta phi", positive=True)
SQRT2_SYM = sp.sqrt(2)


def D(expr):
    return (sp.diff(expr, T) + sp.diff(expr, R)) / SQRT2_SYM


def D_prime(expr):
    return (sp.diff(expr, T) - sp.diff(expr, R)) / SQRT2_SYM


def delta(expr):
    return (sp.diff(expr, THETA) + sp.I / sp.sin(THETA) * sp.diff(expr, PHI)) / (R * SQRT2_SYM)


def delta_prime(expr):
    return (sp.diff(expr, THETA) - sp.I / sp.sin(THETA) * sp.diff(expr, PHI)) / (R * SQRT2_SYM)


def sample_functions():
    """Closed-form spacetime functions: polynomials in t times radial profiles and harmonics."""
    bracket = sp.sqrt(1 + R**2)
    return [
        T**2 + R**2 / 3,
        T * R**2 * sp.cos(THETA),
        T**3 * bracket ** sp.Rational(-5, 2) * sp.sin(THETA) * sp.cos(PHI),
        (T + R) ** 2 * bracket ** (-3) * sp.sin(THETA) ** 2 * sp.exp(2 * sp.I * PHI),
        sp.exp(-(T - R) ** 2) * sp.cos(THETA) ** 3 * sp.sin(PHI),
    ]


def commutator_residuals(expr):
    """
    Residual expressions of the tetrad commutators on one function.

    Returns:
        dict name -> simplified sympy expression (zero when the relation holds)
    """
    def r_delta(e):
        return R * delta(e)

    residuals = {
        "[D, D']": D(D_prime(expr)) - D_prime(D(expr)),
        "delta D - D delta - delta/(r sqrt2)": delta(D(expr))
        - D(delta(expr))
        - delta(expr) / (R * SQRT2_SYM),
        "delta D' - D' delta + delta/(r sqrt2)": delta(D_prime(expr))
        - D_prime(delta(expr))
        + delta(expr) / (R * SQRT2_SYM),
        "[D, r delta]": D(r_delta(expr)) - r_delta(D(expr)),
        "[D', r delta]": D_prime(r_delta(expr)) - r_delta(D_prime(expr)),
    }
    return {name: sp.simplify(value) for name, value in residuals.items()}


def verify_commutators(functions=None):
    """Symbolic commutator suite over closed-form test functions."""
    report = VerificationReport("tetrad-commutators")
    for expr in functions if functions is not None else sample_functions():
        report.trials += 1
        for name, residual in commutator_residuals(expr).items():
            if residual != 0:
                report.record_failure(f"{name} fails on {expr}: residual {residual}")
    logging.info(report.summary_line())
    return report


def _aligned_dyad(theta, phi, reference):
    """Dyad at (theta, phi) with the sign of o matched to the reference o."""
    o, iota = dyad_spinor(theta, phi)
    if np.linalg.norm(o + reference) < np.linalg.norm(o - reference):
        return -o, -iota
    return o, iota


def _central_difference(func, h):
    """Fourth-order central difference of func at 0."""
    return (-func(2 * h) + 8 * func(h) - 8 * func(-h) + func(-2 * h)) / (12 * h)


def angular_derivatives(theta, phi, r, h=RECURSION_STEP):
    """
    delta and delta' of the dyad components at (r, theta, phi).

    Returns:
        dict with keys "o", "iota", "delta o", "delta iota", "delta' o", "delta' iota"
    """
    if theta < THETA_MARGIN or theta > math.pi - THETA_MARGIN:
        raise FrameSingularityError(f"theta = {theta} is too close to the axis")
    if r <= 0:
        raise FrameSingularityError(f"dyad derivatives undefined at r = {r}")
    o, iota = dyad_spinor(theta, phi)
    d_theta_o = _central_difference(lambda s: _aligned_dyad(theta + s, phi, o)[0], h)
    d_theta_i = _central_difference(lambda s: _aligned_dyad(theta + s, phi, o)[1], h)
    d_phi_o = _central_difference(lambda s: _aligned_dyad(theta, phi + s, o)[0], h)
    d_phi_i = _central_difference(lambda s: _aligned_dyad(theta, phi + s, o)[1], h)
    scale = 1.0 / (r * math.sqrt(2.0))
    inv_sin = 1j / math.sin(theta)
    return {
        "o": o,
        "iota": iota,
        "delta o": scale * (d_theta_o + inv_sin * d_phi_o),
        "delta iota": scale * (d_theta_i + inv_sin * d_phi_i),
        "delta' o": scale * (d_theta_o - inv_sin * d_phi_o),
        "delta' iota": scale * (d_theta_i - inv_sin * d_phi_i),
    }


def transport_residuals(theta, phi, r, h=RECURSION_STEP):
    """
    Residuals of the dyad transport relations at one point, relative to 1/r.

    D and D' of the dyad vanish identically because o and iota depend on
    the angles only; the angular relations are measured.
    """
    d = angular_derivatives(theta, phi, r, h)
    o, iota = d["o"], d["iota"]
    c = 1.0 / math.tan(theta) / (2.0 * r * math.sqrt(2.0))
    k = 1.0 / (r * math.sqrt(2.0))
    expected = {
        "delta o": c * o,
        "delta iota": -c * iota - k * o,
        "delta' o": -c * o + k * iota,
        "delta' iota": c * iota,
    }
    return {
        name: float(np.max(np.abs(d[name] - value))) * r for name, value in expected.items()
    }


def verify_dyad_transport(points=None, tolerance=RECURSION_TOLERANCE):
    """
    Transport relations on a set of (theta, phi, r) points.

    Args:
        points: Iterable of (theta, phi, r); defaults to a fixed spread away from the axis
        tolerance: Largest accepted residual (scaled by r)
    """
    if points is None:
        points = [
            (theta, phi, r)
            for theta in (0.3, 1.1, 1.9, 2.7)
            for phi in (-2.5, 0.0, 0.7, 2.9)
            for r in (0.5, 7.0)
        ]
    report = VerificationReport("dyad-transport")
    worst = 0.0
    for theta, phi, r in points:
        report.trials += 1
        for name, value in transport_residuals(theta, phi, r).items():
            worst = max(worst, value)
            if value > tolerance:
                report.record_failure(
                    f"{name} off by {value:.3e} at theta={theta}, phi={phi}, r={r}"
                )
    report.details["worst_residual"] = worst
    logging.info(report.summary_line())
    return report


def frame_report(points=None, tolerance=FRAME_TOLERANCE):
    """Closed-form l, n, m and normalization of the dyad over a set of angles."""
    if points is None:
        points = [(theta, phi) for theta in (0.2, 1.0, 2.0, 2.9) for phi in (-3.0, -1.0, 0.5, 2.5)]
    report = VerificationReport("null-frame")
    for theta, phi in points:
        report.trials += 1
        o, iota = dyad_spinor(theta, phi)
        frame = NullFrame(0.0, 1.0, theta, phi, o, iota)
        for name, value in frame.residuals().items():
            if value > tolerance:
                report.record_failure(f"{name} off by {value:.3e} at theta={theta}, phi={phi}")
    logging.info(report.summary_line())
    return report
