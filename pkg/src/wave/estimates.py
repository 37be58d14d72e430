"""
src/wave/estimates.py

Closed-form sphere integrals of radial weights, the case-selected decay
envelopes of wave solutions, and the quadrature diagnostics built on them.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from config import DOUBLING_TOLERANCE, ENVELOPE_MARGIN
from src.core.errors import ContractViolation
from src.core.utils import japanese_bracket, null_coordinates, relative_error


def sphere_weight_integral(delta, t, r):
    """
    Closed form of int_{S^2} <|x + t w|>^delta dw for |x| = r.

    For delta != -2 this is 8 pi (<v>^(2+delta) - <u>^(2+delta)) / ((2+delta)(<v>^2 - <u>^2)),
    written with expm1/log1p so the removable singularities at r t = 0 and
    delta = -2 stay accurate.

    Args:
        delta: Weight exponent
        t: Sphere radius (time), t >= 0
        r: Distance of the centre from the origin, r >= 0
    """
    if t < 0 or r < 0:
        raise ContractViolation(f"sphere integral needs t, r >= 0, got t={t}, r={r}")
    u_sq = 1.0 + (t - r) ** 2
    rt4 = 4.0 * r * t
    if rt4 == 0.0:
        return 4.0 * math.pi * u_sq ** (0.5 * delta)
    growth = math.log1p(rt4 / u_sq)
    if math.isclose(delta, -2.0, rel_tol=0.0, abs_tol=1e-14):
        return 4.0 * math.pi * growth / rt4
    p = 0.5 * (2.0 + delta)
    return 8.0 * math.pi * u_sq**p * math.expm1(p * growth) / ((2.0 + delta) * rt4)


def sphere_weight_oracle(delta, t, r):
    """Adaptive 1-D reference: 2 pi int_{-1}^{1} (1 + r^2 + t^2 + 2 r t mu)^(delta/2) dmu."""
    value, _ = integrate.quad(
        lambda mu: (1.0 + r * r + t * t + 2.0 * r * t * mu) ** (0.5 * delta),
        -1.0,
        1.0,
        epsabs=0.0,
        epsrel=1e-13,
        limit=200,
    )
    return 2.0 * math.pi * value


def sphere_weight_quadrature(delta, t, r, quadrature):
    """The same integral by the sphere rule, centred at x = (0, 0, r)."""
    center = np.array([0.0, 0.0, r])

    def weight(directions):
        points = center[None, :] + t * directions
        return japanese_bracket(np.linalg.norm(points, axis=1)) ** delta

    return float(quadrature.integrate(weight, center, t))


def quadrature_compare(delta, t, r, quadrature):
    """
    Closed form against quadrature.

    Returns:
        Tuple (closed, numeric, relative error)
    """
    closed = sphere_weight_integral(delta, t, r)
    numeric = sphere_weight_quadrature(delta, t, r, quadrature)
    return closed, numeric, relative_error(numeric, closed)


def decay_envelope(delta, k, l, m, u, v):
    """
    Pointwise bound shape for d_v^k d_u^l (angular)^m of a wave solution
    with data weight delta.

    Returns:
        <u>^(1+delta-l) <v>^(-1-k-m)                            if delta < l - 1
        (log<v> - log<u>) / (<v>^(l+m) (<v> - <u>))              if delta = l - 1
        <v>^(delta-l-m-k)                                        if delta > l - 1
    """
    bu, bv = float(japanese_bracket(u)), float(japanese_bracket(v))
    edge = l - 1
    if math.isclose(delta, edge, rel_tol=0.0, abs_tol=1e-12):
        if math.isclose(bu, bv, rel_tol=1e-14):
            ratio = 1.0 / bv
        else:
            ratio = (math.log(bv) - math.log(bu)) / (bv - bu)
        return ratio / bv ** (l + m)
    if delta < edge:
        return bu ** (1.0 + delta - l) * bv ** (-1.0 - k - m)
    return bv ** (delta - l - m - k)


def envelope_at(delta, t, r, k=0, l=0, m=0):
    u, v = null_coordinates(t, r)
    return decay_envelope(delta, k, l, m, u, v)


@dataclass
class EnvelopeCheck:
    """Single-constant domination of measured magnitudes by an envelope."""

    constant: float
    worst_ratio: float
    margin: float
    samples: int

    @property
    def passed(self):
        return self.worst_ratio <= self.margin


def envelope_consistency(magnitudes, envelopes, fit_count=None, margin=ENVELOPE_MARGIN):
    """
    Fit C = max |phi| / envelope on the first fit_count samples and test
    that every sample stays below margin * C.

    Args:
        magnitudes: Measured |phi| values, ordered along the sweep
        envelopes: Envelope values at the same samples
        fit_count: Number of leading samples used to fix C (default: half)
        margin: Allowed excess over the fitted constant

    Returns:
        EnvelopeCheck
    """
    magnitudes = np.asarray(magnitudes, dtype=float)
    envelopes = np.asarray(envelopes, dtype=float)
    if magnitudes.shape != envelopes.shape or magnitudes.size == 0:
        raise ContractViolation("envelope check needs matching, non-empty sample arrays")
    ratios = magnitudes / envelopes
    fit_count = fit_count or max(1, magnitudes.size // 2)
    constant = float(np.max(ratios[:fit_count]))
    if constant <= 0.0:
        return EnvelopeCheck(0.0, 0.0 if np.all(ratios == 0) else np.inf, margin, magnitudes.size)
    worst = float(np.max(ratios) / constant)
    return EnvelopeCheck(constant, worst, margin, magnitudes.size)


def doubling_change(evaluate, quadrature):
    """
    Relative change of evaluate(quadrature) when both orders are doubled.

    Args:
        evaluate: Callable taking a SphereQuadrature and returning a number
        quadrature: Base rule
    """
    base = evaluate(quadrature)
    fine = evaluate(quadrature.doubled())
    return relative_error(base, fine)


def doubling_flags(evaluate, points, quadrature, tolerance=DOUBLING_TOLERANCE):
    """
    Points whose value moves by more than tolerance under order doubling.

    Returns:
        List of (point, relative change) for the under-resolved points
    """
    flagged = []
    for point in points:
        change = doubling_change(lambda q: evaluate(point, q), quadrature)
        if change > tolerance:
            flagged.append((point, change))
    if flagged:
        logging.warning(
            f"{len(flagged)} of {len(points)} samples changed by more than "
            f"{tolerance:.1e} under quadrature doubling"
        )
    return flagged
