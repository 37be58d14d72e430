"""
src/wave/checks.py

Correctness checks of the Kirchhoff evaluator: exact polynomial solutions,
closed-form null derivatives and closed-form sphere integrals.
"""

import logging
import math

import numpy as np

from config import DOUBLING_TOLERANCE, WAVE_CHECK_DELTAS, WAVE_CHECK_POINTS
from src.core.reporting import VerificationReport
from src.core.utils import relative_error
from src.fields.profile import ProfileScalar
from src.wave.estimates import quadrature_compare
from src.wave.kirchhoff import WaveScalar, default_quadrature, kirchhoff_eval, null_derivatives

POLY_TOLERANCE = 1e-10
CHECK_TIMES = (0.0, 0.5, 2.0, 7.5, 20.0)
CHECK_POINTS = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.3, -1.2, 2.0), (-4.0, 3.0, 0.5))


def _r_squared(coeff=1.0):
    return ProfileScalar({(2, 0, 0, 0.0): coeff, (0, 2, 0, 0.0): coeff, (0, 0, 2, 0.0): coeff})


def polynomial_solutions():
    """
    Named exact solutions as (WaveScalar, closed form phi(t, x)).
    """
    zero = ProfileScalar()
    x = ProfileScalar.power(0.0, 1.0, (1, 0, 0))
    return {
        "1": (WaveScalar(ProfileScalar.constant(1.0), zero), lambda t, p: 1.0),
        "t": (WaveScalar(zero, ProfileScalar.constant(1.0)), lambda t, p: t),
        "x": (WaveScalar(x, zero), lambda t, p: p[0]),
        "t x": (WaveScalar(zero, x), lambda t, p: t * p[0]),
        "t^2 + r^2/3": (
            WaveScalar(_r_squared(1.0 / 3.0), zero),
            lambda t, p: t * t + float(np.dot(p, p)) / 3.0,
        ),
        "t^3 + t r^2": (
            WaveScalar(zero, _r_squared(1.0)),
            lambda t, p: t**3 + t * float(np.dot(p, p)),
        ),
    }


def verify_polynomial_solutions(quadrature=None, tolerance=POLY_TOLERANCE):
    """Kirchhoff reproduces the polynomial solutions on a (t, x) grid."""
    quadrature = quadrature or default_quadrature()
    report = VerificationReport("kirchhoff-polynomial")
    worst = 0.0
    for name, (wave, exact) in polynomial_solutions().items():
        for t in CHECK_TIMES:
            for point in CHECK_POINTS:
                point = np.array(point)
                report.trials += 1
                value = kirchhoff_eval(wave, t, point, quadrature)
                reference = exact(t, point)
                error = relative_error(value, reference)
                worst = max(worst, error)
                if error > tolerance:
                    report.record_failure(
                        f"{name} at t={t}, x={point.tolist()}: {value} vs {reference}"
                    )
    report.details["worst_relative_error"] = worst
    logging.info(report.summary_line())
    return report


def verify_null_derivatives(quadrature=None, tolerance=POLY_TOLERANCE):
    """D and D' of t^2 + r^2/3 against (1/sqrt 2)(2t +- 2r/3)."""
    quadrature = quadrature or default_quadrature()
    wave = WaveScalar(_r_squared(1.0 / 3.0))
    report = VerificationReport("null-derivatives")
    for t in CHECK_TIMES:
        for point in CHECK_POINTS[1:]:
            point = np.array(point)
            r = float(np.linalg.norm(point))
            report.trials += 1
            d, d_prime = null_derivatives(wave, t, point, quadrature)
            expected = (
                (2 * t + 2 * r / 3) / math.sqrt(2.0),
                (2 * t - 2 * r / 3) / math.sqrt(2.0),
            )
            for label, value, reference in (("D", d, expected[0]), ("D'", d_prime, expected[1])):
                if relative_error(value, reference) > tolerance and abs(value - reference) > tolerance:
                    report.record_failure(f"{label} at t={t}, r={r:.3f}: {value} vs {reference}")
    logging.info(report.summary_line())
    return report


def sphere_integral_table(quadrature=None, deltas=WAVE_CHECK_DELTAS, points=WAVE_CHECK_POINTS):
    """
    Rows (delta, t, r, closed, numeric, rel_err) over deltas x points x points.
    """
    quadrature = quadrature or default_quadrature()
    rows = []
    for delta in deltas:
        for t in points:
            for r in points:
                closed, numeric, error = quadrature_compare(delta, t, r, quadrature)
                rows.append((delta, t, r, closed, numeric, error))
    return rows


def verify_sphere_integrals(quadrature=None, tolerance=DOUBLING_TOLERANCE):
    """Closed-form sphere integrals against quadrature, every row below tolerance."""
    rows = sphere_integral_table(quadrature)
    report = VerificationReport("sphere-integrals")
    report.trials = len(rows)
    for delta, t, r, closed, numeric, error in rows:
        if error > tolerance:
            report.record_failure(
                f"delta={delta}, t={t}, r={r}: closed {closed:.12e} vs quadrature {numeric:.12e}"
            )
    report.details["rows"] = rows
    report.details["worst_relative_error"] = max(row[-1] for row in rows)
    logging.info(report.summary_line())
    return report
