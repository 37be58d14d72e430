"""
src/peeling/scalar_decay.py

Decay slopes of the scalar wave with data f = <r>^delta, g = 0, measured by
Kirchhoff evaluation and compared with the case-selected envelope.
"""

import logging

import numpy as np

from config import (
    FIT_MIN_U,
    FIT_MIN_V,
    SCALAR_U_SLOPE_TOLERANCE,
    SCALAR_V_SLOPE_TOLERANCE,
    SWEEP_SAMPLES,
)
from src.core.parallel import parallel_map
from src.core.reporting import VerificationReport
from src.core.utils import japanese_bracket, relative_error
from src.peeling.fitting import fit_decay_exponent
from src.peeling.sweeps import fixed_u_sweep, fixed_v_sweep
from src.wave.estimates import decay_envelope, envelope_consistency
from src.wave.kirchhoff import default_quadrature, kirchhoff_eval, profile_wave

CLOSED_FORM_TOLERANCE = 1e-6


def scalar_closed_form(delta, t, r):
    """Solution for f = <r>^delta, g = 0 at r > 0: (v<v>^delta - u<u>^delta)/(2r)."""
    u, v = t - r, t + r
    return (v * japanese_bracket(v) ** delta - u * japanese_bracket(u) ** delta) / (2.0 * r)


def predicted_slopes(delta):
    """Expected (v-slope at fixed u, u-slope at fixed v); None where no slope is asserted."""
    if delta < -1:
        return -1.0, 1.0 + delta
    if delta > -1:
        return delta, None
    return None, None


def _fit_window(samples, axis):
    cutoff = FIT_MIN_V if axis == "v" else FIT_MIN_U
    raw = {"v": lambda s: s.v, "u": lambda s: s.u}[axis]
    return [s for s in samples if raw(s) >= cutoff]


def run_scalar_decay(delta, quadrature=None, count=SWEEP_SAMPLES):
    """
    Slopes, closed-form agreement and envelope consistency for one weight.

    Returns:
        VerificationReport with the fits and measured samples in details
    """
    quadrature = quadrature or default_quadrature()
    wave = profile_wave(delta)
    report = VerificationReport(f"scalar decay delta={delta}")
    expected = dict(zip(("v", "u"), predicted_slopes(delta)))
    tolerances = {"v": SCALAR_V_SLOPE_TOLERANCE, "u": SCALAR_U_SLOPE_TOLERANCE}
    rows = []
    for axis, sweep in (("v", fixed_u_sweep(count=count)), ("u", fixed_v_sweep(count=count))):
        values = parallel_map(lambda s: abs(kirchhoff_eval(wave, s.t, s.point, quadrature)), sweep)
        for sample, value in zip(sweep, values):
            report.trials += 1
            exact = abs(scalar_closed_form(delta, sample.t, sample.r))
            error = relative_error(value, exact)
            if error > CLOSED_FORM_TOLERANCE:
                report.record_failure(
                    f"Kirchhoff vs closed form at t={sample.t:.2f}, r={sample.r:.2f}: rel err {error:.2e}"
                )
            rows.append((sample, value))
        window = _fit_window(sweep, axis)
        magnitudes = dict(zip(sweep, values))
        fit = fit_decay_exponent([(s.coordinate, magnitudes[s]) for s in window], axis=axis)
        report.details[f"fit_{axis}"] = fit
        target = expected[axis]
        if target is not None and abs(fit.slope - target) > tolerances[axis]:
            report.record_failure(
                f"{axis}-slope {fit.slope:.3f} differs from {target:.3f} by more than {tolerances[axis]}"
            )
        logging.info(f"delta={delta}: {axis}-slope {fit.slope:.4f} (expected {target})")
    envelopes = [decay_envelope(delta, 0, 0, 0, s.u, s.v) for s, _ in rows]
    order = np.argsort([s.v for s, _ in rows])
    check = envelope_consistency(
        [rows[j][1] for j in order], [envelopes[j] for j in order]
    )
    report.details["envelope"] = check
    if not check.passed:
        report.record_failure(
            f"envelope exceeded: worst ratio {check.worst_ratio:.2f} above margin {check.margin}"
        )
    report.details["samples"] = rows
    return report
