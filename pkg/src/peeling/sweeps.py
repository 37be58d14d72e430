"""
src/peeling/sweeps.py

Sample families for decay measurements: outgoing rays at fixed u (swept in
v), arcs at fixed large v (swept in u), and an interior timeline r = c t.
"""

from dataclasses import dataclass

import numpy as np

from config import (
    FIXED_U,
    FIXED_V,
    INTERIOR_RADIUS_RATIO,
    INTERIOR_T_SWEEP,
    SAMPLE_PHI,
    SAMPLE_THETA,
    SWEEP_SAMPLES,
    U_SWEEP,
    V_SWEEP,
)
from src.core.utils import japanese_bracket, spherical_to_cartesian

EXTERIOR = "exterior"
INTERIOR = "interior"


@dataclass(frozen=True)
class SamplePoint:
    """One spacetime sample along a sweep."""

    t: float
    r: float
    axis: str
    theta: float = SAMPLE_THETA
    phi: float = SAMPLE_PHI

    @property
    def u(self):
        return self.t - self.r

    @property
    def v(self):
        return self.t + self.r

    @property
    def region(self):
        if self.t > 3.0 * self.r:
            return INTERIOR
        if self.r / 3.0 <= self.t <= 3.0 * self.r:
            return EXTERIOR
        return "near-initial"

    @property
    def coordinate(self):
        """Sweep coordinate: the bracket of v, u or t."""
        value = {"v": self.v, "u": self.u, "t": self.t}[self.axis]
        return float(japanese_bracket(value))

    @property
    def point(self):
        return spherical_to_cartesian(self.r, self.theta, self.phi)


def _log_space(bounds, count):
    lo, hi = bounds
    return np.geomspace(lo, hi, count)


def fixed_u_sweep(u=FIXED_U, v_range=V_SWEEP, count=SWEEP_SAMPLES):
    return [SamplePoint(0.5 * (v + u), 0.5 * (v - u), "v") for v in _log_space(v_range, count)]


def fixed_v_sweep(v=FIXED_V, u_range=U_SWEEP, count=SWEEP_SAMPLES):
    return [SamplePoint(0.5 * (v + u), 0.5 * (v - u), "u") for u in _log_space(u_range, count)]


def interior_sweep(t_range=INTERIOR_T_SWEEP, ratio=INTERIOR_RADIUS_RATIO, count=SWEEP_SAMPLES):
    return [SamplePoint(t, ratio * t, "t") for t in _log_space(t_range, count)]


def standard_sweeps(count=SWEEP_SAMPLES):
    """All three families, keyed by axis."""
    return {
        "v": fixed_u_sweep(count=count),
        "u": fixed_v_sweep(count=count),
        "t": interior_sweep(count=count),
    }
