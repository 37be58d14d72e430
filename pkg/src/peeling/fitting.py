"""
src/peeling/fitting.py

Log-log least-squares fits of decay exponents.
"""

import math
from dataclasses import dataclass

import numpy as np

from config import MIN_FIT_SAMPLES
from src.core.errors import FitError


@dataclass(frozen=True)
class DecayFit:
    """Slope of log|phi| against log(coordinate)."""

    slope: float
    stderr: float
    intercept: float
    samples: int
    i: object = None
    axis: str = ""

    @property
    def fitted(self):
        return self.slope


def fit_decay_exponent(samples, i=None, axis="", min_samples=MIN_FIT_SAMPLES):
    """
    Fit |phi| ~ C coordinate^slope.

    Args:
        samples: Iterable of (coordinate, magnitude), coordinates > 0
        i: Component label carried into the result
        axis: Sweep axis label carried into the result
        min_samples: Smallest accepted sample count

    Returns:
        DecayFit with the slope's standard error

    Raises:
        FitError: too few samples, or a nonpositive coordinate or magnitude
    """
    samples = list(samples)
    if len(samples) < min_samples:
        raise FitError(f"need at least {min_samples} samples, got {len(samples)}")
    coords = np.array([c for c, _ in samples], dtype=float)
    mags = np.array([m for _, m in samples], dtype=float)
    if np.any(coords <= 0):
        raise FitError("fit coordinates must be positive")
    if np.any(~np.isfinite(mags)) or np.any(mags <= 0):
        raise FitError("fit magnitudes must be positive and finite")
    x, y = np.log(coords), np.log(mags)
    if np.ptp(x) == 0:
        raise FitError("fit coordinates are all equal")
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), residual, _, _ = np.linalg.lstsq(design, y, rcond=None)
    dof = len(samples) - 2
    rss = float(residual[0]) if residual.size else float(np.sum((design @ [slope, intercept] - y) ** 2))
    sigma2 = rss / dof if dof > 0 else 0.0
    spread = float(np.sum((x - x.mean()) ** 2))
    stderr = math.sqrt(sigma2 / spread) if spread > 0 else math.inf
    return DecayFit(float(slope), stderr, float(intercept), len(samples), i, axis)
