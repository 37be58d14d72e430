"""
src/wave/quadrature.py

Quadrature rules on the unit sphere for spherical means.

"gauss" is the product of Gauss-Legendre nodes in cos(theta) and a uniform
azimuth. "radial" orients the pole along the evaluation point and places
Gauss-Legendre nodes in q = log<|x + t w|>, which resolves the sharp
radial profiles of decaying data at large (t, r).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from config import QUAD_PHI, QUAD_THETA, RADIAL_RULE_MIN_RADIUS
from src.core.errors import ContractViolation

RULES = ("gauss", "radial")


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Nodes and weights on [-1, 1]."""
    nodes, weights = special.roots_legendre(order)
    return nodes, weights


@lru_cache(maxsize=None)
def product_rule(n_theta, n_phi):
    """
    Product Gauss rule on S^2.

    Returns:
        (directions of shape (M, 3), weights of shape (M,)) with weights summing to 4 pi
    """
    mu, w_mu = gauss_legendre(n_theta)
    psi = 2.0 * math.pi * (np.arange(n_phi) + 0.5) / n_phi
    sin_theta = np.sqrt(1.0 - mu**2)
    directions = np.stack(
        [
            np.outer(sin_theta, np.cos(psi)).ravel(),
            np.outer(sin_theta, np.sin(psi)).ravel(),
            np.repeat(mu, n_phi),
        ],
        axis=1,
    )
    weights = np.repeat(w_mu, n_phi) * (2.0 * math.pi / n_phi)
    directions.setflags(write=False)
    weights.setflags(write=False)
    return directions, weights


def _orthonormal_frame(axis):
    """Two unit vectors completing `axis` to a right-handed orthonormal frame."""
    helper = np.array([0.0, 0.0, 1.0]) if abs(axis[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return e1, e2


@dataclass(frozen=True)
class SphereQuadrature:
    """Rule name and orders (n_theta, n_phi)."""

    rule: str = "gauss"
    n_theta: int = QUAD_THETA
    n_phi: int = QUAD_PHI

    def __post_init__(self):
        if self.rule not in RULES:
            raise ContractViolation(f"unknown sphere rule {self.rule!r}; expected one of {RULES}")
        if self.n_theta < 1 or self.n_phi < 1:
            raise ContractViolation("quadrature orders must be positive")

    def doubled(self):
        """The same rule with both orders doubled."""
        return SphereQuadrature(self.rule, 2 * self.n_theta, 2 * self.n_phi)

    def nodes(self, center=None, radius=0.0):
        """
        Directions and weights for the sphere of the given radius about center.

        Args:
            center: Evaluation point x (only used by the radial rule)
            radius: Sphere radius t

        Returns:
            (directions (M, 3), weights (M,)); weights sum to 4 pi
        """
        if self.rule == "gauss" or center is None or radius <= 0.0:
            return product_rule(self.n_theta, self.n_phi)
        center = np.asarray(center, dtype=float)
        r = float(np.linalg.norm(center))
        if r < RADIAL_RULE_MIN_RADIUS:
            return product_rule(self.n_theta, self.n_phi)
        return self._radial_nodes(center / r, r, float(radius))

    def _radial_nodes(self, axis, r, t):
        x, w = gauss_legendre(self.n_theta)
        q_lo = 0.5 * math.log1p((r - t) ** 2)
        q_hi = 0.5 * math.log1p((r + t) ** 2)
        half = 0.5 * (q_hi - q_lo)
        q = q_lo + half * (x + 1.0)
        exp2q = np.exp(2.0 * q)
        mu = np.clip((exp2q - 1.0 - r * r - t * t) / (2.0 * r * t), -1.0, 1.0)
        w_mu = half * w * exp2q / (r * t)
        psi = 2.0 * math.pi * (np.arange(self.n_phi) + 0.5) / self.n_phi
        e1, e2 = _orthonormal_frame(axis)
        sin_theta = np.sqrt(1.0 - mu**2)
        ring = np.outer(np.cos(psi), e1) + np.outer(np.sin(psi), e2)
        directions = (
            np.repeat(mu, self.n_phi)[:, None] * axis[None, :]
            + np.repeat(sin_theta, self.n_phi)[:, None] * np.tile(ring, (self.n_theta, 1))
        )
        weights = np.repeat(w_mu, self.n_phi) * (2.0 * math.pi / self.n_phi)
        return directions, weights

    def integrate(self, func, center=None, radius=0.0):
        """sum_i w_i func(directions) for a vectorized func of an (M, 3) array."""
        directions, weights = self.nodes(center, radius)
        return np.sum(weights * func(directions))
