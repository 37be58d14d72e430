"""
src/wave/kirchhoff.py

Solutions of the scalar wave equation d_t^2 phi = nabla^2 phi from profile
data (phi, d_t phi)|_{t=0} = (f, g), evaluated by Kirchhoff's spherical
means

    phi(t, x) = (1/4 pi) int_{S^2} [t (g + w . grad f) + f](x + t w) dw.

Derivatives of a solution are solutions with derived data, so no
quadrature output is ever differentiated.
"""

import logging
import math
import threading

import numpy as np

from config import MAX_DERIVATIVE_ORDER, QUAD_PHI, QUAD_THETA, QUADRATURE_RULE
from src.core.errors import ContractViolation, FrameSingularityError, OrderCapError
from src.fields.profile import ProfileScalar
from src.wave.quadrature import SphereQuadrature

FOUR_PI = 4.0 * math.pi


def default_quadrature():
    return SphereQuadrature(QUADRATURE_RULE, QUAD_THETA, QUAD_PHI)


class WaveScalar:
    """
    Wave solution with Cauchy data (f, g) and a derivative-order budget.

    Derived solutions are built on demand and cached; insertion is
    serialized so concurrent samplers share one derivative tree.
    """

    exact_chart = False

    def __init__(self, f, g=None, order=0, max_order=MAX_DERIVATIVE_ORDER):
        self.f = f
        self.g = g if g is not None else f.zero_like()
        self.order = order
        self.max_order = max_order
        self._cache = {}
        self._gradient = None
        self._lock = threading.Lock()

    @classmethod
    def from_data(cls, f, g=None, max_order=MAX_DERIVATIVE_ORDER):
        return cls(f, g, 0, max_order)

    def _derived(self, key, extra_order, build):
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        order = self.order + extra_order
        if order > self.max_order:
            raise OrderCapError(
                f"wave derivative of order {order} exceeds the cap {self.max_order}"
            )
        f, g = build()
        value = WaveScalar(f, g, order, self.max_order)
        with self._lock:
            return self._cache.setdefault(key, value)

    def derivative(self, mono):
        """Spatial derivative: the solution with data (d f, d g)."""
        mono = tuple(mono)
        if not any(mono):
            return self
        return self._derived(
            ("x", mono), sum(mono), lambda: (self.f.derivative(mono), self.g.derivative(mono))
        )

    def time_derivative(self):
        """d_t solution(f, g) = solution(g, nabla^2 f)."""
        return self._derived(("t",), 1, lambda: (self.g, self.f.laplacian()))

    def gradient_data(self):
        """Cached spatial gradient of f."""
        if self._gradient is None:
            gradient = self.f.gradient()
            with self._lock:
                if self._gradient is None:
                    self._gradient = gradient
        return self._gradient

    def zero_like(self):
        return WaveScalar(self.f.zero_like(), self.g.zero_like(), self.order, self.max_order)

    def is_zero(self):
        return self.f.is_zero() and self.g.is_zero()

    def scale(self, coeff):
        return WaveScalar(self.f.scale(coeff), self.g.scale(coeff), self.order, self.max_order)

    def _combine(self, other, sign):
        if not isinstance(other, WaveScalar):
            return NotImplemented
        f = self.f + other.f if sign > 0 else self.f - other.f
        g = self.g + other.g if sign > 0 else self.g - other.g
        return WaveScalar(f, g, max(self.order, other.order), self.max_order)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1.0)

    def evaluate_at(self, t, point, quadrature=None):
        return kirchhoff_eval(self, t, point, quadrature)

    def __repr__(self):
        return f"WaveScalar(order={self.order}, terms=({len(self.f)}, {len(self.g)}))"


def kirchhoff_eval(w, t, x, quadrature=None):
    """
    Value of the solution at time t >= 0 and point x.

    Args:
        w: WaveScalar
        t: Time
        x: Point (x, y, z)
        quadrature: SphereQuadrature (defaults to the configured rule)

    Returns:
        complex
    """
    if t < 0:
        raise ContractViolation(f"Kirchhoff evaluation needs t >= 0, got {t}")
    x = np.asarray(x, dtype=float)
    if t == 0:
        return complex(w.f.evaluate(x[0], x[1], x[2]))
    quadrature = quadrature or default_quadrature()
    directions, weights = quadrature.nodes(x, t)
    points = x[None, :] + t * directions
    px, py, pz = points[:, 0], points[:, 1], points[:, 2]
    integrand = w.f.evaluate(px, py, pz)
    if not w.g.is_zero():
        integrand = integrand + t * w.g.evaluate(px, py, pz)
    for axis, partial in enumerate(w.gradient_data()):
        if not partial.is_zero():
            integrand = integrand + t * directions[:, axis] * partial.evaluate(px, py, pz)
    return complex(np.sum(weights * integrand)) / FOUR_PI


def wave_derivative(w, alpha):
    """
    Derivative solution for the multi-index alpha = (a_t, a_x, a_y, a_z).

    Raises:
        OrderCapError: when the total order exceeds the cap
    """
    if len(alpha) != 4 or any(a < 0 for a in alpha):
        raise ContractViolation(f"multi-index must be four non-negative ints, got {alpha}")
    if w.order + sum(alpha) > w.max_order:
        raise OrderCapError(
            f"wave derivative of order {w.order + sum(alpha)} exceeds the cap {w.max_order}"
        )
    out = w.derivative(alpha[1:])
    for _ in range(alpha[0]):
        out = out.time_derivative()
    return out


def null_derivatives(w, t, x, quadrature=None):
    """
    D phi and D' phi = (1/sqrt 2)(d_t +- d_r) phi at (t, x).

    Raises:
        FrameSingularityError: at r = 0
    """
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise FrameSingularityError("null derivatives are undefined at r = 0")
    dt = kirchhoff_eval(w.time_derivative(), t, x, quadrature)
    dr = sum(
        (x[axis] / r) * kirchhoff_eval(w.derivative(unit), t, x, quadrature)
        for axis, unit in enumerate(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    )
    scale = 1.0 / math.sqrt(2.0)
    logging.debug(f"Null derivatives at t={t}, r={r}")
    return scale * (dt + dr), scale * (dt - dr)


def profile_wave(exponent, coeff=1.0, mono=(0, 0, 0), g=None, max_order=MAX_DERIVATIVE_ORDER):
    """Solution with f = coeff x^a y^b z^c <r>^exponent and optional g."""
    return WaveScalar.from_data(ProfileScalar.power(exponent, coeff, mono), g, max_order)
