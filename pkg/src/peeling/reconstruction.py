"""
src/peeling/reconstruction.py

Forward evolution of a spin-s field from Hertz data zeta: the potential
chi solves the wave equation componentwise with data (0, sqrt 2 zeta), and

    phi = G_2s Curl_2s chi + (1/sqrt 2) G_2s d_t chi.

Every derivative of chi is a wave solution with derived data, so the field
components are themselves WaveScalars evaluated by Kirchhoff's formula.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from config import MAX_DERIVATIVE_ORDER
from src.core.errors import ContractViolation, FrameSingularityError
from src.core.parallel import parallel_map
from src.fields.profile import ProfileScalar
from src.fields.spinor_field import SpinorField
from src.operators.calculus import apply
from src.operators.tags import Curl, Div, G
from src.spinor.core import SymSpinor
from src.wave.kirchhoff import WaveScalar, default_quadrature, kirchhoff_eval

SQRT2 = math.sqrt(2.0)


def peel_profile_exponent(spin, delta):
    """Radial exponent delta + 2s - 1 of the Hertz data for a field of weight delta."""
    return delta + float(2 * Fraction(spin)) - 1.0


def peel_zeta(spin, delta, coefficients):
    """
    Hertz data with components c_i <r>^(delta + 2s - 1).

    Args:
        spin: Spin s
        delta: Field weight
        coefficients: 2s + 1 complex numbers c_i
    """
    valence = int(2 * Fraction(spin))
    coefficients = list(coefficients)
    if len(coefficients) != valence + 1:
        raise ContractViolation(f"spin {spin} needs {valence + 1} coefficients")
    exponent = peel_profile_exponent(spin, delta)
    comps = [
        ProfileScalar.power(exponent, c) if c != 0 else ProfileScalar() for c in coefficients
    ]
    return SpinorField(comps, zero=ProfileScalar())


def potential_from_zeta(zeta, max_order=MAX_DERIVATIVE_ORDER):
    """Potential chi with data (0, sqrt 2 zeta) as a field of WaveScalars."""
    comps = [WaveScalar(c.zero_like(), c.scale(SQRT2), 0, max_order) for c in zeta.comps]
    return SpinorField(comps, zero=WaveScalar(ProfileScalar(), max_order=max_order))


def field_from_potential(chi):
    """phi = G Curl chi + (1/sqrt 2) G d_t chi as a field of WaveScalars."""
    k = chi.valence
    curl_part = apply(G(k), apply(Curl(k), chi))
    time_part = apply(G(k), chi.time_derivative())
    return curl_part + time_part.scale(1.0 / SQRT2)


class ReconstructedField:
    """Spin-s field evolved from Hertz data; component WaveScalars are built once."""

    def __init__(self, zeta, max_order=MAX_DERIVATIVE_ORDER):
        self.zeta = zeta
        self.valence = zeta.valence
        self.chi = potential_from_zeta(zeta, max_order)
        self.field = field_from_potential(self.chi)

    @property
    def spin(self):
        return Fraction(self.valence, 2)

    def is_degenerate(self):
        return self.zeta.is_zero()

    def evaluate(self, t, x, quadrature=None):
        """SymSpinor value of phi at (t, x)."""
        quadrature = quadrature or default_quadrature()
        return SymSpinor(kirchhoff_eval(c, t, x, quadrature) for c in self.field.comps)

    def initial_value(self, x):
        """G zeta evaluated directly on the profile data."""
        g_zeta = apply(G(self.valence), self.zeta)
        x = np.asarray(x, dtype=float)
        return SymSpinor(complex(c.evaluate(x[0], x[1], x[2])) for c in g_zeta.comps)

    def field_equation_residual(self, t, x, quadrature=None):
        """
        max |d_t phi - sqrt 2 Curl phi| and max |Div phi| at (t, x), relative to |phi|.
        """
        quadrature = quadrature or default_quadrature()
        k = self.valence
        d_t = self.field.time_derivative()
        curl = apply(Curl(k), self.field)

        def values(field):
            return np.array([kirchhoff_eval(c, t, x, quadrature) for c in field.comps])

        scale = max(float(np.max(np.abs(values(self.field)))), 1e-300)
        evolution = float(np.max(np.abs(values(d_t) - SQRT2 * values(curl))))
        divergence = 0.0
        if k >= 2:
            divergence = float(np.max(np.abs(values(apply(Div(k), self.field)))))
        return evolution / scale, divergence / scale


def reconstruct_field_at(source, t, x, quadrature=None):
    """
    Field value at (t, x) for t >= 0 and r > 0.

    Args:
        source: ReconstructedField or Hertz data zeta (SpinorField of ProfileScalars)
        t: Time
        x: Point (x, y, z)
        quadrature: Sphere rule

    Returns:
        SymSpinor of valence 2s
    """
    if t < 0:
        raise ContractViolation(f"reconstruction needs t >= 0, got {t}")
    if float(np.linalg.norm(x)) == 0.0:
        raise FrameSingularityError("reconstruction is excluded at r = 0")
    if not isinstance(source, ReconstructedField):
        source = ReconstructedField(source)
    return source.evaluate(t, x, quadrature)


def initial_consistency(field, points, quadrature=None):
    """
    Worst relative gap between the evolved field at t = 0 and G zeta.

    Args:
        field: ReconstructedField
        points: Iterable of spatial points
    """

    def gap(point):
        evolved = field.evaluate(0.0, point, quadrature).comps
        direct = field.initial_value(point).comps
        scale = max(max(abs(c) for c in direct), 1e-300)
        return max(abs(a - b) for a, b in zip(evolved, direct)) / scale

    gaps = parallel_map(gap, list(points))
    worst = max(gaps) if gaps else 0.0
    logging.debug(f"t = 0 reconstruction gap {worst:.3e} over {len(gaps)} points")
    return worst

