"""
src/fields/polynomial.py

Exact polynomial scalars over the Gaussian rationals.

Polynomial fields live in the scaled chart x' = sqrt(2) x, in which the
soldering matrices have Gaussian-rational entries. Evaluation at a physical
point substitutes x' = sqrt(2) x.
"""

import math
import random
from fractions import Fraction

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.rings import ring

from config import COEFF_DENOMINATOR_MAX, COEFF_NUMERATOR_RANGE

FIELD_RING, X, Y, Z = ring("x, y, z", QQ_I)
DERIVATIVE_RING, PX, PY, PZ = ring("px, py, pz", QQ_I)

SQRT2 = math.sqrt(2.0)


def gaussian(real, imag=0):
    """Exact Gaussian rational from ints, Fractions or sympy Rationals."""
    real, imag = Fraction(real), Fraction(imag)
    return QQ_I(QQ(real.numerator, real.denominator), QQ(imag.numerator, imag.denominator))


def conjugate_gaussian(coeff):
    """Complex conjugate of an exact Gaussian rational."""
    return coeff.new(coeff.x, -coeff.y)


def to_complex(coeff):
    """Convert an exact Gaussian rational (or plain number) to complex."""
    if hasattr(coeff, "x") and hasattr(coeff, "y"):
        return complex(float(coeff.x), float(coeff.y))
    return complex(coeff)


def monomials(degree):
    """All exponent triples (a, b, c) with a + b + c <= degree, graded order."""
    out = []
    for total in range(degree + 1):
        for a in range(total, -1, -1):
            for b in range(total - a, -1, -1):
                out.append((a, b, total - a - b))
    return out


def evaluate_numeric(poly, point):
    """
    Evaluate a ring element at a numeric point.

    Args:
        poly: PolyElement of FIELD_RING or DERIVATIVE_RING
        point: Sequence of three numbers or numpy arrays

    Returns:
        complex (or complex array)
    """
    x, y, z = point
    total = 0j
    for (a, b, c), coeff in poly.terms():
        total = total + to_complex(coeff) * (x**a) * (y**b) * (z**c)
    return total


class PolyScalar:
    """Exact polynomial component of a spinor field (chart coordinates)."""

    exact_chart = True
    __slots__ = ("poly",)

    def __init__(self, poly):
        self.poly = poly if FIELD_RING.is_element(poly) else FIELD_RING(poly)

    @classmethod
    def from_terms(cls, terms):
        """Build from {(a, b, c): Gaussian rational} dropping zero coefficients."""
        return cls(FIELD_RING.from_dict({m: c for m, c in terms.items() if c}))

    @property
    def terms(self):
        return dict(self.poly.terms())

    @property
    def degree(self):
        if not self.poly:
            return -1
        return max(sum(m) for m in self.poly.itermonoms())

    def zero_like(self):
        return PolyScalar(FIELD_RING.zero)

    def is_zero(self):
        return not self.poly

    def derivative(self, mono):
        """Exact partial derivative d^a/dx'^a d^b/dy'^b d^c/dz'^c (chart)."""
        p = self.poly
        for axis, order in enumerate(mono):
            for _ in range(order):
                if not p:
                    return PolyScalar(p)
                p = p.diff(axis)
        return PolyScalar(p)

    def scale(self, coeff):
        return PolyScalar(self.poly * coeff)

    def conjugate(self):
        return PolyScalar(
            FIELD_RING.from_dict({m: conjugate_gaussian(c) for m, c in self.poly.terms()})
        )

    def evaluate_chart(self, point):
        return evaluate_numeric(self.poly, point)

    def evaluate(self, x, y, z):
        """Value at the physical point(s) (x, y, z)."""
        return evaluate_numeric(self.poly, (SQRT2 * np.asarray(x), SQRT2 * np.asarray(y), SQRT2 * np.asarray(z)))

    def __add__(self, other):
        if isinstance(other, PolyScalar):
            return PolyScalar(self.poly + other.poly)
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PolyScalar):
            return PolyScalar(self.poly - other.poly)
        return NotImplemented

    def __neg__(self):
        return PolyScalar(-self.poly)

    def __mul__(self, other):
        if isinstance(other, PolyScalar):
            return PolyScalar(self.poly * other.poly)
        return PolyScalar(self.poly * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PolyScalar(self.poly / other)

    def __eq__(self, other):
        if isinstance(other, PolyScalar):
            return self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"PolyScalar({self.poly})"


def random_gaussian_rational(rng):
    """Nonzero Gaussian rational with small numerators and denominators."""
    while True:
        real = Fraction(
            rng.randint(-COEFF_NUMERATOR_RANGE, COEFF_NUMERATOR_RANGE),
            rng.randint(1, COEFF_DENOMINATOR_MAX),
        )
        imag = Fraction(
            rng.randint(-COEFF_NUMERATOR_RANGE, COEFF_NUMERATOR_RANGE),
            rng.randint(1, COEFF_DENOMINATOR_MAX),
        )
        if real or imag:
            return gaussian(real, imag)


def random_poly_scalar(degree, rng):
    """Polynomial with a nonzero random coefficient on every monomial of degree <= degree."""
    return PolyScalar.from_terms({m: random_gaussian_rational(rng) for m in monomials(degree)})


def random_poly_spinor(valence, degree, seed):
    """
    Reproducible random polynomial spinor field.

    Args:
        valence: Spinor valence k
        degree: Maximal total degree of every component
        seed: Integer seed (same seed, same field)

    Returns:
        SpinorField of PolyScalar components
    """
    from src.fields.spinor_field import SpinorField

    rng = random.Random(f"poly-spinor:{valence}:{degree}:{seed}")
    return SpinorField([random_poly_scalar(degree, rng) for _ in range(valence + 1)])

