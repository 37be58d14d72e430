"""
src/fields/profile.py

Closed-form radial profiles: finite sums of coeff * x^a y^b z^c <r>^e with
<r> = (1 + r^2)^(1/2). The family is closed under partial derivatives and
smooth on all of R^3, so wave solutions can be differentiated through their
data instead of through quadrature output.
"""

import numpy as np

from src.fields.polynomial import SQRT2, to_complex


class ProfileScalar:
    """Immutable sum of profile terms keyed by (a, b, c, e)."""

    exact_chart = False
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, coeff in (terms or {}).items():
            a, b, c, e = key
            key = (int(a), int(b), int(c), float(e))
            value = clean.get(key, 0j) + complex(coeff)
            if value != 0:
                clean[key] = value
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def power(cls, exponent, coeff=1.0, mono=(0, 0, 0)):
        """coeff * x^a y^b z^c <r>^exponent."""
        return cls({(*mono, exponent): coeff})

    @classmethod
    def from_poly(cls, scalar):
        """Physical-coordinate profile of a chart polynomial (x' = sqrt(2) x)."""
        terms = {}
        for (a, b, c), coeff in scalar.terms.items():
            terms[(a, b, c, 0.0)] = to_complex(coeff) * SQRT2 ** (a + b + c)
        return cls(terms)

    @classmethod
    def constant(cls, value):
        return cls({(0, 0, 0, 0.0): value})

    def zero_like(self):
        return ProfileScalar()

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def derivative(self, mono):
        """Exact partial derivative d^a/dx^a d^b/dy^b d^c/dz^c."""
        out = self
        for axis, order in enumerate(mono):
            for _ in range(order):
                out = out.partial(axis)
        return out

    def partial(self, axis):
        """Single partial derivative along axis 0, 1 or 2."""
        new = {}
        for (a, b, c, e), coeff in self.terms.items():
            powers = [a, b, c]
            if powers[axis]:
                lowered = list(powers)
                lowered[axis] -= 1
                key = (*lowered, e)
                new[key] = new.get(key, 0j) + coeff * powers[axis]
            if e != 0.0:
                raised = list(powers)
                raised[axis] += 1
                key = (*raised, e - 2.0)
                new[key] = new.get(key, 0j) + coeff * e
        return ProfileScalar(new)

    def laplacian(self):
        """Euclidean Laplacian d_x^2 + d_y^2 + d_z^2."""
        total = ProfileScalar()
        for axis in range(3):
            total = total + self.partial(axis).partial(axis)
        return total

    def gradient(self):
        return tuple(self.partial(axis) for axis in range(3))

    def leading_exponent(self):
        """Upper bound on the growth rate: max over terms of a + b + c + e."""
        if not self.terms:
            return -np.inf
        return max(a + b + c + e for a, b, c, e in self.terms)

    def scale(self, coeff):
        factor = to_complex(coeff)
        return ProfileScalar({k: v * factor for k, v in self.terms.items()})

    def evaluate(self, x, y, z):
        """
        Vectorized evaluation at physical points.

        Args:
            x, y, z: Scalars or numpy arrays of equal shape

        Returns:
            complex value or array
        """
        x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)
        shape = np.broadcast(x, y, z).shape
        if not self.terms:
            return np.zeros(shape, complex) if shape else 0j
        log_bracket = 0.5 * np.log1p(x * x + y * y + z * z)
        radial = {}
        powers = ({}, {}, {})
        total = np.zeros(shape, complex)
        for (a, b, c, e), coeff in self.terms.items():
            if e not in radial:
                radial[e] = np.exp(e * log_bracket)
            value = coeff * radial[e]
            for axis, (order, base) in enumerate(((a, x), (b, y), (c, z))):
                if order:
                    cache = powers[axis]
                    if order not in cache:
                        cache[order] = base**order
                    value = value * cache[order]
            total = total + value
        return total if shape else complex(total)

    def __add__(self, other):
        if isinstance(other, ProfileScalar):
            merged = dict(self.terms)
            for key, coeff in other.terms.items():
                merged[key] = merged.get(key, 0j) + coeff
            return ProfileScalar(merged)
        if isinstance(other, (int, float, complex)) and other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ProfileScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, ProfileScalar):
            return self + (-other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ProfileScalar):
            product = {}
            for (a1, b1, c1, e1), v1 in self.terms.items():
                for (a2, b2, c2, e2), v2 in other.terms.items():
                    key = (a1 + a2, b1 + b2, c1 + c2, e1 + e2)
                    product[key] = product.get(key, 0j) + v1 * v2
            return ProfileScalar(product)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.scale(1.0 / to_complex(other))

    def conjugate(self):
        return ProfileScalar({k: v.conjugate() for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, ProfileScalar):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def __repr__(self):
        return f"ProfileScalar({len(self.terms)} terms)"
