"""
src/fields/spinor_field.py

Symmetric spinor fields whose components live in one scalar backend
(PolyScalar, ProfileScalar, GridField or WaveScalar).

Backends share a small duck-typed protocol: derivative(mono), scale(coeff),
+, -, zero_like(), is_zero(), and an exact_chart flag telling operators
whether derivatives are taken in the scaled chart x' = sqrt(2) x.
"""

import threading

from src.core.errors import ContractViolation
from src.spinor.core import SymSpinor


class SpinorField:
    """Valence-k symmetric spinor field; valence < 0 is the trivial space."""

    def __init__(self, comps, zero=None, valence=None):
        comps = tuple(comps)
        if valence is None:
            valence = len(comps) - 1
        if valence >= 0 and len(comps) != valence + 1:
            raise ContractViolation(f"valence {valence} needs {valence + 1} components")
        if valence < 0 and comps:
            raise ContractViolation("the trivial space has no components")
        if zero is None:
            if not comps:
                raise ContractViolation("an empty field needs an explicit zero scalar")
            zero = comps[0].zero_like()
        self.comps = comps
        self.valence = valence
        self.zero = zero
        self._derivatives = {}
        self._lock = threading.Lock()

    @classmethod
    def trivial(cls, valence, zero):
        return cls((), zero=zero, valence=valence)

    @classmethod
    def zeros(cls, valence, zero):
        if valence < 0:
            return cls.trivial(valence, zero)
        return cls([zero] * (valence + 1), zero=zero)

    @property
    def exact_chart(self):
        return getattr(self.zero, "exact_chart", False)

    def derivative(self, index, mono):
        """Cached partial derivative of component `index`."""
        key = (index, tuple(mono))
        cached = self._derivatives.get(key)
        if cached is not None:
            return cached
        value = self.comps[index].derivative(mono)
        with self._lock:
            return self._derivatives.setdefault(key, value)

    def map(self, func):
        return SpinorField([func(c) for c in self.comps], zero=func(self.zero), valence=self.valence)

    def scale(self, coeff):
        return self.map(lambda c: c.scale(coeff))

    def _check(self, other):
        if not isinstance(other, SpinorField):
            raise ContractViolation("expected a SpinorField")
        if other.valence != self.valence:
            raise ContractViolation(f"valence mismatch: {self.valence} vs {other.valence}")

    def __add__(self, other):
        self._check(other)
        return SpinorField(
            [a + b for a, b in zip(self.comps, other.comps)], zero=self.zero, valence=self.valence
        )

    def __sub__(self, other):
        self._check(other)
        return SpinorField(
            [a - b for a, b in zip(self.comps, other.comps)], zero=self.zero, valence=self.valence
        )

    def __neg__(self):
        return SpinorField([-c for c in self.comps], zero=self.zero, valence=self.valence)

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def time_derivative(self):
        """Time derivative, for backends that carry time dependence."""
        return self.map(lambda c: c.time_derivative())

    def evaluate(self, x, y, z):
        """Pointwise value as a SymSpinor (components may be arrays)."""
        if self.valence < 0:
            raise ContractViolation("cannot evaluate the trivial space")
        return SymSpinor(c.evaluate(x, y, z) for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, SpinorField) or other.valence != self.valence:
            return False
        return all(a == b for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def __repr__(self):
        return f"SpinorField(valence={self.valence}, backend={type(self.zero).__name__})"
