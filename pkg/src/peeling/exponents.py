"""
src/peeling/exponents.py

Decay exponents predicted for the null components of a spin-s field with
data of weight delta, in the interior (t > 3r) and exterior (r/3 < t < 3r)
regions. Derivative orders are D^k D'^l (angular)^m with n = k + l + m.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from src.core.errors import ContractViolation, ExcludedWeightError

INTERIOR = "interior"
PEELING = "peeling"  # <u>^(e_u) <v>^(e_v), the component separates by i
SATURATED = "saturated"  # <v>^(delta - n), no distinction between components

CASE_NUMBERS = {INTERIOR: 1, PEELING: 2, SATURATED: 3}


@dataclass(frozen=True)
class ExponentPrediction:
    """Predicted exponents of |D^k D'^l (angular)^m phi_i|."""

    spin: Fraction
    delta: float
    i: int
    case: str
    e_u: float
    e_v: float
    interior: float
    margin: float

    @property
    def case_number(self):
        return CASE_NUMBERS[self.case]

    def predicted(self, axis):
        """Exponent along a sweep axis: "u", "v" or "t"."""
        if axis == "u":
            return self.e_u
        if axis == "v":
            return self.e_v
        if axis == "t":
            return self.interior
        raise ContractViolation(f"unknown sweep axis {axis!r}")


def _check_weight(delta):
    if float(delta).is_integer():
        raise ExcludedWeightError(f"integer weight delta={delta} is excluded")


def theorem_exponents(spin, delta, i, k=0, l=0, m=0):
    """
    Exponents for the field weight delta.

    Exterior: with w = 1 + 2s + delta - l - i,
        w < 0: <u>^(1 + delta + 2s - l - i) <v>^-(1 + 2s - i + k + m)
        w > 0: <v>^(delta - n)
    Interior: <t>^(delta - n).

    Raises:
        ExcludedWeightError: for integer delta or w = 0
    """
    spin = Fraction(spin)
    valence = int(2 * spin)
    if not 0 <= i <= valence:
        raise ContractViolation(f"component index {i} outside 0..{valence}")
    _check_weight(delta)
    n = k + l + m
    w = 1 + valence + delta - l - i
    if math.isclose(w, 0.0, abs_tol=1e-12):
        raise ExcludedWeightError(
            f"1 + 2s + delta - l - i = 0 for s={spin}, delta={delta}, i={i}, l={l}"
        )
    if w < 0:
        prediction = ExponentPrediction(
            spin, delta, i, PEELING, w, -(1 + valence - i + k + m), delta - n, abs(w)
        )
    else:
        prediction = ExponentPrediction(spin, delta, i, SATURATED, 0.0, delta - n, delta - n, w)
    potential = potential_exponents(spin, delta + valence, i, k, l, m)
    agree = potential.case == prediction.case and all(
        math.isclose(a, b, abs_tol=1e-12)
        for a, b in (
            (potential.e_u, prediction.e_u),
            (potential.e_v, prediction.e_v),
            (potential.interior, prediction.interior),
        )
    )
    if not agree:
        raise ContractViolation("field-weight and potential-weight exponents disagree")
    return prediction


def potential_exponents(spin, delta_potential, i, k=0, l=0, m=0):
    """
    Exponents stated in terms of the Hertz-potential weight.

    Exterior: with w = 1 + delta_pot - l - i,
        w < 0: <u>^(1 + delta_pot - i - l) <v>^-(1 + 2s - i + k + m)
        w > 0: <v>^(delta_pot - 2s - n)
    Interior: <t>^(delta_pot - 2s - n).
    """
    spin = Fraction(spin)
    valence = int(2 * spin)
    _check_weight(delta_potential)
    n = k + l + m
    w = 1 + delta_potential - l - i
    if math.isclose(w, 0.0, abs_tol=1e-12):
        raise ExcludedWeightError(f"1 + delta - l - i = 0 for the potential weight {delta_potential}")
    interior = delta_potential - valence - n
    if w < 0:
        return ExponentPrediction(
            spin, delta_potential, i, PEELING, w, -(1 + valence - i + k + m), interior, abs(w)
        )
    return ExponentPrediction(spin, delta_potential, i, SATURATED, 0.0, interior, interior, w)


def exponent_table(spin, delta, k=0, l=0, m=0):
    """Predictions for every component i = 0..2s."""
    return [theorem_exponents(spin, delta, i, k, l, m) for i in range(int(2 * Fraction(spin)) + 1)]
