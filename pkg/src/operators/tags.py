"""
src/operators/tags.py

Names of the spatial spinor operators and their valence bookkeeping.
"""

from dataclasses import dataclass
from enum import Enum

from src.core.errors import ContractViolation


class OperatorKind(Enum):
    """Operator families acting on symmetric spinor fields."""

    DIV = "div"
    CURL = "curl"
    TWIST = "twist"
    LAP = "lap"
    G = "G"
    F = "F"


# Change of valence per family
_VALENCE_SHIFT = {
    OperatorKind.DIV: -2,
    OperatorKind.CURL: 0,
    OperatorKind.TWIST: 2,
    OperatorKind.LAP: 0,
    OperatorKind.G: 0,
    OperatorKind.F: 0,
}


@dataclass(frozen=True)
class OperatorTag:
    """
    An operator family together with its source valence.

    Attributes:
        kind: OperatorKind
        source: Valence of the argument (may be negative: trivial space)
        power: Laplacian power, only meaningful for LAP
    """

    kind: OperatorKind
    source: int
    power: int = 1

    def __post_init__(self):
        if self.kind is OperatorKind.LAP and self.power < 0:
            raise ContractViolation(f"negative Laplacian power {self.power}")

    @property
    def target(self):
        return self.source + _VALENCE_SHIFT[self.kind]

    @property
    def degree(self):
        """Differential order (homogeneous degree in the derivative)."""
        k = self.source
        if self.kind in (OperatorKind.DIV, OperatorKind.CURL, OperatorKind.TWIST):
            return 1
        if self.kind is OperatorKind.LAP:
            return 2 * self.power
        if self.kind is OperatorKind.G:
            return max(k - 1, 0)
        return 2 * (k // 2) if k >= 0 else 0

    def __str__(self):
        if self.kind is OperatorKind.LAP:
            return f"Lap{self.source}^{self.power}"
        return f"{self.kind.value}{self.source}"


def Div(k):
    return OperatorTag(OperatorKind.DIV, k)


def Curl(k):
    return OperatorTag(OperatorKind.CURL, k)


def Twist(k):
    return OperatorTag(OperatorKind.TWIST, k)


def Lap(k, power=1):
    return OperatorTag(OperatorKind.LAP, k, power)


def G(k):
    return OperatorTag(OperatorKind.G, k)


def F(k):
    return OperatorTag(OperatorKind.F, k)
