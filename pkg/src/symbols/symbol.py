"""
src/symbols/symbol.py

Principal symbols: the operator matrices with each derivative replaced by
i times a real covector xi. Every operator used here is homogeneous, so a
degree-d operator picks up the factor i^d and sigma_xi(Lap) = |xi|^2 I.
"""

from dataclasses import dataclass

import numpy as np

from src.fields.polynomial import SQRT2
from src.operators.calculus import as_matrix
from src.spinor.core import SymSpinor
from src.spinor.soldering import shipped_soldering


@dataclass(frozen=True)
class XiSpinor:
    """Real covector xi_j and its symmetric spinor xi_AB = sigma^j_AB xi_j."""

    xi: tuple

    @classmethod
    def from_array(cls, values):
        return cls(tuple(float(v) for v in values))

    @property
    def vector(self):
        return np.asarray(self.xi, dtype=float)

    @property
    def spinor(self):
        sigma = shipped_soldering().sigma_numeric()
        matrix = np.einsum("j,jab->ab", self.vector, sigma)
        return SymSpinor((complex(matrix[0, 0]), complex(matrix[0, 1]), complex(matrix[1, 1])))

    @property
    def squared_norm(self):
        """|xi|^2; note xi_AB xi^AB = -|xi|^2."""
        return float(self.vector @ self.vector)

    @property
    def chart_point(self):
        """The chart derivatives d/dx' = d/dx / sqrt 2 evaluated at xi."""
        return tuple(v / SQRT2 for v in self.xi)

    def scaled(self, factor):
        return XiSpinor(tuple(factor * v for v in self.xi))


@dataclass(frozen=True)
class SymbolMatrix:
    """Symbol of one operator at one covector."""

    op: object
    matrix: np.ndarray

    @property
    def shape(self):
        return self.matrix.shape

    def rank(self, tolerance):
        """Numeric rank with threshold tolerance * sigma_max."""
        if self.matrix.size == 0:
            return 0
        values = np.linalg.svd(self.matrix, compute_uv=False)
        if values[0] == 0.0:
            return 0
        return int(np.sum(values > tolerance * values[0]))


def symbol(op, xi):
    """
    Symbol sigma_xi(op) as a (target dim) x (source dim) complex matrix.

    The chart derivatives are evaluated at i * xi, so Lap(k, p) maps to
    |xi|^(2p) I and Curl(k) to i times the Hermitian contraction
    xi_(A^B phi_...)B.

    Args:
        op: OperatorTag or OperatorMatrix
        xi: XiSpinor

    Returns:
        SymbolMatrix
    """
    point = tuple(1j * v for v in xi.chart_point)
    return SymbolMatrix(op, as_matrix(op).at(point))
