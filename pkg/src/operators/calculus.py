"""
src/operators/calculus.py

Exact operator matrices for the spatial spinor calculus and their
application to spinor fields on any scalar backend.

An operator from valence k to valence k' is stored as a (k'+1) x (k+1)
matrix of polynomials in the chart derivatives (px, py, pz) = d/dx'.
Polynomial fields are differentiated in the chart directly; physical
backends pick up a factor 2^(-|mono|/2) per derivative monomial.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from src.core.errors import ContractViolation
from src.core.utils import binomial
from src.fields.polynomial import DERIVATIVE_RING, SQRT2, evaluate_numeric, gaussian, to_complex
from src.fields.spinor_field import SpinorField
from src.operators.tags import OperatorKind, OperatorTag
from src.spinor.core import SymSpinor, transvect
from src.spinor.soldering import chart_derivative


def ring_coeff(value):
    """Exact ring coefficient from an int, a Fraction or a Gaussian rational."""
    if isinstance(value, (int, Fraction)):
        return gaussian(value)
    return value


@dataclass(frozen=True)
class OperatorMatrix:
    """Differential operator between symmetric spinor spaces."""

    source: int
    target: int
    rows: tuple

    @classmethod
    def zeros(cls, source, target):
        rows = tuple(
            tuple(DERIVATIVE_RING.zero for _ in range(max(source + 1, 0)))
            for _ in range(max(target + 1, 0))
        )
        return cls(source, target, rows)

    @classmethod
    def identity(cls, valence):
        return cls.diagonal(valence, DERIVATIVE_RING.one)

    @classmethod
    def diagonal(cls, valence, entry):
        rows = tuple(
            tuple(entry if i == j else DERIVATIVE_RING.zero for j in range(valence + 1))
            for i in range(valence + 1)
        )
        return cls(valence, valence, rows)

    @classmethod
    def from_columns(cls, source, target, columns):
        """Build from a list of source+1 columns, each a list of target+1 entries."""
        rows = tuple(
            tuple(columns[j][i] for j in range(source + 1)) for i in range(target + 1)
        )
        return cls(source, target, rows)

    @property
    def shape(self):
        return max(self.target + 1, 0), max(self.source + 1, 0)

    @property
    def degree(self):
        """Largest total degree of any entry (-1 for the zero operator)."""
        best = -1
        for row in self.rows:
            for entry in row:
                for mono in entry.itermonoms():
                    best = max(best, sum(mono))
        return best

    def is_zero(self):
        return all(not entry for row in self.rows for entry in row)

    def _check_same(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ContractViolation(
                f"cannot add operators {self.source}->{self.target} and "
                f"{other.source}->{other.target}"
            )

    def __add__(self, other):
        self._check_same(other)
        rows = tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )
        return OperatorMatrix(self.source, self.target, rows)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coeff):
        coeff = ring_coeff(coeff)
        rows = tuple(tuple(entry * coeff for entry in row) for row in self.rows)
        return OperatorMatrix(self.source, self.target, rows)

    def compose(self, inner):
        """The operator self o inner."""
        if inner.target != self.source:
            raise ContractViolation(
                f"cannot compose {self.source}->{self.target} after "
                f"{inner.source}->{inner.target}"
            )
        n_out, n_mid = self.shape
        n_in = inner.shape[1]
        rows = []
        for i in range(n_out):
            row = []
            for j in range(n_in):
                total = DERIVATIVE_RING.zero
                for m in range(n_mid):
                    left = self.rows[i][m]
                    if left:
                        total += left * inner.rows[m][j]
                row.append(total)
            rows.append(tuple(row))
        return OperatorMatrix(inner.source, self.target, tuple(rows))

    __matmul__ = compose

    def at(self, point):
        """
        Numeric matrix with the chart derivatives replaced by `point`.

        Args:
            point: (px, py, pz) numbers

        Returns:
            complex numpy array of shape self.shape
        """
        out = np.zeros(self.shape, dtype=complex)
        for i, row in enumerate(self.rows):
            for j, entry in enumerate(row):
                if entry:
                    out[i, j] = evaluate_numeric(entry, point)
        return out

    def residual_entries(self):
        """Nonzero entries as (row, column, polynomial) triples."""
        return [
            (i, j, entry)
            for i, row in enumerate(self.rows)
            for j, entry in enumerate(row)
            if entry
        ]


def _basis_column(valence, index):
    return SymSpinor.basis(valence, index, one=DERIVATIVE_RING.one, zero=DERIVATIVE_RING.zero)


def _transvect_matrix(source, j, sign=1):
    """Matrix of phi -> sign * transvect(D, phi, j)."""
    target = source + 2 - 2 * j
    if source < 0 or target < 0:
        return OperatorMatrix.zeros(source, target)
    d = chart_derivative()
    columns = []
    for beta in range(source + 1):
        out = transvect(d, _basis_column(source, beta), j)
        columns.append([c * sign if sign != 1 else c for c in out.comps])
    return OperatorMatrix.from_columns(source, target, columns)


@lru_cache(maxsize=None)
def laplacian_entry():
    """Delta = D_AB D^AB as a polynomial in the chart derivatives."""
    d = chart_derivative()
    return transvect(d, d, 2).comps[0]


@lru_cache(maxsize=None)
def index_matrix():
    """d[a][b] = D_a^b (second index raised): the curl kernel."""
    d00, d01, d11 = chart_derivative().comps
    return ((d01, -d00), (d11, -d01))


def _z_polynomial_product(factors):
    """Coefficients in z of a product of linear factors (u + z w)."""
    coeffs = [DERIVATIVE_RING.one]
    for constant, linear in factors:
        new = [DERIVATIVE_RING.zero] * (len(coeffs) + 1)
        for power, value in enumerate(coeffs):
            new[power] += value * constant
            new[power + 1] += value * linear
        coeffs = new
    return coeffs


@lru_cache(maxsize=None)
def contraction_matrix(valence, j):
    """
    K_j: apply D_A^B to j slots and symmetrize, phi -> D_(A1^B1 ... D_Aj^Bj phi_...)B1...Bj.

    K_0 is the identity and K_1 is the curl.
    """
    if valence < 0:
        return OperatorMatrix.zeros(valence, valence)
    if not 0 <= j <= valence:
        raise ContractViolation(f"cannot contract {j} slots of a valence-{valence} spinor")
    (d00, d01), (d10, d11) = index_matrix()
    # slot_coeffs[alpha][beta]: alpha d-slots carry A = 1, beta of the B's are 1
    slot_coeffs = [
        _z_polynomial_product([(d00, d01)] * (j - alpha) + [(d10, d11)] * alpha)
        for alpha in range(j + 1)
    ]
    rows = []
    for n in range(valence + 1):
        row = [DERIVATIVE_RING.zero] * (valence + 1)
        norm = binomial(valence, n)
        for alpha in range(j + 1):
            weight = binomial(j, alpha) * binomial(valence - j, n - alpha)
            if not weight:
                continue
            for beta, coeff in enumerate(slot_coeffs[alpha]):
                if coeff:
                    row[beta + n - alpha] += coeff * weight
        rows.append(tuple(entry / norm if norm != 1 else entry for entry in row))
    return OperatorMatrix(valence, valence, tuple(rows))


def div_matrix(valence):
    return _transvect_matrix(valence, 2)


def curl_matrix(valence):
    return contraction_matrix(valence, 1)


def twist_matrix(valence):
    return _transvect_matrix(valence, 0)


def lap_matrix(valence, power=1):
    if valence < 0:
        return OperatorMatrix.zeros(valence, valence)
    return OperatorMatrix.diagonal(valence, laplacian_entry() ** power)


def g_coefficients(valence):
    """Default weights C(k, 2n+1) (-2)^(-n) of the G_k sum."""
    if valence < 1:
        return []
    return [
        Fraction(binomial(valence, 2 * n + 1)) / Fraction(-2) ** n
        for n in range((valence - 1) // 2 + 1)
    ]


def g_matrix(valence, coefficients=None):
    """
    G_k = sum_n c_n K_{k-2n-1} Delta^n over n <= floor((k-1)/2).

    Args:
        valence: Source valence k
        coefficients: Optional override of the weights c_n (mutation tests)

    Returns:
        OperatorMatrix of degree k-1
    """
    if coefficients is None:
        coefficients = g_coefficients(valence)
    total = OperatorMatrix.zeros(valence, valence)
    for n, weight in enumerate(coefficients):
        term = contraction_matrix(valence, valence - 2 * n - 1).compose(lap_matrix(valence, n))
        total = total + term.scale(weight)
    return total


def f_matrix(valence):
    """
    F_j = 2^(-j) sum_n sum_m C(j+2, 2n+2m+2) (-2)^n K_{2n} Delta^(floor(j/2)-n).

    F_0 = 1, F_1 = 3/2 and F_2 = (7/4) Delta - (1/2) K_2.
    """
    if valence < 0:
        return OperatorMatrix.zeros(valence, valence)
    half = valence // 2
    total = OperatorMatrix.zeros(valence, valence)
    for n in range(half + 1):
        weight = sum(
            binomial(valence + 2, 2 * n + 2 * m + 2)
            for m in range(0, (valence - 2 * n) // 2 + 1)
        )
        if not weight:
            continue
        coeff = Fraction(weight * (-2) ** n, 2**valence)
        term = contraction_matrix(valence, 2 * n).compose(lap_matrix(valence, half - n))
        total = total + term.scale(coeff)
    return total


def g_curl_expansion_matrix(valence):
    """Closed form of G_k o Curl_k: sum_n C(k, 2n) (-2)^(-n) K_{k-2n} Delta^n."""
    total = OperatorMatrix.zeros(valence, valence)
    for n in range(valence // 2 + 1):
        coeff = Fraction(binomial(valence, 2 * n)) / Fraction(-2) ** n
        term = contraction_matrix(valence, valence - 2 * n).compose(lap_matrix(valence, n))
        total = total + term.scale(coeff)
    return total


_BUILDERS = {
    OperatorKind.DIV: lambda tag: div_matrix(tag.source),
    OperatorKind.CURL: lambda tag: curl_matrix(tag.source),
    OperatorKind.TWIST: lambda tag: twist_matrix(tag.source),
    OperatorKind.LAP: lambda tag: lap_matrix(tag.source, tag.power),
    OperatorKind.G: lambda tag: g_matrix(tag.source),
    OperatorKind.F: lambda tag: f_matrix(tag.source),
}


@lru_cache(maxsize=None)
def operator_matrix(tag):
    """Exact matrix of a tagged operator (cached)."""
    if not isinstance(tag, OperatorTag):
        raise ContractViolation(f"expected an OperatorTag, got {tag!r}")
    return _BUILDERS[tag.kind](tag)


def compose(*ops):
    """Matrix of ops[0] o ops[1] o ... (tags or matrices)."""
    matrices = [as_matrix(op) for op in ops]
    result = matrices[-1]
    for outer in reversed(matrices[:-1]):
        result = outer.compose(result)
    return result


def as_matrix(op):
    return op if isinstance(op, OperatorMatrix) else operator_matrix(op)


def apply(op, phi):
    """
    Apply an operator to a spinor field.

    Args:
        op: OperatorTag or OperatorMatrix
        phi: SpinorField on any backend

    Returns:
        SpinorField of the target valence (the trivial space below valence 0)

    Raises:
        ContractViolation: when the field valence is not the operator source
    """
    matrix = as_matrix(op)
    if phi.valence != matrix.source:
        raise ContractViolation(
            f"operator expects valence {matrix.source}, field has {phi.valence}"
        )
    zero = phi.zero
    if matrix.target < 0:
        return SpinorField.trivial(matrix.target, zero)
    if matrix.source < 0:
        return SpinorField.zeros(matrix.target, zero)

    exact = phi.exact_chart
    comps = []
    for row in matrix.rows:
        total = zero
        for beta, entry in enumerate(row):
            if not entry:
                continue
            for mono, coeff in entry.terms():
                derived = phi.derivative(beta, mono)
                if derived.is_zero():
                    continue
                if exact:
                    total = total + derived.scale(coeff)
                else:
                    factor = to_complex(coeff) / SQRT2 ** sum(mono)
                    total = total + derived.scale(factor)
        comps.append(total)
    logging.debug(f"Applied {matrix.source}->{matrix.target} operator to {phi!r}")
    return SpinorField(comps, zero=zero)
