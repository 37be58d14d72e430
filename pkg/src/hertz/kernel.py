"""
src/hertz/kernel.py

Exact polynomial kernels of Laplacian powers on symmetric spinor fields.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.core.errors import ContractViolation
from src.fields.polynomial import FIELD_RING, PolyScalar, gaussian, monomials
from src.fields.spinor_field import SpinorField


@dataclass(frozen=True)
class PolyKernelBasis:
    """Basis of ker Delta^power on spinor polynomials of degree <= degree."""

    valence: int
    power: int
    degree: int
    basis: tuple = field(default_factory=tuple)

    @property
    def dimension(self):
        return len(self.basis)


def _monomial(mono):
    a, b, c = mono
    return FIELD_RING.from_dict({(a, b, c): FIELD_RING.domain.one})


def _laplacian_power(poly, power):
    """Euclidean chart Laplacian applied `power` times (same kernel as Delta)."""
    for _ in range(power):
        if not poly:
            return poly
        poly = sum((poly.diff(axis).diff(axis) for axis in range(3)), FIELD_RING.zero)
    return poly


def _to_fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


def scalar_kernel(power, degree):
    """
    Exact basis of ker Delta^power on scalar polynomials of degree <= degree.

    Returns:
        list of PolyScalar
    """
    if power < 0 or degree < 0:
        raise ContractViolation(f"need power >= 0 and degree >= 0, got {power}, {degree}")
    columns = monomials(degree)
    image_monos = monomials(degree - 2 * power) if degree - 2 * power >= 0 else []
    if not image_monos:
        return [PolyScalar(_monomial(m)) for m in columns]

    row_index = {m: i for i, m in enumerate(image_monos)}
    rows = [[QQ.zero] * len(columns) for _ in image_monos]
    for j, mono in enumerate(columns):
        image = _laplacian_power(_monomial(mono), power)
        for key, coeff in image.terms():
            rows[row_index[key]][j] = coeff.x
    matrix = DomainMatrix(rows, (len(image_monos), len(columns)), QQ)
    basis = []
    for vector in matrix.nullspace().to_list():
        terms = {
            mono: gaussian(_to_fraction(value))
            for mono, value in zip(columns, vector)
            if value
        }
        basis.append(PolyScalar.from_terms(terms))
    return basis


def kernel_basis(valence, power, degree):
    """
    Exact basis of ker Delta^power on spinor polynomials of valence k, degree <= d.

    Delta acts componentwise, so the basis is the scalar kernel placed in
    each of the k+1 components.

    Returns:
        PolyKernelBasis
    """
    if valence < 0:
        raise ContractViolation(f"negative valence {valence}")
    scalars = scalar_kernel(power, degree)
    zero = PolyScalar(FIELD_RING.zero)
    basis = []
    for index in range(valence + 1):
        for scalar in scalars:
            comps = [zero] * (valence + 1)
            comps[index] = scalar
            basis.append(SpinorField(comps, zero=zero))
    logging.debug(
        f"ker Delta^{power} on valence {valence}, degree <= {degree}: dimension {len(basis)}"
    )
    return PolyKernelBasis(valence, power, degree, tuple(basis))
