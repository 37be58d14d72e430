"""
src/spinor/core.py

Symmetric spinor values and their index algebra.

A valence-k symmetric spinor is stored by its k+1 independent components,
comps[i] being the component with exactly i indices equal to 1 (all indices
down). Components may be any ring-like values: complex numbers, exact
Gaussian rationals, polynomials, numpy arrays or field scalars. The
contraction formulas only multiply, add and divide by integers.

Conventions: eps_01 = 1, raising phi^A = eps^{AB} phi_B, lowering
phi_A = phi^B eps_{BA}.
"""

from src.core.errors import ContractViolation
from src.core.utils import binomial


def _conjugate(value):
    conj = getattr(value, "conjugate", None)
    return conj() if conj is not None else value


def _lincomb(pairs):
    """Sum w * x over (w, x) pairs; None when there is nothing to add."""
    total = None
    for weight, value in pairs:
        if weight == 0:
            continue
        term = value if weight == 1 else value * weight
        total = term if total is None else total + term
    return total


class SymSpinor:
    """Immutable symmetric spinor of valence len(comps) - 1."""

    __slots__ = ("comps",)

    def __init__(self, comps):
        comps = tuple(comps)
        if not comps:
            raise ContractViolation("a symmetric spinor needs at least one component")
        self.comps = comps

    @property
    def valence(self):
        return len(self.comps) - 1

    @classmethod
    def scalar(cls, value):
        return cls((value,))

    @classmethod
    def zero(cls, valence, zero=0):
        if valence < 0:
            raise ContractViolation(f"negative valence {valence}")
        return cls((zero,) * (valence + 1))

    @classmethod
    def basis(cls, valence, index, one=1, zero=0):
        """Spinor whose only nonzero component is comps[index] = one."""
        comps = [zero] * (valence + 1)
        comps[index] = one
        return cls(comps)

    def map(self, func):
        return SymSpinor(func(c) for c in self.comps)

    def _check_same(self, other):
        if not isinstance(other, SymSpinor):
            return NotImplemented
        if other.valence != self.valence:
            raise ContractViolation(
                f"valence mismatch: {self.valence} vs {other.valence}"
            )
        return other

    def __add__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return SymSpinor(a + b for a, b in zip(self.comps, other.comps))

    def __sub__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return SymSpinor(a - b for a, b in zip(self.comps, other.comps))

    def __neg__(self):
        return SymSpinor(-c for c in self.comps)

    def __mul__(self, scalar):
        return SymSpinor(c * scalar for c in self.comps)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return SymSpinor(c / scalar for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, SymSpinor) or other.valence != self.valence:
            return False
        return all(bool(a == b) for a, b in zip(self.comps, other.comps))

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        return f"SymSpinor(valence={self.valence}, comps={list(self.comps)!r})"


def transvect(a, b, j):
    """
    Symmetrized j-fold eps-contraction A_{..B1..Bj} B^{B1..Bj}...

    Args:
        a: SymSpinor of valence p
        b: SymSpinor of valence q
        j: Number of contracted index pairs, 0 <= j <= min(p, q)

    Returns:
        SymSpinor of valence p + q - 2j
    """
    if not isinstance(a, SymSpinor) or not isinstance(b, SymSpinor):
        raise ContractViolation("transvect expects SymSpinor operands")
    p, q = a.valence, b.valence
    if not 0 <= j <= min(p, q):
        raise ContractViolation(f"cannot contract {j} index pairs of valences {p} and {q}")

    zero = a.comps[0] * 0
    # T(alpha, beta): alpha, beta count the 1-indices among the free indices
    # of a and b; a contracted pair contributes +1 for (a=0, b=1) and -1
    # for (a=1, b=0).
    cache = {}

    def contracted(alpha, beta):
        key = (alpha, beta)
        if key not in cache:
            value = _lincomb(
                (binomial(j, m) * (-1) ** m, a.comps[alpha + m] * b.comps[beta + j - m])
                for m in range(j + 1)
            )
            cache[key] = zero if value is None else value
        return cache[key]

    valence = p + q - 2 * j
    out = []
    for n in range(valence + 1):
        pieces = []
        for alpha in range(max(0, n - (q - j)), min(p - j, n) + 1):
            weight = binomial(p - j, alpha) * binomial(q - j, n - alpha)
            pieces.append((weight, contracted(alpha, n - alpha)))
        total = _lincomb(pieces)
        norm = binomial(valence, n)
        if total is None:
            out.append(zero)
        elif norm == 1:
            out.append(total)
        else:
            out.append(total / norm)
    return SymSpinor(out)


def contract_slot(phi, vector):
    """
    Contract one (lower) index of phi with the contravariant vector v^A.

    Args:
        phi: SymSpinor of valence k >= 1
        vector: Pair (v^0, v^1)

    Returns:
        SymSpinor of valence k - 1
    """
    if phi.valence < 1:
        raise ContractViolation("cannot contract a scalar")
    v0, v1 = vector
    return SymSpinor(
        v0 * phi.comps[n] + v1 * phi.comps[n + 1] for n in range(phi.valence)
    )


def contract_all(phi, vectors):
    """Contract every index of phi with the given contravariant vectors."""
    vectors = list(vectors)
    if len(vectors) != phi.valence:
        raise ContractViolation(
            f"need {phi.valence} vectors to contract valence {phi.valence}, got {len(vectors)}"
        )
    for vector in vectors:
        phi = contract_slot(phi, vector)
    return phi.comps[0]


def symmetric_power(lowered, valence):
    """Symmetric tensor power of a lowered valence-1 spinor (comps (w_0, w_1))."""
    w0, w1 = lowered
    return SymSpinor(w0 ** (valence - n) * w1**n for n in range(valence + 1))


def lower(vector):
    """Lower a contravariant pair: phi_A = phi^B eps_{BA}."""
    v0, v1 = vector
    return (-v1, v0)


def raise_index(covector):
    """Raise a covariant pair: phi^A = eps^{AB} phi_B."""
    w0, w1 = covector
    return (w1, -w0)


def hat(phi):
    """
    Hermitian conjugate spinor (tau = identity soldering).

    hat(phi)_i = (-1)^(k-i) conj(phi_{k-i}); hat(hat(phi)) = (-1)^k phi.
    """
    k = phi.valence
    return SymSpinor(
        (-1) ** (k - i) * _conjugate(phi.comps[k - i]) for i in range(k + 1)
    )


def inner(phi, psi):
    """Pointwise Hermitian product transvect(phi, hat(psi), k)."""
    return transvect(phi, hat(psi), phi.valence).comps[0]


def norm_squared(phi):
    """|phi|^2 = sum_i C(k, i) |phi_i|^2 (real part taken for complex values)."""
    value = inner(phi, phi)
    return value.real if isinstance(value, complex) else value
