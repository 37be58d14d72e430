"""
src/spinor/tensor.py

Full 2^k tensor representation of spinors, used as a reference path for
the symmetric-component formulas (valence <= 10 keeps it small).
"""

from itertools import product

from src.core.errors import ContractViolation
from src.core.utils import binomial
from src.spinor.core import SymSpinor

# eps^{01} = 1, eps^{10} = -1: raising flips the index value with this sign
_RAISE_SIGN = {0: 1, 1: -1}


def to_tensor(phi):
    """Expand a SymSpinor into a dict {index tuple: component}."""
    k = phi.valence
    return {idx: phi.comps[sum(idx)] for idx in product((0, 1), repeat=k)}


def symmetrize(tensor, valence):
    """
    Symmetrize a full tensor and extract symmetric components.

    Args:
        tensor: dict {index tuple: value}
        valence: number of indices

    Returns:
        SymSpinor
    """
    sums = {}
    for idx, value in tensor.items():
        n = sum(idx)
        sums[n] = value if n not in sums else sums[n] + value
    comps = []
    for n in range(valence + 1):
        total = sums[n]
        count = binomial(valence, n)
        comps.append(total if count == 1 else total / count)
    return SymSpinor(comps)


def tensor_transvect(a, b, j):
    """
    Reference transvection: contract the last j indices of a with the first
    j raised indices of b on full tensors, then symmetrize.
    """
    p, q = a.valence, b.valence
    if not 0 <= j <= min(p, q):
        raise ContractViolation(f"cannot contract {j} index pairs of valences {p} and {q}")
    ta, tb = to_tensor(a), to_tensor(b)
    out = {}
    for free_a in product((0, 1), repeat=p - j):
        for free_b in product((0, 1), repeat=q - j):
            total = None
            for inner in product((0, 1), repeat=j):
                sign = 1
                lowered = []
                for index in inner:
                    sign *= _RAISE_SIGN[index]
                    lowered.append(1 - index)
                term = ta[free_a + inner] * tb[tuple(lowered) + free_b]
                term = term if sign == 1 else -term
                total = term if total is None else total + term
            if total is None:
                total = ta[free_a] * tb[free_b]
            out[free_a + free_b] = total
    return symmetrize(out, p + q - 2 * j)


def tensor_hat(phi, tau):
    """
    Reference hat: hat(phi)_{A..} = tau_A^{A'} ... conj(phi)_{A'..} slot by slot.

    Args:
        phi: SymSpinor with complex components
        tau: 2x2 nested sequence of tau_{AA'} (numbers)
    """
    k = phi.valence
    # tau_A^{A'} = eps^{A'B'} tau_{AB'}
    mixed = [[tau[a][1], -tau[a][0]] for a in (0, 1)]
    source = {idx: complex(value).conjugate() for idx, value in to_tensor(phi).items()}
    for slot in range(k):
        target = {}
        for idx in source:
            total = 0j
            for primed in (0, 1):
                src = idx[:slot] + (primed,) + idx[slot + 1 :]
                total += mixed[idx[slot]][primed] * source[src]
            target[idx] = total
        source = target
    if k == 0:
        return SymSpinor((source[()],))
    return symmetrize(source, k)


def contraction_tensor(phi, matrix, j):
    """
    Reference j-fold contraction sym(M_{A1}^{B1} ... M_{Aj}^{Bj} phi_{B1..Bj A(j+1)..Ak}).

    Args:
        phi: SymSpinor of valence k
        matrix: 2x2 nested sequence, matrix[a][b] = M_a^b (ring values)
        j: number of contracted slots

    Returns:
        SymSpinor of valence k
    """
    k = phi.valence
    if not 0 <= j <= k:
        raise ContractViolation(f"cannot contract {j} slots of valence {k}")
    source = to_tensor(phi)
    for slot in range(j):
        target = {}
        for idx in source:
            total = None
            for b in (0, 1):
                src = idx[:slot] + (b,) + idx[slot + 1 :]
                term = matrix[idx[slot]][b] * source[src]
                total = term if total is None else total + term
            target[idx] = total
        source = target
    if k == 0:
        return SymSpinor((source[()],))
    return symmetrize(source, k)
