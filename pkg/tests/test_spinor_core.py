"""
tests/test_spinor_core.py

Symmetric spinor algebra against the full-tensor reference path.
"""

import math

import pytest

from src.core.errors import ContractViolation
from src.spinor.core import (
    SymSpinor,
    contract_all,
    contract_slot,
    hat,
    inner,
    lower,
    norm_squared,
    raise_index,
    symmetric_power,
    transvect,
)
from src.spinor.tensor import contraction_tensor, tensor_transvect, to_tensor


def random_spinor(rng, valence):
    return SymSpinor(complex(a, b) for a, b in rng.normal(size=(valence + 1, 2)))


def assert_close(a, b, tol=1e-12):
    assert a.valence == b.valence
    for x, y in zip(a.comps, b.comps):
        assert abs(x - y) <= tol * (1 + abs(y))


@pytest.mark.parametrize("p, q", [(0, 0), (1, 1), (2, 1), (2, 3), (4, 2), (3, 3)])
def test_transvect_matches_tensor_reference(rng, p, q):
    a, b = random_spinor(rng, p), random_spinor(rng, q)
    for j in range(min(p, q) + 1):
        assert_close(transvect(a, b, j), tensor_transvect(a, b, j))


def test_transvect_rejects_bad_count(rng):
    a, b = random_spinor(rng, 1), random_spinor(rng, 2)
    with pytest.raises(ContractViolation):
        transvect(a, b, 2)
    with pytest.raises(ContractViolation):
        transvect(a, b, -1)


def test_full_contraction_is_antisymmetric_for_odd_valence(rng):
    a, b = random_spinor(rng, 3), random_spinor(rng, 3)
    lhs = transvect(a, b, 3).comps[0]
    rhs = transvect(b, a, 3).comps[0]
    assert lhs == pytest.approx(-rhs)


@pytest.mark.parametrize("valence", [0, 1, 2, 3, 4])
def test_hat_squared_is_sign(rng, valence):
    phi = random_spinor(rng, valence)
    assert_close(hat(hat(phi)), phi * (-1) ** valence)


@pytest.mark.parametrize("valence", [1, 2, 3, 5])
def test_norm_squared_is_binomial_weighted_sum(rng, valence):
    phi = random_spinor(rng, valence)
    expected = sum(math.comb(valence, i) * abs(c) ** 2 for i, c in enumerate(phi.comps))
    assert norm_squared(phi) == pytest.approx(expected)
    assert inner(phi, phi).imag == pytest.approx(0.0, abs=1e-12)


def test_lower_and_raise_are_inverse():
    v = (1.5 + 2j, -0.25j)
    assert raise_index(lower(v)) == v


def test_spinor_contracted_with_itself_vanishes(rng):
    o = tuple(complex(a, b) for a, b in rng.normal(size=(2, 2)))
    phi = symmetric_power(lower(o), 4)
    assert abs(contract_all(phi, [o] * 4)) < 1e-12
    assert all(abs(c) < 1e-12 for c in contract_slot(phi, o).comps)


def test_contract_all_needs_matching_count(rng):
    phi = random_spinor(rng, 2)
    with pytest.raises(ContractViolation):
        contract_all(phi, [(1, 0)])


def test_contraction_tensor_with_identity_is_identity(rng):
    phi = random_spinor(rng, 3)
    identity = ((1, 0), (0, 1))
    assert_close(contraction_tensor(phi, identity, 2), phi)


def test_to_tensor_is_symmetric(rng):
    phi = random_spinor(rng, 3)
    tensor = to_tensor(phi)
    assert tensor[(0, 1, 1)] == tensor[(1, 0, 1)] == tensor[(1, 1, 0)] == phi.comps[2]


def test_valence_mismatch_raises(rng):
    with pytest.raises(ContractViolation):
        random_spinor(rng, 1) + random_spinor(rng, 2)
    with pytest.raises(ContractViolation):
        SymSpinor(())
