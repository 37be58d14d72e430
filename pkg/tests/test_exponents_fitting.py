"""
tests/test_exponents_fitting.py

Predicted decay exponents, log-log fits and sample sweeps.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import ContractViolation, ExcludedWeightError, FitError
from src.core.utils import japanese_bracket
from src.peeling.exponents import (
    PEELING,
    SATURATED,
    exponent_table,
    potential_exponents,
    theorem_exponents,
)
from src.peeling.fitting import fit_decay_exponent
from src.peeling.sweeps import EXTERIOR, INTERIOR, fixed_u_sweep, fixed_v_sweep, interior_sweep, standard_sweeps


@pytest.mark.parametrize(
    "spin, delta, i, case, e_u, e_v",
    [
        (1, -2.5, 0, SATURATED, 0.0, -2.5),
        (1, -2.5, 1, PEELING, -0.5, -2.0),
        (1, -2.5, 2, PEELING, -1.5, -1.0),
        (2, -3.5, 1, SATURATED, 0.0, -3.5),
        (2, -3.5, 3, PEELING, -1.5, -2.0),
        (1, -4.5, 0, PEELING, -1.5, -3.0),
        (Fraction(1, 2), 0.5, 1, SATURATED, 0.0, 0.5),
    ],
)
def test_exterior_exponents(spin, delta, i, case, e_u, e_v):
    prediction = theorem_exponents(spin, delta, i)
    assert prediction.case == case
    assert prediction.e_u == pytest.approx(e_u)
    assert prediction.e_v == pytest.approx(e_v)
    assert prediction.interior == pytest.approx(delta)


def test_peeling_exponents_increase_along_the_components():
    table = exponent_table(2, -5.5)
    assert [p.e_v for p in table] == pytest.approx([-5.0, -4.0, -3.0, -2.0, -1.0])
    assert all(p.case == PEELING for p in table)


def test_derivatives_shift_the_exponents():
    prediction = theorem_exponents(Fraction(1, 2), -2.5, 0, k=1)
    assert prediction.e_u == pytest.approx(-0.5)
    assert prediction.e_v == pytest.approx(-3.0)
    assert prediction.interior == pytest.approx(-3.5)
    assert prediction.predicted("t") == prediction.interior
    assert theorem_exponents(1, -2.5, 2, l=1).e_u == pytest.approx(-2.5)


def test_potential_weight_statement_agrees():
    field = theorem_exponents(Fraction(3, 2), -1.5, 2)
    potential = potential_exponents(Fraction(3, 2), 1.5, 2)
    assert (field.case, field.e_u, field.e_v) == (potential.case, potential.e_u, potential.e_v)


def test_case_numbers_and_margin():
    prediction = theorem_exponents(1, -2.5, 1)
    assert prediction.case_number == 2
    assert prediction.margin == pytest.approx(0.5)
    assert theorem_exponents(1, -2.5, 0).case_number == 3


def test_integer_weight_is_excluded():
    with pytest.raises(ExcludedWeightError):
        theorem_exponents(1, -2.0, 0)


def test_component_index_is_checked():
    with pytest.raises(ContractViolation):
        theorem_exponents(1, -2.5, 3)
    with pytest.raises(ContractViolation):
        theorem_exponents(1, -2.5, 0).predicted("r")


def test_fit_exact_power_law():
    coords = np.geomspace(10.0, 1000.0, 12)
    fit = fit_decay_exponent(zip(coords, 3.0 * coords**-2.0), i=1, axis="v")
    assert fit.slope == pytest.approx(-2.0, abs=1e-10)
    assert fit.intercept == pytest.approx(np.log(3.0))
    assert fit.stderr < 1e-10
    assert (fit.i, fit.axis, fit.samples) == (1, "v", 12)


def test_fit_with_noise(rng):
    coords = np.geomspace(10.0, 1000.0, 40)
    mags = 3.0 * coords**-1.5 * (1.0 + 0.001 * rng.normal(size=coords.size))
    fit = fit_decay_exponent(zip(coords, mags))
    assert fit.slope == pytest.approx(-1.5, abs=0.01)
    assert 0 < fit.stderr < 0.001


def test_fit_of_constant_magnitudes():
    assert fit_decay_exponent([(c, 2.0) for c in range(1, 10)]).slope == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize(
    "samples",
    [
        [(1.0, 1.0), (2.0, 0.5)],
        [(float(c), 1.0) for c in range(-1, 9)],
        [(float(c), 0.0) for c in range(1, 10)],
        [(2.0, 1.0)] * 10,
    ],
)
def test_fit_errors(samples):
    with pytest.raises(FitError):
        fit_decay_exponent(samples)


def test_fixed_u_sweep():
    sweep = fixed_u_sweep(count=6)
    assert len(sweep) == 6
    assert all(s.u == pytest.approx(5.0) for s in sweep)
    assert sweep[0].v == pytest.approx(50.0)
    assert sweep[-1].v == pytest.approx(800.0)
    assert all(s.region == EXTERIOR and s.axis == "v" for s in sweep)


def test_fixed_v_sweep():
    sweep = fixed_v_sweep(count=6)
    assert all(s.v == pytest.approx(1000.0) for s in sweep)
    assert sweep[0].coordinate == pytest.approx(japanese_bracket(4.0))
    assert all(s.region == EXTERIOR for s in sweep)


def test_interior_sweep_and_points():
    sweep = interior_sweep(count=5)
    assert all(s.region == INTERIOR for s in sweep)
    sample = sweep[2]
    assert np.linalg.norm(sample.point) == pytest.approx(sample.r)
    assert sample.coordinate == pytest.approx(japanese_bracket(sample.t))


def test_standard_sweeps_keys():
    sweeps = standard_sweeps(count=4)
    assert set(sweeps) == {"v", "u", "t"}
    assert all(len(s) == 4 for s in sweeps.values())
