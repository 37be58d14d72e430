"""
tests/test_experiment.py

Peeling runs: configuration checks, fit classification, degenerate data
and the acceptance-scale sweeps.
"""

from fractions import Fraction

import pytest

from src.core.errors import ContractViolation, ExcludedWeightError
from src.peeling.exponents import theorem_exponents
from src.peeling.experiment import (
    PeelExperiment,
    classify_fit,
    fit_table,
    run_peel_experiment,
    sample_table,
)


def test_integer_weight_is_rejected():
    with pytest.raises(ExcludedWeightError):
        PeelExperiment(1, -2.0)


def test_derivative_orders_are_limited():
    with pytest.raises(ContractViolation):
        PeelExperiment(1, -2.5, k=1, l=1)
    with pytest.raises(ContractViolation):
        PeelExperiment(1, -2.5, k=-1)


def test_default_coefficients_follow_the_seed():
    first = PeelExperiment(Fraction(3, 2), -1.5, seed=4)
    again = PeelExperiment(Fraction(3, 2), -1.5, seed=4)
    other = PeelExperiment(Fraction(3, 2), -1.5, seed=5)
    assert len(first.coefficients) == 4
    assert first.coefficients == again.coefficients
    assert first.coefficients != other.coefficients
    assert first.quadrature is not None


@pytest.mark.parametrize(
    "fitted, axis, expected",
    [
        (-2.05, "v", (True, True, False)),
        (-2.5, "v", (False, True, True)),
        (-1.7, "v", (False, True, False)),
        (-0.45, "u", (True, True, False)),
    ],
)
def test_classify_peeling_component(fitted, axis, expected):
    prediction = theorem_exponents(1, -2.5, 1)
    assert classify_fit(fitted, prediction, axis, 0.2) == expected


def test_classify_saturated_component_along_u():
    prediction = theorem_exponents(1, -2.5, 0)
    assert classify_fit(-0.8, prediction, "u", 0.2) == (True, False, True)
    assert classify_fit(0.5, prediction, "u", 0.2) == (False, False, False)


def test_classify_interior_is_always_sharp():
    prediction = theorem_exponents(1, -2.5, 0)
    assert classify_fit(-3.0, prediction, "t", 0.2) == (False, True, True)
    assert classify_fit(-2.45, prediction, "t", 0.2) == (True, True, False)


def test_degenerate_data_give_zero_rows():
    result = run_peel_experiment(PeelExperiment(Fraction(1, 2), -1.5, coefficients=[0, 0], count=4))
    assert result.degenerate
    assert result.report.passed
    assert not result.fits
    rows = sample_table(result)
    assert len(rows) == 4 * 2 + 4 * 2 + 4
    assert all(len(row) == 7 and row[-1] == 0.0 for row in rows)
    assert fit_table(result) == []


def _slopes(result):
    return {(i, axis): fitted for _, _, i, axis, fitted, *_ in fit_table(result)}


@pytest.mark.slow
def test_spin_one_exterior_weights():
    result = run_peel_experiment(PeelExperiment(1, -2.5))
    slopes = _slopes(result)
    assert slopes[(1, "v")] == pytest.approx(-2.0, abs=0.2)
    assert slopes[(2, "v")] == pytest.approx(-1.0, abs=0.2)
    assert slopes[(1, "u")] == pytest.approx(-0.5, abs=0.2)
    assert slopes[(2, "u")] == pytest.approx(-1.5, abs=0.2)
    assert slopes[(0, "v")] == pytest.approx(-2.5, abs=0.2)
    assert result.report.passed, result.report.failures


@pytest.mark.slow
def test_spin_two_peeling_failure():
    result = run_peel_experiment(PeelExperiment(2, -3.5))
    slopes = _slopes(result)
    for i in (2, 3, 4):
        assert slopes[(i, "v")] == pytest.approx(i - 5, abs=0.2)
    for i in (0, 1):
        assert slopes[(i, "v")] == pytest.approx(-3.5, abs=0.2)


@pytest.mark.slow
def test_spin_one_full_peeling():
    result = run_peel_experiment(PeelExperiment(1, -4.5))
    slopes = _slopes(result)
    for i in range(3):
        assert slopes[(i, "v")] == pytest.approx(i - 3, abs=0.2)
