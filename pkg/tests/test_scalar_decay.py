"""
tests/test_scalar_decay.py
"""

import pytest

from src.core.utils import spherical_to_cartesian
from src.peeling.scalar_decay import predicted_slopes, run_scalar_decay, scalar_closed_form
from src.wave.kirchhoff import kirchhoff_eval, profile_wave


@pytest.mark.parametrize("delta, slopes", [(-2.5, (-1.0, -1.5)), (0.5, (0.5, None)), (-1.0, (None, None))])
def test_predicted_slopes(delta, slopes):
    assert predicted_slopes(delta) == slopes


@pytest.mark.parametrize("t, r", [(2.0, 1.0), (40.0, 35.0), (300.0, 290.0)])
def test_kirchhoff_matches_the_radial_closed_form(t, r, radial_rule):
    point = spherical_to_cartesian(r, 1.1, 0.7)
    value = kirchhoff_eval(profile_wave(-2.5), t, point, radial_rule)
    assert value.real == pytest.approx(scalar_closed_form(-2.5, t, r), rel=1e-6)
    assert value.imag == 0.0


@pytest.mark.parametrize("delta", [-2.5, 0.5])
def test_scalar_decay_study(delta, radial_rule):
    report = run_scalar_decay(delta, radial_rule, count=10)
    assert report.passed, report.failures
    assert len(report.details["samples"]) == 20
    assert report.details["envelope"].passed
