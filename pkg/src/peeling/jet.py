"""
src/peeling/jet.py

Formal time series of a spinor Hertz potential and the exact check of the
space-time splitting of the iterated spinor derivative.

A potential with data (chi_0, chi_1) at t = 0 has time derivatives
chi_{n+2} = -Delta chi_n. Expanding every factor of the 2s-fold product
(D_A^B + eps_A^B d_t / sqrt 2) against this jet gives the field at t = 0,
which must equal G Curl chi_0 + (1/sqrt 2) G chi_1.
"""

import logging
from fractions import Fraction
from itertools import combinations, product

from config import SPLITTING_DEGREE
from src.core.errors import ContractViolation
from src.core.parallel import parallel_map
from src.core.reporting import VerificationReport
from src.fields.polynomial import DERIVATIVE_RING, random_poly_spinor
from src.operators.calculus import OperatorMatrix, apply, index_matrix
from src.fields.spinor_field import SpinorField
from src.operators.tags import Curl, Div, G, Lap


class WaveJet:
    """Time derivatives chi_0, chi_1, ... of a polynomial spinor potential."""

    def __init__(self, chi0, chi1, order=None):
        if chi0.valence != chi1.valence:
            raise ContractViolation(f"jet data valences differ: {chi0.valence} vs {chi1.valence}")
        self.valence = chi0.valence
        self.order = self.valence + 2 if order is None else order
        coefficients = [chi0, chi1]
        lap = Lap(self.valence)
        while len(coefficients) <= self.order:
            coefficients.append(-apply(lap, coefficients[-2]))
        self.coefficients = coefficients

    @classmethod
    def random(cls, valence, seed, degree=SPLITTING_DEGREE):
        return cls(
            random_poly_spinor(valence, degree, 2 * seed),
            random_poly_spinor(valence, degree, 2 * seed + 1),
        )

    def __getitem__(self, n):
        if n > self.order:
            raise ContractViolation(f"jet truncated at order {self.order}, asked for {n}")
        return self.coefficients[n]

    def shifted(self, n=1):
        """Jet of the n-th time derivative."""
        return WaveJet(self[n], self[n + 1], self.order - n)

    def wave_residual(self, n):
        """chi_{n+2} + Delta chi_n, zero by construction."""
        return self[n + 2] + apply(Lap(self.valence), self[n])


def _representative(valence, ones):
    return (1,) * ones + (0,) * (valence - ones)


def splitting_matrices(valence, reverse=False):
    """
    Operators M_tau of the expanded product, one per time order tau.

    Row n uses the representative index tuple with n ones (leading, or
    trailing when reverse is set); M_tau collects every term in which tau
    factors contributed the time derivative.

    Returns:
        dict tau -> OperatorMatrix (valence -> valence)
    """
    d = index_matrix()
    k = valence
    rows = {tau: [[DERIVATIVE_RING.zero] * (k + 1) for _ in range(k + 1)] for tau in range(k + 1)}
    for n in range(k + 1):
        indices = _representative(k, n)
        if reverse:
            indices = indices[::-1]
        for size in range(k + 1):
            tau = k - size
            for slots in combinations(range(k), size):
                rest = sum(indices[i] for i in range(k) if i not in slots)
                for inner in product((0, 1), repeat=size):
                    entry = DERIVATIVE_RING.one
                    for slot, b in zip(slots, inner):
                        entry = entry * d[indices[slot]][b]
                        if not entry:
                            break
                    if entry:
                        rows[tau][n][rest + sum(inner)] += entry
    return {
        tau: OperatorMatrix(k, k, tuple(tuple(row) for row in matrix))
        for tau, matrix in rows.items()
    }


def expanded_field(jet, reverse=False):
    """
    The t = 0 field of the expanded product, split by powers of sqrt 2.

    Returns:
        (rational part, part multiplying 1/sqrt 2)
    """
    zero_field = SpinorField.zeros(jet.valence, jet[0].zero)
    rational, irrational = zero_field, zero_field
    for tau, matrix in splitting_matrices(jet.valence, reverse).items():
        if matrix.is_zero():
            continue
        weight = Fraction(1, 2 ** (tau // 2))
        term = apply(matrix.scale(weight), jet[tau])
        if tau % 2:
            irrational = irrational + term
        else:
            rational = rational + term
    return rational, irrational


def splitting_residual(jet):
    """
    Residuals of the splitting identity at t = 0.

    Returns:
        dict name -> SpinorField residual, only the nonzero ones
    """
    k = jet.valence
    rational, irrational = expanded_field(jet)
    residuals = {
        "G Curl chi_0": rational - apply(G(k), apply(Curl(k), jet[0])),
        "G chi_1": irrational - apply(G(k), jet[1]),
    }
    mirrored, mirrored_irrational = expanded_field(jet, reverse=True)
    residuals["symmetry"] = mirrored - rational
    residuals["symmetry (odd)"] = mirrored_irrational - irrational
    return {name: value for name, value in residuals.items() if not value.is_zero()}


def field_equation_residual(jet):
    """
    d_t phi - sqrt 2 Curl phi and Div phi for phi = G Curl chi + (1/sqrt 2) G d_t chi.

    The time derivative of the field is the same formula on the shifted jet.
    """
    k = jet.valence
    g, curl = G(k), Curl(k)
    g_chi1 = apply(g, jet[1])
    curl_g_curl = apply(curl, apply(g, apply(curl, jet[0])))
    residuals = {
        "d_t phi (rational)": apply(g, apply(curl, jet[1])) - apply(curl, g_chi1),
        "d_t phi (1/sqrt 2)": apply(g, jet[2]) - (curl_g_curl + curl_g_curl),
    }
    if k >= 2:
        field_rational = apply(g, apply(curl, jet[0]))
        residuals["Div phi (rational)"] = apply(Div(k), field_rational)
        residuals["Div phi (1/sqrt 2)"] = apply(Div(k), g_chi1)
    return {name: value for name, value in residuals.items() if not value.is_zero()}


def verify_splitting(spin, trials, seed, degree=SPLITTING_DEGREE):
    """
    Exact splitting and field-equation checks on random polynomial jets.

    Args:
        spin: Spin s (valence 2s)
        trials: Number of random jets
        seed: First seed
        degree: Polynomial degree of chi_0 and chi_1
    """
    valence = int(2 * spin)
    if valence < 1:
        raise ContractViolation(f"splitting needs spin >= 1/2, got {spin}")

    def check(trial_seed):
        jet = WaveJet.random(valence, trial_seed, degree)
        residual = splitting_residual(jet)
        residual.update(field_equation_residual(jet))
        if residual:
            name, value = next(iter(residual.items()))
            comps = [c for c in value.comps if not c.is_zero()]
            return f"{name} != 0 (seed {trial_seed}): {comps[0] if comps else value}"
        return None

    report = VerificationReport(f"splitting s={spin}", trials=trials)
    for message in parallel_map(check, [seed + t for t in range(trials)]):
        if message:
            report.record_failure(message)
    logging.info(report.summary_line())
    return report
