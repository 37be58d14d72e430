"""
src/symbols/checks.py

Exactness of the symbol sequence Twist -> G -> Div, Hermiticity of the
curl symbol under the spinor inner product and sigma(Lap^p) = |xi|^(2p) I.
"""

import logging
import math

import numpy as np

from config import EIGEN_IMAG_TOLERANCE, HERMITIAN_TOLERANCE, SYMBOL_RANK_TOLERANCE
from src.core.errors import ContractViolation
from src.core.reporting import VerificationReport
from src.operators.tags import Curl, Div, G, Lap, Twist
from src.spinor.core import SymSpinor, inner
from src.symbols.symbol import XiSpinor, symbol


def random_xi(rng):
    """Random nonzero real covector."""
    while True:
        values = rng.normal(size=3)
        if np.linalg.norm(values) > 1e-3:
            return XiSpinor.from_array(values)


def _split_svd(matrix, tolerance):
    """Orthonormal bases (image, kernel) of a matrix by singular values."""
    u, values, vh = np.linalg.svd(matrix)
    top = values[0] if values.size else 0.0
    rank = int(np.sum(values > tolerance * top)) if top > 0 else 0
    image = u[:, :rank]
    kernel = vh[rank:].conj().T
    return image, kernel


def subspace_distance(a, b):
    """Spectral norm of the difference of orthogonal projectors (inf if dims differ)."""
    if a.shape[1] != b.shape[1]:
        return math.inf
    return float(np.linalg.norm(a @ a.conj().T - b @ b.conj().T, ord=2))


def exactness_at(valence, xi, tolerance=SYMBOL_RANK_TOLERANCE):
    """
    Ranks and subspace distances of the symbol sequence at one xi.

    Returns:
        dict with ranks (twist, g, div) and distances im Twist / ker G and im G / ker Div
    """
    twist = symbol(Twist(valence - 2), xi)
    g_sym = symbol(G(valence), xi)
    div = symbol(Div(valence), xi)
    im_twist, _ = _split_svd(twist.matrix, tolerance)
    im_g, ker_g = _split_svd(g_sym.matrix, tolerance)
    _, ker_div = _split_svd(div.matrix, tolerance)
    return {
        "ranks": (twist.rank(tolerance), g_sym.rank(tolerance), div.rank(tolerance)),
        "twist_g": subspace_distance(im_twist, ker_g),
        "g_div": subspace_distance(im_g, ker_div),
    }


def verify_symbol_exactness(spin, trials, seed, tolerance=SYMBOL_RANK_TOLERANCE):
    """
    Exactness of Twist_{2s-2} -> G_{2s} -> Div_{2s} at random xi.

    Expected ranks (2s-1, 2, 2s-1), im Twist = ker G and im G = ker Div.

    Returns:
        VerificationReport
    """
    valence = int(2 * spin)
    if valence < 2:
        raise ContractViolation("symbol exactness needs 2s >= 2")
    expected = (valence - 1, 2, valence - 1)
    rng = np.random.default_rng(seed)
    report = VerificationReport(name=f"symbol exactness 2s={valence}", trials=trials)
    worst = 0.0
    for _ in range(trials):
        xi = random_xi(rng)
        result = exactness_at(valence, xi, tolerance)
        worst = max(worst, result["twist_g"], result["g_div"])
        if result["ranks"] != expected:
            report.record_failure(f"xi={xi.xi}: ranks {result['ranks']} != {expected}")
        elif result["twist_g"] > tolerance or result["g_div"] > tolerance:
            report.record_failure(
                f"xi={xi.xi}: im/ker mismatch {result['twist_g']:.2e}, {result['g_div']:.2e}"
            )
    report.details["worst_subspace_distance"] = worst
    logging.info(f"Symbol exactness 2s={valence}: worst subspace distance {worst:.2e}")
    return report


def _random_spinor(rng, valence):
    return SymSpinor(complex(a, b) for a, b in rng.normal(size=(valence + 1, 2)))


def _as_spinor(vector):
    return SymSpinor(complex(v) for v in vector)


def hermitian_residual(valence, xi, rng):
    """
    |<A eta, zeta> - <eta, A zeta>| / (|A| |eta| |zeta|) for A = -i sigma_xi(Curl).

    Returns:
        (residual, largest |Im eigenvalue| relative to the spectral radius)
    """
    matrix = -1j * symbol(Curl(valence), xi).matrix
    scale = float(np.linalg.norm(matrix, ord=2))
    if scale == 0.0:
        return 0.0, 0.0
    eta, zeta = _random_spinor(rng, valence), _random_spinor(rng, valence)
    a_eta = _as_spinor(matrix @ np.array(eta.comps))
    a_zeta = _as_spinor(matrix @ np.array(zeta.comps))
    lhs, rhs = inner(a_eta, zeta), inner(eta, a_zeta)
    norms = math.sqrt(abs(inner(eta, eta)) * abs(inner(zeta, zeta)))
    residual = abs(lhs - rhs) / (scale * norms)
    eigen = np.linalg.eigvals(matrix)
    imag = float(np.max(np.abs(eigen.imag))) / scale
    return residual, imag


def verify_hermitian_symbol(valence, trials, seed):
    """Hermiticity and real spectrum of the curl symbol at random xi."""
    if valence < 1:
        raise ContractViolation("the curl needs valence >= 1")
    rng = np.random.default_rng(seed)
    report = VerificationReport(name=f"curl symbol Hermitian k={valence}", trials=trials)
    for _ in range(trials):
        xi = random_xi(rng)
        residual, imag = hermitian_residual(valence, xi, rng)
        if residual > HERMITIAN_TOLERANCE or imag > EIGEN_IMAG_TOLERANCE:
            report.record_failure(f"xi={xi.xi}: Hermitian residual {residual:.2e}, Im eig {imag:.2e}")
    return report


def laplacian_symbol_residual(valence, power, xi):
    """|sigma(Delta^p) - |xi|^(2p) I| relative to |xi|^(2p)."""
    matrix = symbol(Lap(valence, power), xi).matrix
    expected = xi.squared_norm**power * np.eye(valence + 1)
    return float(np.max(np.abs(matrix - expected))) / xi.squared_norm**power


def verify_symbol_suite(spin_max, trials, seed, tolerance=SYMBOL_RANK_TOLERANCE):
    """Exactness for 2s = 2..2 spin_max and Hermiticity for valences 1..2 spin_max."""
    reports = []
    top = int(2 * spin_max)
    for valence in range(2, top + 1):
        reports.append(verify_symbol_exactness(valence / 2, trials, seed + valence, tolerance))
    for valence in range(1, top + 1):
        reports.append(verify_hermitian_symbol(valence, trials, seed + 100 + valence))
    lap_report = VerificationReport(name="Laplacian symbol", trials=top)
    rng = np.random.default_rng(seed)
    for valence in range(1, top + 1):
        xi = random_xi(rng)
        residual = laplacian_symbol_residual(valence, valence // 2 + 1, xi)
        if residual > HERMITIAN_TOLERANCE * 100:
            lap_report.record_failure(f"valence {valence}: residual {residual:.2e}")
    reports.append(lap_report)
    return reports
