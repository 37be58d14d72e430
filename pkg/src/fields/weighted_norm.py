"""
src/fields/weighted_norm.py

Weighted Sobolev norms of profile spinor fields,

    ||phi||^2_{j,delta} = sum_{n<=j} int <r>^{2(-delta-3/2+n)} |grad^n phi|^2 d^3x,

by Gauss-Jacobi quadrature in the compactified radius rho = r / (1 + r)
times a product rule on the sphere. The Jacobi weight absorbs the
algebraic decay at infinity found by exponent bookkeeping.
"""

import logging
import math

import numpy as np
from scipy import special

from config import NORM_ANGULAR_ORDERS, NORM_RADIAL_NODES
from src.core.errors import ContractViolation, NonMembershipError
from src.fields.polynomial import monomials
from src.wave.quadrature import product_rule


def _monomials_of_order(order):
    return [m for m in monomials(order) if sum(m) == order]


def _multinomial(mono):
    a, b, c = mono
    return math.factorial(a + b + c) // (math.factorial(a) * math.factorial(b) * math.factorial(c))


def norm_exponent(phi, j):
    """
    Leading radial growth of every derivative order.

    Args:
        phi: SpinorField of ProfileScalar components
        j: Highest derivative order

    Returns:
        list of exponents g_n (n = 0..j) with |grad^n phi| = O(r^{g_n}); -inf for zero
    """
    exponents = []
    for n in range(j + 1):
        best = -math.inf
        for mono in _monomials_of_order(n):
            for index in range(phi.valence + 1):
                best = max(best, phi.derivative(index, mono).leading_exponent())
        exponents.append(best)
    return exponents


def integrand_growth(phi, j, delta):
    """Radial growth exponents of the weighted integrands r^2 <r>^{2(-delta-3/2+n)} |grad^n phi|^2."""
    return [2.0 * g + 2.0 * (-delta - 1.5 + n) + 2.0 for n, g in enumerate(norm_exponent(phi, j))]


def is_member(phi, j, delta):
    """True when every weighted integrand decays faster than r^{-1}."""
    return all(g < -1.0 for g in integrand_growth(phi, j, delta))


def _spinor_norm_squared(values):
    k = len(values) - 1
    return sum(math.comb(k, i) * np.abs(v) ** 2 for i, v in enumerate(values))


def weighted_norm(phi, j, delta, radial_nodes=NORM_RADIAL_NODES, angular_orders=NORM_ANGULAR_ORDERS):
    """
    Quadrature value of the H^j_delta norm of a profile spinor field.

    Args:
        phi: SpinorField of ProfileScalar components
        j: Derivative order
        delta: Weight
        radial_nodes: Gauss-Jacobi nodes in rho
        angular_orders: (n_theta, n_phi) of the sphere rule

    Returns:
        float norm (not squared)

    Raises:
        NonMembershipError: when some weighted integrand does not decay faster than r^-1
    """
    if j < 0:
        raise ContractViolation(f"negative derivative order {j}")
    if phi.valence < 0:
        return 0.0
    growth = integrand_growth(phi, j, delta)
    finite = [g for g in growth if g > -math.inf]
    if not finite:
        return 0.0
    worst = max(finite)
    if worst >= -1.0:
        raise NonMembershipError(
            f"weighted norm H^{j}_{delta} diverges: integrand grows like r^{worst:g}"
        )

    # integrand(rho) ~ (1 - rho)^(-worst - 2) near rho = 1
    beta = -worst - 2.0
    x, w = special.roots_jacobi(radial_nodes, beta, 0.0)
    rho = 0.5 * (x + 1.0)
    r = rho / (1.0 - rho)
    directions, ang_weights = product_rule(*angular_orders)
    points = r[:, None, None] * directions[None, :, :]
    px, py, pz = points[..., 0], points[..., 1], points[..., 2]
    bracket_sq = 1.0 + r * r

    total = np.zeros_like(r)
    for n in range(j + 1):
        density = np.zeros((len(r), len(ang_weights)))
        for mono in _monomials_of_order(n):
            values = [phi.derivative(i, mono).evaluate(px, py, pz) for i in range(phi.valence + 1)]
            density = density + _multinomial(mono) * _spinor_norm_squared(values)
        weight = bracket_sq ** (-delta - 1.5 + n)
        total = total + weight * (density @ ang_weights)

    # dr = d rho / (1 - rho)^2; the Jacobi weight (1 - rho)^beta is divided out
    integrand = total * r * r / (1.0 - rho) ** 2 / (1.0 - rho) ** beta
    value = 2.0 ** (-beta - 1.0) * float(np.sum(w * integrand))
    logging.debug(f"H^{j}_{delta} norm^2 = {value:.6e} ({radial_nodes} radial nodes)")
    return math.sqrt(max(value, 0.0))
