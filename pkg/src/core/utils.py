"""
src/core/utils.py

Mathematical helpers shared by the field, wave and peeling packages.
Provides the Japanese bracket, null coordinates and spherical charts.
"""

import math

import numpy as np


def japanese_bracket(x):
    """
    Compute <x> = (1 + x^2)^(1/2).

    Args:
        x: Scalar or array

    Returns:
        Bracket of x, same shape as the input
    """
    return np.sqrt(1.0 + np.square(x))


def binomial(n, k):
    """Binomial coefficient that is zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def null_coordinates(t, r):
    """
    Retarded and advanced coordinates.

    Args:
        t: Time
        r: Radius

    Returns:
        Tuple (u, v) = (t - r, t + r)
    """
    return t - r, t + r


def spherical_to_cartesian(r, theta, phi):
    """
    Convert spherical coordinates to a Cartesian point.

    Args:
        r: Radius
        theta: Polar angle measured from +z
        phi: Azimuth measured from +x

    Returns:
        numpy array (x, y, z)
    """
    st = math.sin(theta)
    return np.array([r * st * math.cos(phi), r * st * math.sin(phi), r * math.cos(theta)])


def cartesian_to_spherical(x):
    """
    Convert a Cartesian point to spherical coordinates.

    Args:
        x: Sequence (x, y, z)

    Returns:
        Tuple (r, theta, phi)
    """
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        return 0.0, 0.0, 0.0
    theta = math.acos(max(-1.0, min(1.0, x[2] / r)))
    phi = math.atan2(x[1], x[0])
    return r, theta, phi


def spherical_basis(theta, phi):
    """
    Orthonormal spherical basis at the given angles.

    Returns:
        Tuple of numpy arrays (r_hat, theta_hat, phi_hat)
    """
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    r_hat = np.array([st * cp, st * sp, ct])
    theta_hat = np.array([ct * cp, ct * sp, -st])
    phi_hat = np.array([-sp, cp, 0.0])
    return r_hat, theta_hat, phi_hat


def relative_error(value, reference):
    """|value - reference| / |reference|, falling back to the absolute error at 0."""
    scale = abs(reference)
    diff = abs(value - reference)
    return diff / scale if scale > 0 else diff
