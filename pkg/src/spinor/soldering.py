"""
src/spinor/soldering.py

The convention ledger: eps, tau and the three symmetric soldering matrices
sigma^j with D_AB = sigma^j_AB d_j, plus the oracle checks that validate
them. Matrices are stored exactly (sympy, with sqrt(2) and I).
"""

import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy
from sympy import I, Matrix, Rational, sqrt
from sympy.polys.polyerrors import CoercionFailed

from src.core.errors import ConventionError
from src.fields.polynomial import DERIVATIVE_RING, QQ_I
from src.spinor.core import SymSpinor, hat
from src.spinor.tensor import tensor_hat

_X, _Y, _Z = sympy.symbols("x y z", real=True)
_COORDS = (_X, _Y, _Z)
# eps^{AB} as a matrix: raising T^{AB} = E T E^T
_EPS_UP = Matrix([[0, 1], [-1, 0]])


@dataclass(frozen=True)
class ConventionReport:
    """Outcome of validate_conventions."""

    c: sympy.Expr
    checks: tuple = field(default_factory=tuple)


class SolderingSet:
    """Exact soldering data tying spinor components to Cartesian R^3."""

    def __init__(self, eps, tau, sigma):
        self.eps = Matrix(eps)
        self.tau = Matrix(tau)
        self.sigma = tuple(Matrix(s) for s in sigma)

    @classmethod
    def shipped(cls):
        """Shipped set: sigma^y = -(i/sqrt 2) I, so o (x) o-bar is the outgoing l."""
        return cls.candidate(orientation=-1)

    @classmethod
    def candidate(cls, orientation=1):
        """Listed candidate family; orientation is the sign of sigma^y."""
        s = 1 / sqrt(2)
        return cls(
            eps=[[0, 1], [-1, 0]],
            tau=[[1, 0], [0, 1]],
            sigma=(
                [[0, s], [s, 0]],
                [[orientation * I * s, 0], [0, orientation * I * s]],
                [[s, 0], [0, -s]],
            ),
        )

    def with_sigma_entry(self, j, a, b, value):
        """Copy with a single sigma^j_ab entry replaced (for mutation tests)."""
        sigma = [Matrix(s) for s in self.sigma]
        sigma[j][a, b] = value
        return SolderingSet(self.eps, self.tau, sigma)

    def with_tau(self, tau):
        return SolderingSet(self.eps, tau, self.sigma)

    def sigma_numeric(self):
        """sigma as a complex array of shape (3, 2, 2)."""
        return np.array([[[complex(s[a, b]) for b in (0, 1)] for a in (0, 1)] for s in self.sigma])

    def tau_numeric(self):
        return np.array([[complex(self.tau[a, b]) for b in (0, 1)] for a in (0, 1)])

    def derivative_spinor(self):
        """
        D_AB in the chart x' = sqrt(2) x as a symmetric spinor whose components
        are linear forms in (px, py, pz) = d/dx'.

        Raises:
            ConventionError: when sqrt(2) sigma is not Gaussian rational
        """
        gens = DERIVATIVE_RING.gens
        comps = []
        for a, b in ((0, 0), (0, 1), (1, 1)):
            total = DERIVATIVE_RING.zero
            for j in range(3):
                entry = sympy.nsimplify(sympy.expand(sqrt(2) * self.sigma[j][a, b]))
                try:
                    coeff = QQ_I.from_sympy(entry)
                except (CoercionFailed, TypeError):
                    coeff = None
                if coeff is None:
                    raise ConventionError(
                        f"sqrt(2) sigma^{'xyz'[j]}_{a}{b} = {entry} is not Gaussian rational"
                    )
                total += gens[j] * coeff
            comps.append(total)
        return SymSpinor(comps)


def _raise_both(matrix):
    return _EPS_UP * matrix * _EPS_UP.T


def _apply_d(soldering, a, b, expr):
    return sum(soldering.sigma[j][a, b] * sympy.diff(expr, _COORDS[j]) for j in range(3))


def _laplacian_d(soldering, expr):
    """D_AB D^AB f computed slot by slot."""
    raised = _raise_both(Matrix(2, 2, lambda i, k: _apply_d(soldering, i, k, expr)))
    total = 0
    for a in (0, 1):
        for b in (0, 1):
            total += sum(
                soldering.sigma[j][a, b] * sympy.diff(raised[a, b], _COORDS[j]) for j in range(3)
            )
    return sympy.expand(total)


def _random_field(rng, valence):
    comps = []
    for _ in range(valence + 1):
        expr = 0
        for mono in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 2, 1)):
            coeff = rng.randint(-5, 5) + I * rng.randint(-5, 5)
            expr += coeff * _X ** mono[0] * _Y ** mono[1] * _Z ** mono[2]
        comps.append(expr)
    return comps


def _sym_hat(comps):
    k = len(comps) - 1
    return [(-1) ** (k - i) * sympy.conjugate(comps[k - i]) for i in range(k + 1)]


def _is_zero(expr):
    return sympy.expand(expr) == 0


def validate_conventions(soldering, seed=0):
    """
    Check every soldering identity exactly and measure the constant c in
    D_A^C D_BC = c eps_AB Delta.

    Args:
        soldering: SolderingSet to check
        seed: Seed of the random polynomial fields used by the reality check

    Returns:
        ConventionReport with c and the names of the passed checks

    Raises:
        ConventionError: naming the first violated identity
    """
    passed = []

    def require(ok, name):
        if not ok:
            raise ConventionError(f"convention check failed: {name}")
        passed.append(name)

    eps = soldering.eps
    require(eps[0, 1] == 1 and eps[1, 0] == -1 and eps[0, 0] == 0 and eps[1, 1] == 0,
            "eps antisymmetric with eps_01 = 1")

    for j, s in enumerate(soldering.sigma):
        require(_is_zero(s[0, 1] - s[1, 0]), f"sigma^{'xyz'[j]} symmetric")
    for j, s in enumerate(soldering.sigma):
        require(_is_zero(2 * s.det() + 1), f"2 det sigma^{'xyz'[j]} = -1")
    for j in range(3):
        for k in range(3):
            raised = _raise_both(soldering.sigma[k])
            gram = sum(soldering.sigma[j][a, b] * raised[a, b] for a in (0, 1) for b in (0, 1))
            require(_is_zero(gram + (1 if j == k else 0)),
                    f"sigma^{'xyz'[j]}_AB sigma^{'xyz'[k]} AB = -delta")

    for name, f in (("x^2", _X**2), ("y^2", _Y**2), ("z^2", _Z**2), ("xy", _X * _Y)):
        euclid = sum(sympy.diff(f, c, 2) for c in _COORDS)
        require(_is_zero(_laplacian_d(soldering, f) + euclid), f"D_AB D^AB {name} = -lap {name}")

    tau = soldering.tau
    tau_up = _raise_both(tau)
    require(_is_zero(sum(tau[a, b] * tau_up[a, b] for a in (0, 1) for b in (0, 1)) - 2),
            "tau_AA' tau^AA' = 2")
    require(all(_is_zero(tau[a, b] - sympy.conjugate(tau[b, a])) for a in (0, 1) for b in (0, 1)),
            "tau Hermitian")

    rng = random.Random(f"conventions:{seed}")
    tau_num = soldering.tau_numeric()
    for valence in range(0, 5):
        phi = SymSpinor(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(valence + 1))
        reference = tensor_hat(phi, tau_num)
        candidate = hat(phi)
        require(all(abs(a - b) < 1e-12 for a, b in zip(reference.comps, candidate.comps)),
                f"hat agrees with tau contraction at valence {valence}")

    # D real: hat(D_AB phi) = -D_AB hat(phi), hats taken over all indices.
    d_pairs = ((0, 0), (0, 1), (1, 1))
    for valence in (0, 1, 2):
        comps = [_X] if valence == 0 else _random_field(rng, valence)
        hat_phi = _sym_hat(comps)
        applied = [[_apply_d(soldering, a, b, c) for c in comps] for a, b in d_pairs]
        for ab in range(3):
            for i in range(valence + 1):
                lhs = (-1) ** (2 - ab) * (-1) ** (valence - i) * sympy.conjugate(
                    applied[2 - ab][valence - i]
                )
                a, b = d_pairs[ab]
                rhs = -_apply_d(soldering, a, b, hat_phi[i])
                require(_is_zero(lhs - rhs), f"D real on valence {valence} (component {ab},{i})")

    f = _X**2 + _Y**2 + _Z**2
    lap = _laplacian_d(soldering, f)

    def mixed(a, b):
        # D_A^C D_BC = D_A1 D_B0 - D_A0 D_B1
        return sympy.expand(
            _apply_d(soldering, a, 1, _apply_d(soldering, b, 0, f))
            - _apply_d(soldering, a, 0, _apply_d(soldering, b, 1, f))
        )

    require(_is_zero(mixed(0, 0)) and _is_zero(mixed(1, 1)), "D_A^C D_BC diagonal vanishes")
    require(_is_zero(mixed(0, 1) + mixed(1, 0)), "D_A^C D_BC antisymmetric")
    c = sympy.nsimplify(sympy.simplify(mixed(0, 1) / lap))
    require(c in (Rational(1, 2), Rational(-1, 2)), "D_A^C D_BC = c eps_AB Delta with c = +-1/2")

    logging.debug(f"Soldering conventions validated, c = {c}")
    return ConventionReport(c=c, checks=tuple(passed))


@lru_cache(maxsize=1)
def shipped_soldering():
    return SolderingSet.shipped()


@lru_cache(maxsize=1)
def chart_derivative():
    """D_AB of the shipped soldering set in the exact chart."""
    return shipped_soldering().derivative_spinor()
