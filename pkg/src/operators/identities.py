"""
src/operators/identities.py

Exact verification of the operator identities of the spatial spinor
calculus on random Gaussian-rational polynomial fields.

Every check evaluates both sides independently from the operator
definitions; a failed identity is recorded in a VerificationReport with
the seed that produced it.
"""

import logging
from fractions import Fraction

from config import IDENTITY_MAX_DEGREE
from src.core.errors import ContractViolation
from src.core.parallel import parallel_map
from src.core.reporting import VerificationReport
from src.fields.polynomial import gaussian, random_poly_spinor
from src.operators.calculus import (
    apply,
    compose,
    curl_matrix,
    div_matrix,
    f_matrix,
    g_curl_expansion_matrix,
    g_matrix,
    lap_matrix,
    twist_matrix,
)
from src.operators.tags import Curl, Div, F, G, Lap, Twist
from src.spinor.soldering import chart_derivative

_EPS = {(0, 1): 1, (1, 0): -1}


def _eps(a, b):
    return _EPS.get((a, b), 0)


def _degree_for(trial, max_degree):
    return trial % (max_degree + 1)


def _combine(zero, pieces):
    """Sum of Fraction-weighted PolyScalars."""
    total = zero
    for weight, value in pieces:
        if weight:
            total = total + value.scale(gaussian(weight))
    return total


def _apply_entry(phi, index, entry):
    """Apply one derivative polynomial to component `index` of an exact field."""
    total = phi.zero
    for mono, coeff in entry.terms():
        total = total + phi.derivative(index, mono).scale(coeff)
    return total


def decomposition_residual(phi):
    """
    Residual of the irreducible decomposition of D_{A1A2} phi_{A3...}.

    D_{A1A2} phi = Twist phi - k/(k+2) [eps_{A1(A3} Curl_{...)A2} + (A1 <-> A2)]
                   + (1-k)/(1+k) eps_{A1(A3} Div_{...} eps_{Ak+2)A2}

    Args:
        phi: Exact SpinorField of valence k >= 1

    Returns:
        dict {(a1, a2, n): PolyScalar} of the nonzero residual components,
        n counting the 1-indices among A3...Ak+2; empty when exact
    """
    k = phi.valence
    if k < 1:
        raise ContractViolation("the irreducible decomposition needs valence >= 1")
    twist = apply(Twist(k), phi).comps
    curl = apply(Curl(k), phi).comps
    div = apply(Div(k), phi).comps if k >= 2 else ()
    d_comps = chart_derivative().comps
    zero = phi.zero
    curl_weight = Fraction(-k, k + 2)
    div_weight = Fraction(1 - k, 1 + k)

    def curl_term(a1, a2, n):
        pieces = []
        if n >= 1:
            pieces.append((Fraction(n * _eps(a1, 1), k), curl[n - 1 + a2]))
        if k - n >= 1:
            pieces.append((Fraction((k - n) * _eps(a1, 0), k), curl[n + a2]))
        return pieces

    def div_term(a1, a2, n):
        if k < 2:
            return []
        counts = {
            (1, 1): n * (n - 1),
            (1, 0): n * (k - n),
            (0, 1): (k - n) * n,
            (0, 0): (k - n) * (k - n - 1),
        }
        pieces = []
        for (p, q), count in counts.items():
            sign = _eps(a1, p) * _eps(q, a2)
            if count and sign:
                pieces.append((Fraction(count * sign, k * (k - 1)), div[n - p - q]))
        return pieces

    residual = {}
    for a1, a2 in ((0, 0), (0, 1), (1, 1)):
        entry = d_comps[a1 + a2]
        for n in range(k + 1):
            lhs = _apply_entry(phi, n, entry)
            pieces = [(Fraction(1), twist[a1 + a2 + n])]
            pieces += [(w * curl_weight, v) for w, v in curl_term(a1, a2, n)]
            pieces += [(w * curl_weight, v) for w, v in curl_term(a2, a1, n)]
            pieces += [(w * div_weight, v) for w, v in div_term(a1, a2, n)]
            diff = lhs - _combine(zero, pieces)
            if not diff.is_zero():
                residual[(a1, a2, n)] = diff
    return residual


def verify_irreducible_decomposition(phi):
    """Residual of the irreducible decomposition (empty dict when exact)."""
    return decomposition_residual(phi)


def _run_trials(name, trials, seed, check):
    """Run check(trial_seed) in parallel; check returns None or a failure message."""
    report = VerificationReport(name=name, trials=trials)
    outcomes = parallel_map(check, [seed + t for t in range(trials)])
    for message in outcomes:
        if message:
            report.record_failure(message)
    if report.passed:
        logging.info(f"{name}: {trials} trials exact")
    else:
        logging.error(f"{name}: {len(report.failures)} of {trials} trials failed")
    return report


def verify_decomposition_suite(valence, trials, seed, max_degree=IDENTITY_MAX_DEGREE):
    """Irreducible decomposition on `trials` random fields of the given valence."""

    def check(trial_seed):
        degree = _degree_for(trial_seed, max_degree)
        phi = random_poly_spinor(valence, degree, trial_seed)
        residual = decomposition_residual(phi)
        if residual:
            key, value = next(iter(residual.items()))
            return f"decomposition residual at {key} (seed {trial_seed}, degree {degree}): {value}"
        return None

    return _run_trials(f"decomposition k={valence}", trials, seed, check)


def verify_g_annihilation(valence, trials, seed, max_degree=IDENTITY_MAX_DEGREE, coefficients=None):
    """
    Div o G_k = 0 and G_k o Twist_{k-2} = 0 on random polynomial fields.

    Args:
        valence: k >= 2
        trials: Number of random fields
        seed: First seed
        max_degree: Degrees cycle through 0..max_degree
        coefficients: Optional override of the G_k weights (mutation tests)

    Returns:
        VerificationReport
    """
    if valence < 2:
        raise ContractViolation("G annihilation needs valence >= 2")
    g_op = g_matrix(valence, coefficients)

    def check(trial_seed):
        degree = _degree_for(trial_seed, max_degree)
        phi = random_poly_spinor(valence, degree, trial_seed)
        if not apply(Div(valence), apply(g_op, phi)).is_zero():
            return f"Div o G{valence} != 0 (seed {trial_seed}, degree {degree})"
        psi = random_poly_spinor(valence - 2, degree + 1, trial_seed)
        if not apply(g_op, apply(Twist(valence - 2), psi)).is_zero():
            return f"G{valence} o Twist{valence - 2} != 0 (seed {trial_seed}, degree {degree + 1})"
        return None

    return _run_trials(f"G annihilation k={valence}", trials, seed, check)


def verify_g_curl_commute(valence, trials, seed, max_degree=IDENTITY_MAX_DEGREE):
    """G_k o Curl_k = Curl_k o G_k, and both equal the closed-form expansion."""
    if valence < 1:
        raise ContractViolation("G and Curl need valence >= 1")
    expansion = g_curl_expansion_matrix(valence)

    def check(trial_seed):
        degree = _degree_for(trial_seed, max_degree)
        phi = random_poly_spinor(valence, degree, trial_seed)
        g_curl = apply(G(valence), apply(Curl(valence), phi))
        curl_g = apply(Curl(valence), apply(G(valence), phi))
        if not (g_curl - curl_g).is_zero():
            return f"[G{valence}, Curl{valence}] != 0 (seed {trial_seed}, degree {degree})"
        if not (g_curl - apply(expansion, phi)).is_zero():
            return f"G{valence} o Curl{valence} != expansion (seed {trial_seed}, degree {degree})"
        return None

    return _run_trials(f"G Curl commute k={valence}", trials, seed, check)


def laplacian_identity_sides(phi):
    """
    Both sides of the Laplacian power identity for a field of valence 2k or 2k+1.

    Even: Delta^k = Twist F Div - (-2)^(1-k) G Curl
    Odd:  Delta^k = Twist F Div + (-2)^(-k) G

    Returns:
        (lhs, rhs) SpinorFields
    """
    valence = phi.valence
    k = valence // 2
    lhs = apply(Lap(valence, k), phi)
    twist_f_div = apply(Twist(valence - 2), apply(F(valence - 2), apply(Div(valence), phi)))
    if valence % 2 == 0:
        if k < 1:
            raise ContractViolation("the even Laplacian identity needs valence >= 2")
        weight = -(Fraction(-2) ** (1 - k))
        tail = apply(G(valence), apply(Curl(valence), phi))
    else:
        weight = Fraction(-2) ** (-k)
        tail = apply(G(valence), phi)
    return lhs, twist_f_div + tail.scale(gaussian(weight))


def verify_laplacian_identity(valence, trials, seed, max_degree=IDENTITY_MAX_DEGREE):
    """Exact check of the Laplacian power identity at the given valence."""
    if valence < 1:
        raise ContractViolation("the Laplacian identity needs valence >= 1")

    def check(trial_seed):
        degree = _degree_for(trial_seed, max_degree)
        phi = random_poly_spinor(valence, degree, trial_seed)
        lhs, rhs = laplacian_identity_sides(phi)
        diff = lhs - rhs
        if not diff.is_zero():
            return f"Laplacian identity residual {diff.comps} (seed {trial_seed}, degree {degree})"
        return None

    return _run_trials(f"Laplacian identity valence={valence}", trials, seed, check)


def _gaussian_fraction(value):
    if value.y:
        raise ContractViolation(f"coefficient {value} is not real")
    return Fraction(str(value.x))


def solve_proportionality(target, basis):
    """
    Find a with target = a * basis exactly.

    Returns:
        Fraction a, or None when the matrices are not proportional
    """
    for row_t, row_b in zip(target.rows, basis.rows):
        for entry_t, entry_b in zip(row_t, row_b):
            if entry_b:
                mono, coeff = next(iter(entry_b.terms()))
                ratio = entry_t.get(mono, entry_t.ring.domain.zero) / coeff
                try:
                    ratio = _gaussian_fraction(ratio)
                except ContractViolation:
                    return None
                if (target - basis.scale(ratio)).is_zero():
                    return ratio
                return None
    return None


def g3_twist_div_coefficient():
    """Coefficient a with G_3 = a Twist_1 Div_3 + 4 Curl_3^2 (None if no such a)."""
    remainder = g_matrix(3) - compose(curl_matrix(3), curl_matrix(3)).scale(4)
    return solve_proportionality(remainder, compose(twist_matrix(1), div_matrix(3)))


def g4_alternate_residual():
    """G_4 - (2 Twist_2 Div_4 Curl_4 + 8 Curl_4^3) as an operator matrix."""
    twist_div_curl = compose(twist_matrix(2), div_matrix(4), curl_matrix(4)).scale(2)
    curl_cubed = compose(curl_matrix(4), curl_matrix(4), curl_matrix(4)).scale(8)
    return g_matrix(4) - twist_div_curl - curl_cubed


def verify_alternate_forms():
    """Report on the alternate G_3 and G_4 expressions."""
    report = VerificationReport(name="alternate G3/G4 forms", trials=2)
    coefficient = g3_twist_div_coefficient()
    report.details["g3_twist_div_coefficient"] = coefficient
    if coefficient is None:
        report.record_failure("G3 - 4 Curl3^2 is not proportional to Twist1 Div3")
    if not g4_alternate_residual().is_zero():
        report.record_failure("G4 != 2 Twist2 Div4 Curl4 + 8 Curl4^3")
    logging.info(f"G3 alternate reproduces the defining sum with coefficient {coefficient}")
    return report


def matrix_identity_residuals(valence):
    """
    Operator-level residuals of every identity at one valence.

    Returns:
        dict {identity name: OperatorMatrix residual}
    """
    k = valence
    residuals = {
        "div_g": compose(div_matrix(k), g_matrix(k)),
        "g_curl_commute": compose(g_matrix(k), curl_matrix(k)) - compose(curl_matrix(k), g_matrix(k)),
        "g_curl_expansion": compose(g_matrix(k), curl_matrix(k)) - g_curl_expansion_matrix(k),
    }
    if k >= 2:
        residuals["g_twist"] = compose(g_matrix(k), twist_matrix(k - 2))
    half = k // 2
    twist_f_div = compose(twist_matrix(k - 2), f_matrix(k - 2), div_matrix(k))
    if k % 2 == 0 and half >= 1:
        tail = compose(g_matrix(k), curl_matrix(k)).scale(-(Fraction(-2) ** (1 - half)))
        residuals["laplacian_even"] = lap_matrix(k, half) - twist_f_div - tail
    elif k % 2 == 1:
        tail = g_matrix(k).scale(Fraction(-2) ** (-half))
        residuals["laplacian_odd"] = lap_matrix(k, half) - twist_f_div - tail
    return residuals


def verify_identity_suite(spin_max, trials, seed, max_degree=IDENTITY_MAX_DEGREE):
    """
    Every identity for valences 2..2*spin_max.

    Returns:
        list of VerificationReport
    """
    reports = []
    for valence in range(1, int(2 * spin_max) + 1):
        matrix_report = VerificationReport(name=f"operator matrices valence={valence}", trials=1)
        for name, residual in matrix_identity_residuals(valence).items():
            if not residual.is_zero():
                matrix_report.record_failure(f"{name} residual {residual.residual_entries()[:1]}")
        reports.append(matrix_report)
        reports.append(verify_decomposition_suite(valence, trials, seed, max_degree))
        reports.append(verify_laplacian_identity(valence, trials, seed, max_degree))
        reports.append(verify_g_curl_commute(valence, trials, seed, max_degree))
        if valence >= 2:
            reports.append(verify_g_annihilation(valence, trials, seed, max_degree))
    reports.append(verify_alternate_forms())
    return reports
