"""Entropies, mixedness statistics and majorization.

All logarithms are natural; callers wanting qubit units divide by ln 2.
Eigenvalues are clipped into [0, 1] before any p log p evaluation and
0 log 0 is taken as 0.
"""

from dataclasses import dataclass

import numpy as np

from .tensor import clip_probabilities, herm_spectrum

HARTLEY_RANK_TOL = 1e-9
MAJ_TOL = 1e-12
# Renyi/Tsallis dispatch to the von Neumann branch inside this window of
# q = 1, where the generic formula is numerically useless anyway.
Q_ONE_WINDOW = 1e-4

VON_NEUMANN = "vonNeumann"
RENYI = "Renyi"
TSALLIS = "Tsallis"
HARTLEY = "Hartley"
CHEBYSHEV = "Chebyshev"


@dataclass(frozen=True)
class EntropyFamily:
    kind: str = VON_NEUMANN
    q: float = 1.0

    def __post_init__(self):
        if self.kind not in (VON_NEUMANN, RENYI, TSALLIS, HARTLEY, CHEBYSHEV):
            raise ValueError("unknown entropy kind %r" % (self.kind,))
        if self.kind in (RENYI, TSALLIS) and not self.q > 0:
            raise ValueError("q must be positive, got %r" % (self.q,))


def spectrum_probabilities(rho, tol=1e-12):
    """Eigenvalues of a density matrix as a clipped probability vector."""
    return clip_probabilities(herm_spectrum(rho, tol))


def shannon(p):
    p = clip_probabilities(p)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def binary_entropy(x):
    """h(x) = -x ln x - (1-x) ln(1-x), natural log."""
    return shannon([x, 1.0 - x])


def entropy_of_spectrum(p, fam):
    p = clip_probabilities(p)
    kind, q = fam.kind, fam.q
    if kind in (RENYI, TSALLIS) and abs(q - 1.0) <= Q_ONE_WINDOW:
        kind = VON_NEUMANN
    if kind == VON_NEUMANN:
        return shannon(p)
    if kind == HARTLEY:
        return float(np.log(max(1, int(np.sum(p > HARTLEY_RANK_TOL)))))
    if kind == CHEBYSHEV:
        return float(-np.log(np.max(p)))
    s = float(np.sum(p[p > 0] ** q))
    if kind == RENYI:
        return float(np.log(s) / (1.0 - q))
    return float((s - 1.0) / (1.0 - q))  # Tsallis


def entropy(rho, fam=EntropyFamily()):
    """Entropy of a density matrix for the selected family."""
    return entropy_of_spectrum(spectrum_probabilities(rho), fam)


def purity_stats(rho):
    """(purity, participation ratio, concurrence-squared mixedness).

    P = tr rho^2, R = 1/P, and C^2 = d/(d-1) (1 - P), the purity rescaled
    so that 0 marks pure states and 1 the white noise, any d.
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    p = float(np.real(np.trace(rho @ rho)))
    c2 = d / (d - 1.0) * (1.0 - p) if d > 1 else 0.0
    return p, 1.0 / p, c2


def qubit_concurrence_squared(rho):
    """C^2 of a possibly subnormalized one-qubit state, 2((tr rho)^2 - tr rho^2)."""
    rho = np.asarray(rho, dtype=complex)
    tr = float(np.real(np.trace(rho)))
    return 2.0 * (tr * tr - float(np.real(np.trace(rho @ rho))))


P_MAJORIZED = "p<q"          # p is majorized by q (p more mixed)
Q_MAJORIZED = "q<p"          # q is majorized by p
EQUAL = "equal-up-to-permutation"
INCOMPARABLE = "incomparable"


def majorization_margins(p, q):
    """Partial-sum slacks sum_k q_i^down - sum_k p_i^down, zero-padded to
    a common length.  All entries >= 0 means p is majorized by q."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(p < -MAJ_TOL) or np.any(q < -MAJ_TOL):
        raise ValueError("negative entries in a probability sequence")
    k = max(p.size, q.size)
    ps = np.zeros(k)
    qs = np.zeros(k)
    ps[:p.size] = np.sort(np.clip(p, 0.0, None))[::-1]
    qs[:q.size] = np.sort(np.clip(q, 0.0, None))[::-1]
    return np.cumsum(qs) - np.cumsum(ps)


def majorizes(p, q, tol=MAJ_TOL):
    """Compare two probability sequences in the majorization order.

    Returns one of "p<q" (p majorized by q), "q<p", the string
    "equal-up-to-permutation", or "incomparable".
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    for v in (p, q):
        if abs(float(np.sum(v)) - 1.0) > 1e-10:
            raise ValueError("sequence does not sum to 1")
    diff = majorization_margins(p, q)
    p_below = bool(np.all(diff >= -tol))
    q_below = bool(np.all(diff <= tol))
    if p_below and q_below:
        return EQUAL
    if p_below:
        return P_MAJORIZED
    if q_below:
        return Q_MAJORIZED
    return INCOMPARABLE
