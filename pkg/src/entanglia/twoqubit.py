"""Closed-form two-qubit entanglement measures and the fermionic
four-qubit purification family.

The family lives on six complex parameters (w, z), normalized as
||w||^2 + ||z||^2 = 1.  Its two-qubit reduced state on subsystems (1,2)
admits closed forms for the Wootters concurrence and the negativity in
terms of a handful of derived scalars, which this module implements next
to the direct eigensolver routes so the two can be checked against each
other.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .mixedness import binary_entropy
from .tensor import EPS2, ID2, PAULI, partial_trace, proj, spin_flip

LN2 = float(np.log(2.0))


# ----------------------------------------------------------------------
# two-qubit closed forms


def pure_concurrence(psi):
    """|<psi~|psi>| of a two-qubit vector, equal to 2|det of the 2x2 amplitude matrix|."""
    psi = np.asarray(psi, dtype=complex).reshape(4)
    return float(abs(np.vdot(spin_flip(psi), psi)))


def wootters_lambdas(rho):
    """Square roots of the eigenvalues of rho rho~, descending.

    The spectrum is evaluated through the Hermitian similarity
    sqrt(rho) rho~ sqrt(rho), which shares the eigenvalues of the
    non-Hermitian product but keeps degenerate zeros well conditioned.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a two-qubit density matrix")
    p, u = np.linalg.eigh(rho)
    root = (u * np.sqrt(np.clip(p, 0.0, None))) @ u.conj().T
    m = root @ spin_flip(rho) @ root
    ev = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    ev = np.where(ev < 1e-12, 0.0, ev)  # clip artifacts before the sqrt
    return np.sort(np.sqrt(ev))[::-1]


def wootters_concurrence(rho):
    lam = wootters_lambdas(rho)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concave_concurrence(rho):
    """Concave-roof counterpart: the sum of all four lambdas."""
    return float(np.sum(wootters_lambdas(rho)))


def eof_from_concurrence(c, base=None):
    """S(c) = h((1 + sqrt(1 - c^2))/2); natural log, or pass base=2."""
    c = float(c)
    val = binary_entropy(0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - c * c))))
    return val / np.log(base) if base else val


def entanglement_of_formation(rho, base=None):
    return eof_from_concurrence(wootters_concurrence(rho), base=base)


# ----------------------------------------------------------------------
# four-qubit degree-2/4/6 SL-invariants, generic in the state vector


def invariant_h(psi):
    """H = <psi~|psi>/2, the quadratic invariant of four qubits."""
    psi = np.asarray(psi, dtype=complex).reshape(16)
    return 0.5 * complex(np.vdot(spin_flip(psi), psi))


def invariants_lmn(psi):
    """The three 4x4 determinants over the pairings (12)(34), (31)(24), (14)(23)."""
    t = np.asarray(psi, dtype=complex).reshape(2, 2, 2, 2)
    l = np.linalg.det(t.reshape(4, 4))
    m = np.linalg.det(t.transpose(2, 0, 1, 3).reshape(4, 4))
    n = np.linalg.det(t.transpose(0, 3, 1, 2).reshape(4, 4))
    return complex(l), complex(m), complex(n)


def invariant_d(psi):
    """Degree-6 invariant: determinant of the 3x3 matrix built from the
    epsilon-contracted biquadratic C[(il),(i'l')]."""
    t = np.asarray(psi, dtype=complex).reshape(2, 2, 2, 2)
    c = 0.5 * np.einsum("ab,cd,iacl,mbdn->ilmn", EPS2, EPS2, t, t)
    b = np.array([
        [c[0, 0, 0, 0], 2 * c[0, 0, 0, 1], c[0, 1, 0, 1]],
        [2 * c[0, 0, 1, 0], 2 * (c[0, 0, 1, 1] + c[0, 1, 1, 0]), 2 * c[0, 1, 1, 1]],
        [c[1, 0, 1, 0], 2 * c[1, 0, 1, 1], c[1, 1, 1, 1]],
    ])
    return complex(np.linalg.det(b))


def four_qubit_invariants(psi):
    h = invariant_h(psi)
    l, m, n = invariants_lmn(psi)
    d = invariant_d(psi)
    return {"H": h, "L": l, "M": m, "N": n, "D": d}


# ----------------------------------------------------------------------
# the fermionic family


@dataclass(frozen=True)
class FermionicDerived:
    eta: float
    sigma: float
    r: float
    s: float
    gamma_plus: float
    gamma_minus: float
    norm_defect: float


def _pair_matrix(v):
    v1, v2, v3 = (complex(x) for x in v)
    return np.array([[v1 - 1j * v2, -v3], [-v3, -v1 - 1j * v2]])


def fermionic_vector(w, z):
    """The four-qubit purification vector; index order (1,2,3,4)."""
    w = np.asarray(w, dtype=complex).reshape(3)
    z = np.asarray(z, dtype=complex).reshape(3)
    a = _pair_matrix(z)
    b = _pair_matrix(w)
    psi = np.zeros((2, 2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    psi[i, j, k, l] = 0.5 * (EPS2[i, k] * a[j, l] + b[i, k] * EPS2[j, l])
    return psi.reshape(16)


def fermionic_derived(w, z):
    w = np.asarray(w, dtype=complex).reshape(3)
    z = np.asarray(z, dtype=complex).reshape(3)
    w2 = complex(np.sum(w * w))
    z2 = complex(np.sum(z * z))
    x = np.real(1j * np.cross(w, np.conj(w)))
    y = np.real(1j * np.cross(z, np.conj(z)))
    r = float(np.linalg.norm(x))
    s = float(np.linalg.norm(y))
    defect = float(np.linalg.norm(w) ** 2 + np.linalg.norm(z) ** 2 - 1.0)
    return FermionicDerived(
        eta=abs(w2 - z2),
        sigma=abs(w2 + z2),
        r=r,
        s=s,
        gamma_plus=r + s,
        gamma_minus=abs(r - s),
        norm_defect=defect,
    )


def fermionic_build(w, z):
    """Two-qubit reduced state of the family and its derived scalars.

    rho = (I + Lambda)/4 with Lambda carrying the two local Bloch vectors
    x = i w x conj(w), y = i z x conj(z) and the correlation block
    (w_a conj(z)_b + conj(w)_a z_b).
    """
    w = np.asarray(w, dtype=complex).reshape(3)
    z = np.asarray(z, dtype=complex).reshape(3)
    derived = fermionic_derived(w, z)
    if abs(derived.norm_defect) > 1e-10:
        warnings.warn("parameters are not normalized: ||w||^2+||z||^2-1 = %.3e"
                      % derived.norm_defect)
    x = np.real(1j * np.cross(w, np.conj(w)))
    y = np.real(1j * np.cross(z, np.conj(z)))
    lam = np.zeros((4, 4), dtype=complex)
    for a in range(3):
        lam += x[a] * np.kron(PAULI[a], ID2)
        lam += y[a] * np.kron(ID2, PAULI[a])
        for b in range(3):
            lam += (w[a] * np.conj(z[b]) + np.conj(w[a]) * z[b]) * \
                np.kron(PAULI[a], PAULI[b])
    rho = 0.25 * (np.eye(4) + lam)
    return rho, derived


def fermionic_measures(derived):
    """(concurrence, negativity, upper bound, lower bound) closed forms."""
    eta2 = derived.eta ** 2
    gp2 = derived.gamma_plus ** 2
    gm2 = derived.gamma_minus ** 2
    conc = 0.5 * (np.sqrt(max(0.0, 1.0 - eta2 - gm2)) - np.sqrt(max(0.0, 1.0 - gp2)))
    conc = float(max(0.0, conc))
    neg = 0.5 * (np.sqrt(max(0.0, 1.0 - eta2 - gm2 + gp2)) - 1.0)
    neg = float(max(0.0, neg))
    upper = 0.5 * (np.sqrt(max(0.0, 2.0 - (1.0 - 2.0 * conc) ** 2)) - 1.0)
    lower = 0.5 * (np.sqrt(1.0 + 4.0 * conc * conc) - 1.0)
    return conc, neg, upper, lower


def fermionic_wootters_spectrum(derived):
    """The four lambda values of the reduced state, descending."""
    eta2 = derived.eta ** 2
    vals = []
    for g in (derived.gamma_plus, derived.gamma_minus):
        a = np.sqrt(max(0.0, 1.0 - g * g))
        b = np.sqrt(max(0.0, 1.0 - g * g - eta2))
        vals.extend([0.25 * (a + b), 0.25 * (a - b)])
    return np.sort(np.array(vals))[::-1]


def fermionic_pt_spectrum(derived):
    """Eigenvalues of the partial transpose of the reduced state, descending."""
    eta2 = derived.eta ** 2
    rs4 = 4.0 * derived.r * derived.s
    na = np.sqrt(max(0.0, 1.0 - eta2 + rs4))
    nb = np.sqrt(max(0.0, 1.0 - eta2 - rs4))
    vals = [0.25 * (1.0 + na), 0.25 * (1.0 - na), 0.25 * (1.0 + nb), 0.25 * (1.0 - nb)]
    return np.sort(np.array(vals))[::-1]


def fermionic_separable(derived):
    """The reduced state is separable exactly when eta^2 >= 4 r s."""
    return bool(derived.eta ** 2 >= 4.0 * derived.r * derived.s - 1e-12)


def fermionic_two_parameter(theta, phi):
    """Two-parameter slice: w, z supported on (1, e^{i phi}, 0)."""
    base = np.array([1.0, np.exp(1j * phi), 0.0])
    w = np.cos(theta) / np.sqrt(2.0) * base
    z = np.sin(theta) / np.sqrt(2.0) * base
    return w, z


@dataclass(frozen=True)
class FermionicMonogamy:
    c2_marginals: tuple          # C^2(pi_a), a = 1..4
    pair_conc2: dict             # (a,b) -> Wootters concurrence squared
    sigma1: float
    sigma2: float
    H: complex
    L: complex
    M: complex
    N: complex
    D: complex


def _sigma_terms(w, z, derived):
    """Closed forms of the two monogamy residuals, with the regime switch
    at eta^2 = 4 r s (entangled pairs below, separable at or above)."""
    w = np.asarray(w, dtype=complex).reshape(3)
    z = np.asarray(z, dtype=complex).reshape(3)
    nw = float(np.linalg.norm(w) ** 2)
    nz = float(np.linalg.norm(z) ** 2)
    aw2 = abs(complex(np.sum(w * w)))
    az2 = abs(complex(np.sum(z * z)))
    eta2 = derived.eta ** 2
    rs4 = 4.0 * derived.r * derived.s
    if eta2 >= rs4:
        s1 = 2.0 * nz * (aw2 + nw)
        s2 = 2.0 * nw * (az2 + nz)
    else:
        half_s2 = 0.5 * derived.sigma ** 2
        p_plus = 2.0 * nz * nw + 0.5 * (rs4 - eta2)
        p_minus = 2.0 * nz * nw - 0.5 * (rs4 - eta2)
        root = np.sqrt(max(0.0, (half_s2 + p_plus) * (half_s2 + p_minus)))
        s1 = 2.0 * nz * aw2 + root - half_s2
        s2 = 2.0 * nw * az2 + root - half_s2
    return float(s1), float(s2)


def fermionic_monogamy(w, z):
    """One-qubit mixednesses, all pair concurrences, the two monogamy
    residuals and the four-qubit invariants of the family state."""
    psi = fermionic_vector(w, z)
    derived = fermionic_derived(w, z)
    rho4 = proj(psi)
    dims = (2, 2, 2, 2)
    c2m = []
    for a in range(1, 5):
        marg = partial_trace(rho4, dims, [b for b in range(1, 5) if b != a])
        c2m.append(2.0 * (1.0 - float(np.real(np.trace(marg @ marg)))))
    pairs = {}
    for a in range(1, 5):
        for b in range(a + 1, 5):
            marg = partial_trace(rho4, dims, [c for c in range(1, 5) if c not in (a, b)])
            pairs[(a, b)] = wootters_concurrence(marg) ** 2
    s1, s2 = _sigma_terms(w, z, derived)
    inv = four_qubit_invariants(psi)
    return FermionicMonogamy(tuple(c2m), pairs, s1, s2,
                             inv["H"], inv["L"], inv["M"], inv["N"], inv["D"])
