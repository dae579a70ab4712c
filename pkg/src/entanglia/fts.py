"""Three-qubit covariants and the polynomial invariants built from
them: the three pair covariants gamma_a, the rank-3 covariant T, the
quartic scalar q, the derived real invariants (y, c2, g, t, tau2) and
their expression through reduced-density-matrix data.

The real invariants separate the pure-state orbit types: products have
y = 0, single-pair splits have exactly one nonzero g, states with
three-tangle have tau2 > 0, and the remaining genuinely tripartite
states have t > 0 with tau2 = 0.  Note that g_a and t, unlike y, c2_a
and tau2, do not decrease on average under local operations, so they
serve as indicators only, not as entanglement monotones.
"""

from dataclasses import dataclass

import numpy as np

from .tensor import EPS2, partial_trace, partial_transpose, proj, \
    spin_flip
from .twoqubit import concave_concurrence, wootters_concurrence

DIMS3 = (2, 2, 2)


def _as_three_qubit(psi):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 8:
        raise ValueError("expected a three-qubit state vector")
    return psi.reshape(2, 2, 2)


@dataclass(frozen=True)
class FtsCovariants:
    """gamma1..gamma3 are symmetric 2x2 arrays, T is the flattened
    rank-3 covariant (length 8), T_forms holds its three equivalent
    contraction forms, q is the quartic scalar."""
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray
    T: np.ndarray
    T_forms: tuple
    q: complex

    @property
    def gammas(self):
        return (self.gamma1, self.gamma2, self.gamma3)


def fts_covariants(psi):
    """Pair covariants, the trilinear tensor (in its three equivalent
    contraction forms) and the quartic scalar."""
    t = _as_three_qubit(psi)
    e = EPS2
    g1 = np.einsum("jJ,kK,ijk,IJK->iI", e, e, t, t)
    g2 = np.einsum("kK,iI,ijk,IJK->jJ", e, e, t, t)
    g3 = np.einsum("iI,jJ,ijk,IJK->kK", e, e, t, t)
    t1 = -np.einsum("lL,mM,nN,imn,lMN,Ljk->ijk", e, e, e, t, t, t)
    t2 = -np.einsum("mM,nN,lL,ljn,LmN,iMk->ijk", e, e, e, t, t, t)
    t3 = -np.einsum("nN,lL,mM,lmk,LMn,ijN->ijk", e, e, e, t, t, t)
    q = np.einsum("iI,jJ,kK,lL,mM,nN,ikl,jKL,Imn,JMN->",
                  e, e, e, e, e, e, t, t, t, t)
    forms = tuple(x.reshape(-1) for x in (t1, t2, t3))
    return FtsCovariants(gamma1=g1, gamma2=g2, gamma3=g3,
                         T=forms[0], T_forms=forms, q=complex(q))


@dataclass(frozen=True)
class FtsInvariants:
    n: float
    y: float
    c2: tuple
    g: tuple
    t: float
    tau2: float


def fts_invariants(psi):
    """The real invariants (n, y, c2_a, g_a, t, tau2) of a three-qubit
    vector, evaluated through the covariants."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    cov = fts_covariants(psi)
    g = tuple(float(np.sum(np.abs(ga) ** 2)) for ga in cov.gammas)
    c2 = (g[1] + g[2], g[0] + g[2], g[0] + g[1])
    return FtsInvariants(
        n=float(np.vdot(psi, psi).real),
        y=(2.0 / 3.0) * sum(g),
        c2=c2,
        g=g,
        t=4.0 * float(np.sum(np.abs(cov.T) ** 2)),
        tau2=4.0 * abs(cov.q) ** 2,
    )


def fts_invariants_from_projector(pi):
    """The same invariants computed from the pure-state projector via
    partial traces, partial transposes and spin flips only; serves as
    an independent route to fts_invariants."""
    pi = np.asarray(pi, dtype=complex)
    if pi.shape != (8, 8):
        raise ValueError("expected an 8x8 projector")
    g = []
    for a in (1, 2, 3):
        red = partial_trace(pi, DIMS3, [a])
        g.append(float(np.trace(red @ spin_flip(red)).real))
    g = tuple(g)
    c2 = (g[1] + g[2], g[0] + g[2], g[0] + g[1])
    pi1 = partial_trace(pi, DIMS3, [2, 3])
    pi23 = partial_trace(pi, DIMS3, [1])
    t_val = 4.0 * float(np.trace(np.kron(pi1, pi23) @ spin_flip(pi)).real)
    pt = partial_transpose(pi, DIMS3, [1])
    m = pt @ spin_flip(pt)
    tau2 = 4.0 * float(np.trace(m @ m).real)
    return FtsInvariants(
        n=float(np.trace(pi).real),
        y=(2.0 / 3.0) * sum(g),
        c2=c2,
        g=g,
        t=t_val,
        tau2=tau2,
    )


def canonical_invariants(psi):
    """The standard six-invariant description (norm, three local
    purities, the cubic reduced-density invariant, the quartic modulus)
    together with consistency residuals: the spread over the three
    equivalent forms of I4 and the residual of the degree-6 identity
    tying the T tensor norm to the reduced-density data."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    pi = proj(psi)
    i0 = float(np.trace(pi).real)
    purities = []
    for a in (1, 2, 3):
        others = [x for x in (1, 2, 3) if x != a]
        red = partial_trace(pi, DIMS3, others)
        purities.append(float(np.trace(red @ red).real))
    i1, i2, i3 = purities

    def tr3(mat):
        return float(np.trace(mat @ mat @ mat).real)

    i4_forms = []
    for a in (1, 2, 3):
        b, c = [x for x in (1, 2, 3) if x != a]
        pb = partial_trace(pi, DIMS3, [x for x in (1, 2, 3) if x != b])
        pc = partial_trace(pi, DIMS3, [x for x in (1, 2, 3) if x != c])
        pbc = partial_trace(pi, DIMS3, [a])
        i4_forms.append(
            3.0 * float(np.trace(np.kron(pb, pc) @ pbc).real)
            - tr3(pb) - tr3(pc))
    i4 = i4_forms[0]
    kempe_spread = max(i4_forms) - min(i4_forms)

    pt = partial_transpose(pi, DIMS3, [1])
    m = pt @ spin_flip(pt)
    i5 = float(np.trace(m @ m).real) / 4.0

    cov = fts_covariants(psi)
    t_norm2 = float(np.sum(np.abs(cov.T) ** 2))
    t_residual = abs(6.0 * t_norm2
                     - (4.0 * i4 + 5.0 * i0 ** 3
                        - 3.0 * i0 * (i1 + i2 + i3)))
    return {
        "I0": i0, "I1": i1, "I2": i2, "I3": i3, "I4": i4, "I5": i5,
        "kempe_spread": float(kempe_spread),
        "t_identity_residual": float(t_residual),
    }


def _as_batch(psis):
    arr = np.asarray(psis, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.shape[-1] != 8:
        raise ValueError("expected rows of length 8")
    return arr.reshape(-1, 2, 2, 2)


def gamma_norms_batch(psis):
    """Squared norms of the three pair covariants, row per state."""
    t = _as_batch(psis)
    e = EPS2
    g1 = np.einsum("jJ,kK,bijk,bIJK->biI", e, e, t, t)
    g2 = np.einsum("kK,iI,bijk,bIJK->bjJ", e, e, t, t)
    g3 = np.einsum("iI,jJ,bijk,bIJK->bkK", e, e, t, t)
    return np.stack(
        [np.sum(np.abs(g) ** 2, axis=(1, 2)) for g in (g1, g2, g3)], axis=1)


def t_batch(psis):
    """The invariant t = 4 |T|^2, row per state."""
    t = _as_batch(psis)
    e = EPS2
    tt = -np.einsum("lL,mM,nN,bimn,blMN,bLjk->bijk", e, e, e, t, t, t)
    return 4.0 * np.sum(np.abs(tt) ** 2, axis=(1, 2, 3))


def tau2_batch(psis):
    """The invariant tau^2 = 4 |q|^2, row per state."""
    t = _as_batch(psis)
    e = EPS2
    q = np.einsum("iI,jJ,kK,lL,mM,nN,bikl,bjKL,bImn,bJMN->b",
                  e, e, e, e, e, e, t, t, t, t)
    return 4.0 * np.abs(q) ** 2


PURE_CLASSES = ("Null", "1|2|3", "1|23", "2|13", "3|12", "W", "GHZ")


def slocc_class_pure(psi, tol=1e-6):
    """Orbit type of a pure three-qubit state from the vanishing
    pattern of the invariants, evaluated on the normalized vector."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 8:
        raise ValueError("expected a three-qubit state vector")
    nrm = float(np.linalg.norm(psi))
    if nrm < tol:
        return "Null"
    inv = fts_invariants(psi / nrm)
    if inv.tau2 > tol:
        return "GHZ"
    if inv.t > tol:
        if all(ga > tol for ga in inv.g):
            return "W"
        return "undecided"
    nonzero = [a for a in range(3) if inv.g[a] > tol]
    if not nonzero:
        return "1|2|3"
    if len(nonzero) == 1:
        return ("1|23", "2|13", "3|12")[nonzero[0]]
    return "undecided"


def reduced_concurrence_fidelity(psi):
    """Wootters concurrence squared and flip-fidelity squared of each
    two-qubit marginal, plus the per-qubit residual of the pairwise
    decomposition c2_a = conc2(ab) + conc2(ac) + tau."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    pi = proj(psi)
    inv = fts_invariants(psi)
    tau = float(np.sqrt(max(inv.tau2, 0.0)))
    pair_names = {1: "23", 2: "13", 3: "12"}
    pairs = {}
    conc2 = {}
    for a in (1, 2, 3):
        red = partial_trace(pi, DIMS3, [a])
        w2 = float(wootters_concurrence(red)) ** 2
        f2 = float(concave_concurrence(red)) ** 2
        conc2[a] = w2
        pairs[pair_names[a]] = {"wootters2": w2, "fidelity2": f2}
    residual = []
    for a in (1, 2, 3):
        b, c = [x for x in (1, 2, 3) if x != a]
        # the marginal of qubits (a,b) is obtained by tracing qubit c
        residual.append(inv.c2[a - 1] - conc2[c] - conc2[b] - tau)
    return {"pairs": pairs, "ckw_residual": tuple(residual), "tau": tau}
