"""Multipartite separability criteria for qubit registers.

Three families are collected here:

* a recursively built battery of collective operators whose expectation
  values bound coherences of k-separable states (three measurement
  settings, obtained by cyclically relabelling the Pauli triple),
* matrix-element inequalities on the computational-basis entries,
  together with their substitution variants, and a two-copy formulation
  evaluated with explicit swap operators,
* simple projector witnesses for the two genuinely tripartite classes
  and trace-norm conditions under index permutations of the density
  tensor.

Everything takes a plain density matrix; the criteria are necessary
conditions, so a negative margin certifies entanglement of the
corresponding kind while a positive one is inconclusive on its own.
"""

from itertools import combinations

import numpy as np

from .tensor import ID2, PAULI, kron_all, permute_systems, trace_norm
from .verdict import make_verdict

_SETTINGS = {1: (0, 1, 2), 2: (1, 2, 0), 3: (2, 0, 1)}


def su_operators(setting=1, n=3):
    """Collective X/Y/Z/I operator batteries for n qubits.

    Returns a dict with keys "X", "Y", "Z", "I", each a list of 2^(n-1)
    Hermitian operators on the full register, built by the two-step
    halving recursion from the single-qubit Paulis of the chosen
    setting (1, 2 or 3).
    """
    if setting not in _SETTINGS:
        raise ValueError("setting must be 1, 2 or 3")
    if n < 1:
        raise ValueError("need at least one qubit")
    ia, ib, ic = _SETTINGS[setting]
    ops = {"X": [PAULI[ia]], "Y": [PAULI[ib]], "Z": [PAULI[ic]], "I": [ID2]}
    sx, sy, sz = PAULI[ia], PAULI[ib], PAULI[ic]
    for _ in range(n - 1):
        nxt = {"X": [], "Y": [], "Z": [], "I": []}
        for x0, y0, z0, i0 in zip(ops["X"], ops["Y"], ops["Z"], ops["I"]):
            nxt["X"].append(0.5 * (np.kron(sx, x0) - np.kron(sy, y0)))
            nxt["X"].append(0.5 * (np.kron(sx, x0) + np.kron(sy, y0)))
            nxt["Y"].append(0.5 * (np.kron(sy, x0) + np.kron(sx, y0)))
            nxt["Y"].append(0.5 * (np.kron(sy, x0) - np.kron(sx, y0)))
            nxt["Z"].append(0.5 * (np.kron(sz, i0) + np.kron(ID2, z0)))
            nxt["Z"].append(0.5 * (np.kron(sz, i0) - np.kron(ID2, z0)))
            nxt["I"].append(0.5 * (np.kron(ID2, i0) + np.kron(sz, z0)))
            nxt["I"].append(0.5 * (np.kron(ID2, i0) - np.kron(sz, z0)))
        ops = nxt
    return ops


def su_expectations(rho, setting=1, n=3):
    ops = su_operators(setting, n)
    out = {}
    for key, lst in ops.items():
        out[key] = np.array([float(np.real(np.trace(op @ rho))) for op in lst])
    return out


def su_criteria(rho, setting=1, n=3):
    """Three verdicts: the biseparability battery, the intersection of the
    one-vs-rest separable sets, and full separability."""
    ex = su_expectations(rho, setting, n)
    coh = ex["X"] ** 2 + ex["Y"] ** 2
    gap = ex["I"] ** 2 - ex["Z"] ** 2
    margins_2sep = []
    for x in range(len(coh)):
        rhs = sum(np.sqrt(max(0.0, gap[y])) for y in range(len(gap)) if y != x)
        margins_2sep.append(rhs - np.sqrt(coh[x]))
    v2 = make_verdict("su-2sep[setting %d]" % setting, tuple(margins_2sep))
    m_gap = float(np.min(gap) - np.max(coh))
    cap_int = 4.0 ** (-(n - 2))
    v_int = make_verdict("su-onevsrest[setting %d]" % setting,
                         (m_gap, cap_int - float(np.min(gap))))
    cap_full = 4.0 ** (-(n - 1))
    v_full = make_verdict("su-fullsep[setting %d]" % setting,
                          (m_gap, cap_full - float(np.min(gap))))
    return v2, v_int, v_full


def su_pair_margins(rho, setting=1, n=3):
    """Pairwise margins m[x, y] = (<I_y>^2 - <Z_y>^2) - (<X_x>^2 + <Y_x>^2)
    for y != x, the building blocks of the intersection criterion."""
    ex = su_expectations(rho, setting, n)
    coh = ex["X"] ** 2 + ex["Y"] ** 2
    gap = ex["I"] ** 2 - ex["Z"] ** 2
    k = len(coh)
    out = np.full((k, k), np.nan)
    for x in range(k):
        for y in range(k):
            if y != x:
                out[x, y] = gap[y] - coh[x]
    return out


# ----------------------------------------------------------------------
# matrix-element inequalities on three qubits


def _d(rho, a):
    return float(np.real(rho[a, a]))


def gs2_criteria(rho):
    """The two biseparability matrix-element inequalities."""
    rho = np.asarray(rho, dtype=complex)
    lhs_a = abs(rho[0, 7])
    rhs_a = (np.sqrt(_d(rho, 6) * _d(rho, 1)) + np.sqrt(_d(rho, 5) * _d(rho, 2))
             + np.sqrt(_d(rho, 3) * _d(rho, 4)))
    va = make_verdict("gs-2sep-ghz", (float(rhs_a - lhs_a),))
    lhs_b = abs(rho[1, 2]) + abs(rho[1, 4]) + abs(rho[2, 4])
    rhs_b = (np.sqrt(_d(rho, 0) * _d(rho, 3)) + np.sqrt(_d(rho, 0) * _d(rho, 5))
             + np.sqrt(_d(rho, 0) * _d(rho, 6))
             + 0.5 * (_d(rho, 1) + _d(rho, 2) + _d(rho, 4)))
    vb = make_verdict("gs-2sep-w", (float(rhs_b - lhs_b),))
    return va, vb


# diagonal index multisets of the substitution variants for the
# antipodal coherence |rho[0,7]|; the second sixth-root entry is the
# original inequality
GS3_SIXTH = (
    (0, 0, 0, 7, 7, 7),
    (1, 2, 3, 4, 5, 6),
    (0, 1, 1, 6, 6, 7),
    (0, 0, 1, 6, 7, 7),
    (0, 1, 2, 4, 7, 7),
    (0, 0, 3, 5, 6, 7),
    (1, 1, 2, 4, 6, 7),
    (0, 1, 3, 5, 6, 6),
)
GS3_FOURTH = (
    (0, 0, 7, 7),
    (2, 3, 4, 5),
    (0, 1, 6, 7),
    (1, 2, 4, 7),
    (0, 3, 5, 6),
)


def gs3_criteria(rho):
    """Full-separability inequalities: the geometric-mean bounds on the
    antipodal coherence (all sixth- and fourth-root variants) and the
    W-type inequality without its diagonal term."""
    rho = np.asarray(rho, dtype=complex)
    lhs = abs(rho[0, 7])
    verdicts = []
    for i, idx in enumerate(GS3_SIXTH):
        rhs = np.prod([_d(rho, a) for a in idx]) ** (1.0 / 6.0)
        verdicts.append(make_verdict("gs-fullsep-ghz6[%d]" % i,
                                     (float(rhs - lhs),)))
    for i, idx in enumerate(GS3_FOURTH):
        rhs = np.prod([_d(rho, a) for a in idx]) ** (1.0 / 4.0)
        verdicts.append(make_verdict("gs-fullsep-ghz4[%d]" % i,
                                     (float(rhs - lhs),)))
    lhs_w = abs(rho[1, 2]) + abs(rho[1, 4]) + abs(rho[2, 4])
    rhs_w = (np.sqrt(_d(rho, 0) * _d(rho, 3)) + np.sqrt(_d(rho, 0) * _d(rho, 5))
             + np.sqrt(_d(rho, 0) * _d(rho, 6)))
    verdicts.append(make_verdict("gs-fullsep-w", (float(rhs_w - lhs_w),)))
    return tuple(verdicts)


def gs_matrix_criteria(rho):
    """All matrix-element verdicts, biseparability first."""
    return gs2_criteria(rho) + gs3_criteria(rho)


# ----------------------------------------------------------------------
# two-copy criterion with explicit swaps


def phi_ghz_like(n=3):
    """|0..0 1..1> on 2n qubits."""
    v = np.zeros(2 ** (2 * n))
    v[2 ** n - 1] = 1.0
    return v


def phi_w_like(n=3):
    """Hadamard rotation of the GHZ-type test vector on every qubit."""
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    return kron_all([h] * (2 * n)) @ phi_ghz_like(n)


def _swap_copies(vec, subsystems, n):
    """Swap the listed subsystems between the two n-qubit copies."""
    sigma = list(range(1, 2 * n + 1))
    for a in subsystems:
        sigma[a - 1], sigma[n + a - 1] = sigma[n + a - 1], sigma[a - 1]
    from .tensor import permute_subsystems_vector
    return permute_subsystems_vector(vec, (2,) * (2 * n), sigma)


def _all_k_splits(n, k):
    """All partitions of {1..n} into exactly k nonempty blocks."""
    items = list(range(1, n + 1))

    def rec(rest, blocks):
        if not rest:
            if len(blocks) == k:
                yield [list(b) for b in blocks]
            return
        if len(blocks) + len(rest) < k:
            return
        head, tail = rest[0], rest[1:]
        for i in range(len(blocks)):
            blocks[i].append(head)
            yield from rec(tail, blocks)
            blocks[i].pop()
        if len(blocks) < k:
            blocks.append([head])
            yield from rec(tail, blocks)
            blocks.pop()

    yield from rec(items, [])


def gabriel_values(rho, splits, phi, n=3):
    """(lhs, per-split rhs terms) of the two-copy inequality.

    lhs is sqrt|<phi| (rho x rho) P_tot |phi>|; each rhs term is the
    2k-th root of the product over blocks L of
    <phi| P_L (rho x rho) P_L^dag |phi>.
    """
    rho = np.asarray(rho, dtype=complex)
    rr = np.kron(rho, rho)
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    full = _swap_copies(phi, list(range(1, n + 1)), n)
    lhs = float(np.sqrt(abs(np.vdot(phi, rr @ full))))
    terms = []
    for split in splits:
        k = len(split)
        prod = 1.0
        for block in split:
            swapped = _swap_copies(phi, list(block), n)
            prod *= float(np.real(np.vdot(swapped, rr @ swapped)))
        terms.append(max(0.0, prod) ** (1.0 / (2.0 * k)))
    return lhs, terms


def gabriel_criterion(rho, k, phi, n=3):
    """k-separability test: sum of the split terms must bound lhs."""
    splits = list(_all_k_splits(n, k))
    lhs, terms = gabriel_values(rho, splits, phi, n)
    return make_verdict("two-copy-%dsep" % k, (float(sum(terms) - lhs),))


# ----------------------------------------------------------------------
# index-permutation trace-norm conditions


# inequivalent slot permutations for three qubits, given as the images
# of (1..6); the first three are the one-sided transposes, the last
# three reorder a ket slot with another system's bra slot
PERMUTATION_SIGMAS = {
    "t1": (4, 2, 3, 1, 5, 6),
    "t2": (1, 5, 3, 4, 2, 6),
    "t3": (1, 2, 6, 4, 5, 3),
    "r23": (1, 2, 5, 4, 3, 6),
    "r13": (1, 2, 4, 3, 5, 6),
    "r12": (1, 4, 3, 2, 5, 6),
}


def permutation_criterion(rho, n=3):
    """Trace norms of the six inequivalent index permutations."""
    rho = np.asarray(rho, dtype=complex)
    dims = (2,) * n
    verdicts = []
    for name, sigma in PERMUTATION_SIGMAS.items():
        mat = permute_systems(rho, dims, sigma)
        verdicts.append(make_verdict("perm[%s]" % name,
                                     (1.0 - float(trace_norm(mat)),)))
    return tuple(verdicts)


# ----------------------------------------------------------------------
# projector witnesses


def witness_criteria(rho, ghz=None, w=None):
    """Traces against the class witnesses (3/4 - GHZ), (2/3 - W) and
    (1/2 - GHZ); the first certifies the outer class, the latter two
    certify genuine tripartite entanglement when violated."""
    from .ghzw import GHZ3, W3
    from .tensor import proj
    rho = np.asarray(rho, dtype=complex)
    p_ghz = proj(GHZ3 if ghz is None else ghz)
    p_w = proj(W3 if w is None else w)
    t_ghz = float(np.real(np.trace((0.75 * np.eye(8) - p_ghz) @ rho)))
    t_w1 = float(np.real(np.trace((2.0 / 3.0 * np.eye(8) - p_w) @ rho)))
    t_w2 = float(np.real(np.trace((0.5 * np.eye(8) - p_ghz) @ rho)))
    return (make_verdict("witness-ghz-class", (t_ghz,)),
            make_verdict("witness-2sep-w", (t_w1,)),
            make_verdict("witness-2sep-ghz", (t_w2,)))
