"""Dense multipartite tensor algebra.

Conventions used throughout the package:

* A pure state on subsystems of local dimensions ``dims = (d_1, ..., d_n)``
  is a complex vector of length ``prod(dims)`` in row-major order, i.e.
  subsystem 1 is the slowest index and ``psi.reshape(dims)`` places
  subsystem ``j`` on axis ``j - 1``.
* A density matrix follows the same rule on both the ket and the bra
  side, so ``rho.reshape(dims + dims)`` has ket axes ``0 .. n-1`` and
  bra axes ``n .. 2n-1``.
* Subsystems are labelled 1-based in every public signature.
"""

import numpy as np

ID2 = np.eye(2)
SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
PAULI = (SX, SY, SZ)

# antisymmetric 2x2 epsilon, equal to i*sigma_y
EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]])

HERM_TOL = 1e-12


def as_vector(psi, dims):
    """Validate and return a state vector of shape (prod(dims),)."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    d = int(np.prod(dims))
    if psi.shape[0] != d:
        raise ValueError("vector length %d does not match dims %s" % (psi.shape[0], tuple(dims)))
    return psi


def hermitize(mat, tol=HERM_TOL):
    """Return (M + M^dagger)/2 if M is hermitian up to tol, else raise.

    The tolerance is on the largest absolute entry of M - M^dagger.
    """
    mat = np.asarray(mat, dtype=complex)
    asym = np.max(np.abs(mat - mat.conj().T)) if mat.size else 0.0
    if asym > tol:
        raise ValueError("matrix is not hermitian (max asymmetry %.3e > %.1e)" % (asym, tol))
    return 0.5 * (mat + mat.conj().T)


def as_density(rho, dims, tol=HERM_TOL):
    """Validate shape and hermiticity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    d = int(np.prod(dims))
    if rho.shape != (d, d):
        raise ValueError("matrix shape %s does not match dims %s" % (rho.shape, tuple(dims)))
    return hermitize(rho, tol)


def proj(psi):
    """Rank-one projector |psi><psi| (not normalized)."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def kron_all(mats):
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def sys_axes(n, subsystems):
    """0-based (ket, bra) axis pairs of the given 1-based subsystems."""
    return [(j - 1, n + j - 1) for j in subsystems]


def partial_trace(rho, dims, traced):
    """Trace out the listed subsystems (1-based) of a density matrix.

    Returns the reduced matrix on the remaining subsystems, in their
    original order.
    """
    dims = list(dims)
    n = len(dims)
    traced = sorted(set(int(j) for j in traced))
    if traced and (traced[0] < 1 or traced[-1] > n):
        raise ValueError("subsystem labels must lie in 1..%d" % n)
    t = np.asarray(rho, dtype=complex).reshape(dims + dims)
    keep_n = n
    for j in reversed(traced):
        t = np.trace(t, axis1=j - 1, axis2=keep_n + j - 1)
        keep_n -= 1
    d_keep = int(np.prod([dims[j - 1] for j in range(1, n + 1) if j not in traced]))
    return t.reshape(d_keep, d_keep)


def partial_transpose(rho, dims, on):
    """Transpose the listed subsystems (1-based) of a density matrix."""
    dims = list(dims)
    n = len(dims)
    on = set(int(j) for j in on)
    if on and (min(on) < 1 or max(on) > n):
        raise ValueError("subsystem labels must lie in 1..%d" % n)
    t = np.asarray(rho, dtype=complex).reshape(dims + dims)
    axes = list(range(2 * n))
    for j in on:
        axes[j - 1], axes[n + j - 1] = axes[n + j - 1], axes[j - 1]
    d = int(np.prod(dims))
    return t.transpose(axes).reshape(d, d)


def permute_systems(rho, dims, sigma):
    """Rearrange the 2n tensor slots of a density matrix.

    ``sigma`` is a permutation of 1..2n; slot p of the result carries
    the index that sat in slot sigma(p) of the input.  Slots 1..n are
    ket indices, n+1..2n bra indices.  The result is reshaped into a
    matrix whose rows collect the first n output slots, so it is not
    square unless the permuted dimensions match up.
    """
    dims = list(dims)
    n = len(dims)
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(1, 2 * n + 1)):
        raise ValueError("sigma must be a permutation of 1..%d" % (2 * n))
    t = np.asarray(rho, dtype=complex).reshape(dims + dims)
    t = t.transpose([s - 1 for s in sigma])
    rows = int(np.prod(t.shape[:n]))
    return t.reshape(rows, -1)


def permute_subsystems_vector(psi, dims, perm):
    """Reorder subsystems of a state vector.

    ``perm`` is a permutation of 1..n; subsystem p of the result is
    subsystem perm(p) of the input.
    """
    dims = list(dims)
    n = len(dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("perm must be a permutation of 1..%d" % n)
    t = as_vector(psi, dims).reshape(dims)
    return t.transpose([p - 1 for p in perm]).reshape(-1)


def reshuffle(rho, dims, row_slots):
    """Matrix realignment: pick which tensor slots label the rows.

    ``row_slots`` lists (1-based, kets 1..n then bras n+1..2n) the slots
    forming the row index, in order; the remaining slots form the column
    index in their natural order.
    """
    dims = list(dims)
    n = len(dims)
    row_slots = [int(s) for s in row_slots]
    col_slots = [s for s in range(1, 2 * n + 1) if s not in row_slots]
    t = np.asarray(rho, dtype=complex).reshape(dims + dims)
    t = t.transpose([s - 1 for s in row_slots + col_slots])
    rows = int(np.prod(t.shape[:len(row_slots)])) if row_slots else 1
    return t.reshape(rows, -1)


def spin_flip(state, dims=None):
    """Multi-qubit spin flip.

    For a vector psi returns (eps ox ... ox eps) conj(psi); for a square
    matrix rho returns F conj(rho) F^dagger with the same F.  All local
    dimensions must be 2.
    """
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        d = state.shape[0]
    else:
        d = state.shape[0]
    n = int(round(np.log2(d)))
    if 2 ** n != d:
        raise ValueError("spin flip needs qubit dimensions, got size %d" % d)
    if dims is not None and any(x != 2 for x in dims):
        raise ValueError("spin flip needs qubit dimensions")
    flip = kron_all([EPS2] * n)
    if state.ndim == 1:
        return flip @ state.conj()
    return flip @ state.conj() @ flip.conj().T


def schmidt_coefficients(psi, dims, cut):
    """Schmidt coefficients (descending) across the bipartition cut|rest.

    ``cut`` is an iterable of 1-based subsystem labels.
    """
    s, _, _ = schmidt_decompose(psi, dims, cut)
    return s


def schmidt_decompose(psi, dims, cut):
    """Singular value decomposition across a bipartition.

    Returns (coeffs, left, right): psi = sum_i coeffs[i] left[:, i] ox right[i, :]
    with coeffs sorted descending.
    """
    dims = list(dims)
    n = len(dims)
    cut = sorted(set(int(j) for j in cut))
    rest = [j for j in range(1, n + 1) if j not in cut]
    if not cut or not rest:
        raise ValueError("cut must be a proper nonempty subset of subsystems")
    t = as_vector(psi, dims).reshape(dims)
    t = t.transpose([j - 1 for j in cut + rest])
    da = int(np.prod([dims[j - 1] for j in cut]))
    mat = t.reshape(da, -1)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    return s, u, vh


def trace_norm(mat):
    return float(np.sum(np.linalg.svd(np.asarray(mat, dtype=complex), compute_uv=False)))


def herm_spectrum(mat, tol=HERM_TOL):
    """Eigenvalues of a hermitian matrix, descending."""
    mat = hermitize(mat, tol)
    return np.linalg.eigvalsh(mat)[::-1]


def clip_probabilities(vals, tol=1e-12):
    """Clip a near-probability vector into [0, 1], zeroing tiny negatives."""
    vals = np.asarray(vals, dtype=float)
    if np.any(vals < -1e-9):
        raise ValueError("spectrum has a significantly negative entry: %.3e" % float(vals.min()))
    return np.clip(vals, 0.0, 1.0)


def purity(rho):
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def embed(op, dims, on):
    """Embed an operator acting on subsystems `on` (1-based, ascending)
    into the full space, identity elsewhere.

    ``op`` acts on the tensor product of the listed subsystems in their
    ascending order.
    """
    dims = list(dims)
    n = len(dims)
    on = sorted(set(int(j) for j in on))
    rest = [j for j in range(1, n + 1) if j not in on]
    d_on = int(np.prod([dims[j - 1] for j in on]))
    d_rest = int(np.prod([dims[j - 1] for j in rest]))
    op = np.asarray(op, dtype=complex)
    if op.shape != (d_on, d_on):
        raise ValueError("operator shape %s does not match subsystems %s" % (op.shape, on))
    big = np.kron(op, np.eye(d_rest)).reshape(
        [dims[j - 1] for j in on + rest] * 2)
    # permute back to natural subsystem order on both ket and bra side
    order = on + rest
    inv = [order.index(j) for j in range(1, n + 1)]
    big = big.transpose(inv + [n + p for p in inv])
    d = int(np.prod(dims))
    return big.reshape(d, d)
