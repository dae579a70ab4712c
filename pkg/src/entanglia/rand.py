"""Random states and unitaries for tests and roof seeding."""

import numpy as np

from .tensor import kron_all, proj


def default_rng(seed=None):
    return np.random.default_rng(seed)


def random_vector(dims, rng, normalize=True):
    """Haar-random pure state vector on prod(dims) levels."""
    d = int(np.prod(dims))
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    if normalize:
        v /= np.linalg.norm(v)
    return v


def random_density(dims, rng, rank=None):
    """Random density matrix from a Wishart draw of the given rank."""
    d = int(np.prod(dims))
    if rank is None:
        rank = d
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.real(np.trace(rho))


def random_unitary(d, rng):
    """Haar-random unitary via QR with phase-fixed diagonal."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def random_local_unitary(dims, rng):
    return kron_all([random_unitary(d, rng) for d in dims])


def random_product_vector(dims, rng):
    return kron_all([random_vector((d,), rng).reshape(d, 1) for d in dims]).reshape(-1)


def random_separable_density(dims, rng, terms=None):
    """Convex mix of random product projectors."""
    d = int(np.prod(dims))
    if terms is None:
        terms = 2 * d
    w = rng.dirichlet(np.ones(terms))
    rho = np.zeros((d, d), dtype=complex)
    for p in w:
        rho += p * proj(random_product_vector(dims, rng))
    return rho
