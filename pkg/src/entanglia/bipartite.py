"""Necessary separability criteria for a chosen bipartition.

Every operation takes the full density matrix, its local dimensions and
the 1-based subsystem set forming one side of the cut.  Margins are raw,
so callers can re-threshold; holds uses the package-wide -1e-9.
"""

import numpy as np

from . import mixedness as mx
from .tensor import (embed, herm_spectrum, partial_trace, partial_transpose,
                     reshuffle, trace_norm)
from .verdict import make_verdict


def _sides(dims, cut):
    n = len(dims)
    cut = sorted(set(int(j) for j in cut))
    rest = [j for j in range(1, n + 1) if j not in cut]
    if not cut or not rest:
        raise ValueError("cut must be a proper nonempty subset of 1..%d" % n)
    return cut, rest


def _cut_name(cut, rest):
    return "%s|%s" % ("".join(map(str, cut)), "".join(map(str, rest)))


def ppt_criterion(rho, dims, cut):
    """Positive partial transpose test; returns (verdict, negativity)."""
    cut, rest = _sides(dims, cut)
    spec = herm_spectrum(partial_transpose(rho, dims, cut))
    neg = float(np.sum(np.abs(spec)) - 1.0)  # trace norm minus one
    verdict = make_verdict("ppt[%s]" % _cut_name(cut, rest), (float(spec[-1]),))
    return verdict, neg


def negativity(rho, dims, cut):
    """Trace norm of the partial transpose minus one (for trace
    normalized input)."""
    cut, _ = _sides(dims, cut)
    return float(trace_norm(partial_transpose(rho, dims, cut)) - 1.0)


def reduction_criterion(rho, dims, cut):
    """rho_A ox I - rho >= 0 and I ox rho_B - rho >= 0."""
    cut, rest = _sides(dims, cut)
    rho = np.asarray(rho, dtype=complex)
    margins = []
    for keep, traced in ((cut, rest), (rest, cut)):
        red = partial_trace(rho, dims, traced)
        big = embed(red, dims, keep)
        margins.append(float(herm_spectrum(big - rho)[-1]))
    return make_verdict("reduction[%s]" % _cut_name(cut, rest), margins)


def reshuffling_criterion(rho, dims, cut):
    """Realignment (CCNR): trace norm of the reshuffled matrix <= 1."""
    cut, rest = _sides(dims, cut)
    n = len(dims)
    row_slots = cut + [n + j for j in cut]
    r = reshuffle(rho, dims, row_slots)
    return make_verdict("reshuffling[%s]" % _cut_name(cut, rest),
                        (1.0 - trace_norm(r),))


def majorization_criterion(rho, dims, cut):
    """Spectra test: the global state is more mixed than either marginal."""
    cut, rest = _sides(dims, cut)
    p = mx.spectrum_probabilities(rho)
    margins = []
    for traced in (rest, cut):
        q = mx.spectrum_probabilities(partial_trace(rho, dims, traced))
        margins.extend(mx.majorization_margins(p, q))
    return make_verdict("majorization[%s]" % _cut_name(cut, rest), margins)


def entropy_criterion(rho, dims, cut, fam=None):
    """S_q(rho) >= S_q(marginal) for both marginals."""
    if fam is None:
        fam = mx.EntropyFamily()
    cut, rest = _sides(dims, cut)
    s = mx.entropy(rho, fam)
    margins = []
    for traced in (rest, cut):
        margins.append(s - mx.entropy(partial_trace(rho, dims, traced), fam))
    qtag = fam.kind if fam.kind not in (mx.RENYI, mx.TSALLIS) else \
        "%s(q=%g)" % (fam.kind, fam.q)
    return make_verdict("entropy[%s,%s]" % (_cut_name(cut, rest), qtag), margins)


def schmidt_rank(psi, dims, cut, tol=1e-9):
    from .tensor import schmidt_decompose
    s, _, _ = schmidt_decompose(psi, dims, cut)
    return int(np.sum(s > tol))


def ppt_conclusive(dims, cut):
    """True when positivity of the partial transpose is also sufficient
    for separability of this cut (product of side dimensions <= 6)."""
    cut, rest = _sides(dims, cut)
    da = int(np.prod([dims[j - 1] for j in cut]))
    db = int(np.prod([dims[j - 1] for j in rest]))
    return da * db <= 6
