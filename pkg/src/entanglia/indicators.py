"""Partial-separability indicator functions, their entanglement-
monotone variants, a numerical convex-roof extension, and the
mixed-state class decision for tripartite systems.

An indicator for a separability label vanishes on a pure state exactly
when the state is product over some partition refining a member of the
label; the convex roof of the indicator then vanishes exactly on the
convex set the label names.  The class decision evaluates one roof per
element of the nontrivial label poset and matches the vanishing
pattern against the class table.  For three qubits the polynomial set
(y, c2_a, g_a, t, tau2) replaces the entropy-based indicators: the
zero-sets agree on pure states and the polynomials are much cheaper
inside the optimizer.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fts import gamma_norms_batch, t_batch, tau2_batch
from .mixedness import CHEBYSHEV, HARTLEY, HARTLEY_RANK_TOL, Q_ONE_WINDOW, \
    RENYI, TSALLIS, VON_NEUMANN, EntropyFamily
from .partitions import class_labels, format_label, parse_label, \
    partition_from_blocks, reduce_label
from .tensor import hermitize

SUM_PRODUCT = "sum-product"
MEAN_GEOMETRIC = "mean-geometric"

EPS_CLASS = 1e-6
ROOF_RESTARTS = 32
ROOF_STEPS = 2000
ROOF_FD_WIDTH = 1e-5
ROOF_RANK_TOL = 1e-9

# entropies of trace-one spectra below this are machine noise; flooring
# them keeps roots in the geometric mean from amplifying the dust
ENTROPY_DUST = 1e-12


@dataclass(frozen=True)
class IndicatorSpec:
    """A label, a base entropy, and how block values are combined:
    plain sums over blocks and products over partitions, or the
    arithmetic/geometric means that keep the result a monotone."""
    label: tuple
    entropy: EntropyFamily = EntropyFamily()
    combine: str = SUM_PRODUCT

    def __post_init__(self):
        if self.combine not in (SUM_PRODUCT, MEAN_GEOMETRIC):
            raise ValueError("unknown combination rule %r" % (self.combine,))
        lab = self.label
        if isinstance(lab, str):
            lab = parse_label(lab)
        else:
            lab = reduce_label([partition_from_blocks(p) for p in lab])
        object.__setattr__(self, "label", lab)

    @property
    def label_str(self):
        return format_label(self.label)


_KET = "ijklmn"
_BRA = "IJKLMN"


def _marginal_spectra(vectors, dims, block):
    """Eigenvalues of the `block` marginal for each row vector."""
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    t = np.asarray(vectors, dtype=complex).reshape((-1,) + dims)
    block = sorted(block)
    ket = "".join(_KET[p - 1] for p in range(1, n + 1))
    bra = "".join(_BRA[p - 1] if p in block else _KET[p - 1]
                  for p in range(1, n + 1))
    out = "".join(_KET[p - 1] for p in block) \
        + "".join(_BRA[p - 1] for p in block)
    red = np.einsum("a" + ket + ",a" + bra + "->a" + out, t, t.conj())
    dk = int(np.prod([dims[p - 1] for p in block]))
    return np.linalg.eigvalsh(red.reshape(-1, dk, dk))


def _entropy_of_spectra(p, fam):
    """Vectorized entropy over stacked spectra (last axis)."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    # drop eigenvalue dust: q < 1 powers would otherwise blow numerical
    # zeros (~1e-16) up to visible contributions
    p = np.where(p < 1e-14, 0.0, p)
    kind, q = fam.kind, fam.q
    if kind in (RENYI, TSALLIS) and abs(q - 1.0) <= Q_ONE_WINDOW:
        kind = VON_NEUMANN
    if kind == VON_NEUMANN:
        terms = p * np.log(np.where(p > 0.0, p, 1.0))
        return -terms.sum(axis=-1)
    if kind == HARTLEY:
        return np.log(np.maximum(1, (p > HARTLEY_RANK_TOL).sum(axis=-1)))
    if kind == CHEBYSHEV:
        with np.errstate(divide="ignore"):
            return -np.log(p.max(axis=-1))
    s = (p ** q).sum(axis=-1)
    if kind == RENYI:
        with np.errstate(divide="ignore"):
            return np.log(s) / (1.0 - q)
    return (s - 1.0) / (1.0 - q)


def _validate_label(label, n):
    full = frozenset(range(1, n + 1))
    if not label:
        raise ValueError("empty label")
    for part in label:
        covered = frozenset(x for b in part for x in b)
        if covered != full:
            raise ValueError("partition %s does not cover systems 1..%d"
                             % ("|".join("".join(map(str, b)) for b in part),
                                n))


def indicator_batch(vectors, dims, spec):
    """Indicator values on rows of normalized pure-state vectors."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=complex))
    _validate_label(spec.label, len(dims))
    per_partition = []
    for part in spec.label:
        total = None
        for block in part:
            val = _entropy_of_spectra(
                _marginal_spectra(vectors, dims, block), spec.entropy)
            total = val if total is None else total + val
        if spec.combine == MEAN_GEOMETRIC:
            total = total / len(part)
        total = np.maximum(total, 0.0)
        per_partition.append(np.where(total < ENTROPY_DUST, 0.0, total))
    out = per_partition[0]
    for extra in per_partition[1:]:
        out = out * extra
    if spec.combine == MEAN_GEOMETRIC:
        out = out ** (1.0 / len(spec.label))
    return out


def pure_indicator(psi, dims, spec):
    """Sum-over-blocks, product-over-partitions indicator of a pure
    state; vanishes exactly on the states the label generates."""
    return float(indicator_batch(psi, dims, spec)[0])


def _require_concave(fam):
    if fam.kind == RENYI and fam.q > 1.0 + Q_ONE_WINDOW:
        raise ValueError(
            "Renyi entropy with q > 1 is not concave; use q in (0,1), "
            "a Tsallis entropy, or the von Neumann entropy")
    if fam.kind in (HARTLEY, CHEBYSHEV):
        raise ValueError("%s entropy is not suitable for the monotone "
                         "construction" % fam.kind)


def monotone_indicator(psi, dims, spec):
    """Mean-geometric indicator built on a concave unitary-invariant
    entropy; non-increasing on average under local operations."""
    if spec.combine != MEAN_GEOMETRIC:
        raise ValueError("monotone indicators use the mean-geometric "
                         "combination")
    _require_concave(spec.entropy)
    return pure_indicator(psi, dims, spec)


@dataclass
class RoofResult:
    """Outcome of the convex-roof minimization: the value, the ensemble
    achieving it (weights + rows of normalized vectors), the number of
    restarts run, and whether the descent stalled before the budget."""
    value: float
    weights: np.ndarray
    vectors: np.ndarray
    restarts_used: int
    converged: bool

    def ensemble_density(self):
        return (self.vectors.T * self.weights) @ self.vectors.conj()

    def as_dict(self):
        vecs = np.stack([self.vectors.real, self.vectors.imag], axis=-1)
        return {
            "value": float(self.value),
            "weights": [float(w) for w in self.weights],
            "vectors": vecs.tolist(),
            "restarts_used": int(self.restarts_used),
            "converged": bool(self.converged),
        }


def _thread_count(threads, jobs):
    if threads is None:
        env = os.environ.get("ENTANGLIA_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(int(threads), jobs))


def convex_roof(rho, f, f_batch=None, *, restarts=ROOF_RESTARTS,
                steps=ROOF_STEPS, fd_width=ROOF_FD_WIDTH,
                rank_tol=ROOF_RANK_TOL, seed=None, threads=None):
    """Minimize the ensemble average of f over decompositions of rho.

    Decompositions of size m = rank^2 are parametrized by isometries
    applied to the spectral ensemble; each restart runs a projected
    gradient descent (finite-difference gradient, QR step back onto the
    orthonormal frames) and the best restart wins.  `f` maps a
    normalized vector to a nonnegative real; `f_batch`, if given, maps
    a stack of row vectors to their values and makes the finite
    differencing dramatically cheaper.
    """
    rho = hermitize(np.asarray(rho, dtype=complex))
    if abs(float(np.trace(rho).real) - 1.0) > 1e-8:
        raise ValueError("state must have unit trace")
    if restarts < 1:
        raise ValueError("need at least one restart")
    vals, vecs = np.linalg.eigh(rho)
    keep = vals > rank_tol
    lam = vals[keep]
    r = int(lam.size)
    if r == 0:
        raise ValueError("no eigenvalue above the rank tolerance")
    d = rho.shape[0]
    base = (vecs[:, keep] * np.sqrt(lam)).T  # rows are subnormalized kets
    m = r * r

    if f_batch is None:
        def f_batch(mat):
            return np.array([f(row) for row in mat], dtype=float)

    def energy(frames):
        # frames: (..., m, r) stack with orthonormal columns
        a = frames @ base
        p = np.sum(np.abs(a) ** 2, axis=-1)
        unit = a / np.sqrt(np.where(p > 0.0, p, 1.0))[..., None]
        vals = np.asarray(f_batch(unit.reshape(-1, d)), dtype=float)
        vals = vals.reshape(p.shape)
        vals = np.where(p > 1e-300, vals, 0.0)
        return np.sum(p * vals, axis=-1)

    # moving u[k, j] by h shifts only ensemble row k (by h * base[j]),
    # so the central difference of the energy reduces to the difference
    # of that single row's weighted f value; this evaluates f on
    # 4 m r perturbed rows per step instead of on 4 m^2 r
    _fd_delta = fd_width * (np.array([1.0, 1j])[None, :, None, None]
                            * np.array([1.0, -1.0])[None, None, :, None]
                            * base[:, None, None, :])  # (r, 2, 2, d)

    def fd_gradient(u):
        a = u @ base
        pert = a[:, None, None, None, :] + _fd_delta[None]
        pp = np.sum(np.abs(pert) ** 2, axis=-1)
        unit = pert / np.sqrt(np.where(pp > 0.0, pp, 1.0))[..., None]
        fp = np.asarray(f_batch(unit.reshape(-1, d)), dtype=float)
        fp = np.where(pp > 1e-300, fp.reshape(pp.shape), 0.0)
        term = pp * fp  # (m, r, re/im, +/-)
        g = (term[..., 0] - term[..., 1]) / (2.0 * fd_width)
        g = g[:, :, 0] + 1j * g[:, :, 1]
        # drop the component normal to the orthonormal-column manifold
        ug = u.conj().T @ g
        return g - u @ (0.5 * (ug + ug.conj().T))

    def reorth(u):
        # QR with the column phases pinned so the map is continuous
        # (plain numpy QR is free to rotate columns, which would make
        # small steps land at unrelated frames); works on stacks too
        q, rr = np.linalg.qr(u)
        diag = np.diagonal(rr, axis1=-2, axis2=-1)
        mags = np.abs(diag)
        phases = np.where(mags > 0.0, diag / np.where(mags > 0.0, mags, 1.0),
                          1.0)
        return q * phases.conj()[..., None, :]

    def one_restart(ss):
        rng = np.random.default_rng(ss)
        u = reorth(rng.standard_normal((m, r))
                   + 1j * rng.standard_normal((m, r)))
        best = float(energy(u[None])[0])
        lr = 0.1
        momentum = np.zeros_like(u)
        converged = False
        trail = [best]
        for _ in range(steps):
            g = fd_gradient(u)
            if float(np.linalg.norm(g)) < 1e-10:
                converged = True
                break
            momentum = 0.85 * momentum + g
            improved = False
            while lr >= 1e-13:
                # probe four step sizes at once; batching the QR and the
                # energy is much cheaper than four separate probes
                scales = lr * np.array([1.0, 0.5, 0.25, 0.125])
                trials = reorth(u[None] - scales[:, None, None] * momentum)
                cands = energy(trials)
                hits = np.nonzero(cands < best - 1e-14)[0]
                if hits.size:
                    k = int(hits[0])
                    u, best = trials[k], float(cands[k])
                    lr = min(scales[k] * 1.3, 1.0)
                    improved = True
                    break
                lr *= 0.0625
            if not improved:
                # momentum may point uphill; retry once along the bare
                # gradient before declaring a stall
                momentum = np.zeros_like(u)
                lr = max(lr, 1e-3)
                trial = reorth(u - lr * g)
                cand = float(energy(trial[None])[0])
                if cand < best - 1e-14:
                    u, best = trial, cand
                else:
                    converged = True
                    break
            trail.append(best)
            if len(trail) > 40 and trail[-41] - best < 1e-9:
                converged = True
                break
        return best, u, converged

    seq = seed if isinstance(seed, np.random.SeedSequence) \
        else np.random.SeedSequence(seed)
    seeds = seq.spawn(restarts)
    workers = _thread_count(threads, restarts)
    if workers == 1:
        outs = [one_restart(s) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(one_restart, seeds))
    ibest = min(range(restarts), key=lambda i: outs[i][0])
    _, u, converged = outs[ibest]
    a = u @ base
    p = np.sum(np.abs(a) ** 2, axis=1)
    rows = p > 1e-14
    weights = p[rows]
    unit = a[rows] / np.sqrt(weights)[:, None]
    value = float(np.sum(weights * np.asarray(f_batch(unit), dtype=float)))
    return RoofResult(value=value, weights=weights, vectors=unit,
                      restarts_used=restarts, converged=converged)


# Column order of the tripartite class table: the bottom partition, the
# three single splits, the three two-member labels (indexed by the
# system NOT appearing alone), and the three-member label.
PS3_COLUMNS = ("1|2|3", "1|23", "2|13", "3|12",
               "2|13,3|12", "1|23,3|12", "1|23,2|13", "1|23,2|13,3|12")


def _fts_column_batches():
    def from_gamma(picks):
        def run(mat):
            return gamma_norms_batch(mat)[:, picks].sum(axis=1)
        return run

    def y_run(mat):
        return (2.0 / 3.0) * gamma_norms_batch(mat).sum(axis=1)

    return {
        "1|2|3": y_run,
        "1|23": from_gamma([1, 2]),
        "2|13": from_gamma([0, 2]),
        "3|12": from_gamma([0, 1]),
        "2|13,3|12": from_gamma([0]),
        "1|23,3|12": from_gamma([1]),
        "1|23,2|13": from_gamma([2]),
        "1|23,2|13,3|12": t_batch,
    }


def _generic_column_batches(dims, entropy):
    _require_concave(entropy)
    out = {}
    for col in PS3_COLUMNS:
        spec = IndicatorSpec(col, entropy, MEAN_GEOMETRIC)
        out[col] = (lambda mat, s=spec: indicator_batch(mat, dims, s))
    return out


@dataclass
class ClassDecision:
    """Class name ("undecided" when no row of the table matches), the
    per-label profile with raw values and vanishing verdicts, the
    threshold used, and the raw roof results."""
    name: str
    profile: dict
    eps: float
    roofs: dict


def _roof_profile(rho, batches, columns, eps, restarts, steps, seed,
                  threads):
    seq = seed if isinstance(seed, np.random.SeedSequence) \
        else np.random.SeedSequence(seed)
    children = seq.spawn(len(columns))
    roofs = {}
    for col, child in zip(columns, children):
        run = batches[col]
        roofs[col] = convex_roof(
            rho, lambda v, r=run: float(r(v[None])[0]), run,
            restarts=restarts, steps=steps, seed=child, threads=threads)
    profile = {
        col: {
            "value": roofs[col].value,
            "vanished": bool(roofs[col].value < eps),
            "converged": roofs[col].converged,
            "restarts_used": roofs[col].restarts_used,
        }
        for col in columns
    }
    return roofs, profile


def classify_ps(rho, dims=(2, 2, 2), *, entropy=EntropyFamily(),
                eps=EPS_CLASS, use_fts=None, restarts=ROOF_RESTARTS,
                steps=ROOF_STEPS, seed=0, threads=None):
    """Decide the partial-separability class of a tripartite state by
    matching roof-vanishing verdicts against the 20-row class table."""
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3:
        raise ValueError("class decision is implemented for tripartite "
                         "states")
    if use_fts is None:
        use_fts = dims == (2, 2, 2)
    if use_fts and dims != (2, 2, 2):
        raise ValueError("the polynomial indicator set needs three qubits")
    batches = _fts_column_batches() if use_fts \
        else _generic_column_batches(dims, entropy)
    roofs, profile = _roof_profile(rho, batches, PS3_COLUMNS, eps,
                                   restarts, steps, seed, threads)
    vanished = tuple(profile[col]["vanished"] for col in PS3_COLUMNS)
    canon = {col: parse_label(col) for col in PS3_COLUMNS}
    name = "undecided"
    for cell in class_labels(3):
        below = set(cell.below)
        if vanished == tuple(canon[col] in below for col in PS3_COLUMNS):
            name = cell.name
            break
    return ClassDecision(name=name, profile=profile, eps=eps, roofs=roofs)


def classify_pss(rho, *, eps=EPS_CLASS, restarts=ROOF_RESTARTS,
                 steps=ROOF_STEPS, seed=0, threads=None):
    """Refined three-qubit decision: the fully inseparable class splits
    by the roof of tau^2 into W-type (vanishing) and GHZ-type."""
    decision = classify_ps(rho, (2, 2, 2), use_fts=True, eps=eps,
                           restarts=restarts, steps=steps, seed=seed,
                           threads=threads)
    seq = np.random.SeedSequence(seed).spawn(len(PS3_COLUMNS) + 1)[-1]
    roof = convex_roof(
        rho, lambda v: float(tau2_batch(v[None])[0]), tau2_batch,
        restarts=restarts, steps=steps, seed=seq, threads=threads)
    decision.roofs["tau2"] = roof
    decision.profile["tau2"] = {
        "value": roof.value,
        "vanished": bool(roof.value < eps),
        "converged": roof.converged,
        "restarts_used": roof.restarts_used,
    }
    if decision.name == "C1":
        decision.name = "C_W" if roof.value < eps else "C_GHZ"
    return decision
