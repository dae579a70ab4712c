"""Local-unitary invariant polynomials of grade 1, 2 and 3 (degree 2,
4 and 6) for pure and mixed states of any number of subsystems.

A grade-m invariant is labelled by a tuple of permutations from S_m,
one per subsystem (pure-state labels omit the last subsystem, whose
entry is always the identity).  Labels related by simultaneous
conjugation give the same polynomial, so each orbit is represented by
the canonical element produced by s3_labels.

The matrix-operation formulas evaluated here cover grades up to 3;
the raw index contraction itself is also exposed (naive_contraction)
for small systems and grades up to 4, mainly for cross-checking.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .tensor import embed, partial_trace, partial_transpose, proj

S3_NAMES = ("e", "s", "s2", "t", "ts", "ts2")

# image tuples on {0,1,2}: s is the 3-cycle, t swaps the first two
S3_PERMS = {
    "e": (0, 1, 2),
    "s": (1, 2, 0),
    "s2": (2, 0, 1),
    "t": (1, 0, 2),
    "ts": (0, 2, 1),
    "ts2": (2, 1, 0),
}

S3_CLASS = {"e": "e", "s": "s", "s2": "s", "t": "t", "ts": "t", "ts2": "t"}

# beta gamma beta^{-1}, rows beta, columns gamma
S3_CONJ = {
    "e": {"e": "e", "s": "s", "s2": "s2", "t": "t", "ts": "ts",
          "ts2": "ts2"},
    "s": {"e": "e", "s": "s", "s2": "s2", "t": "ts", "ts": "ts2",
          "ts2": "t"},
    "s2": {"e": "e", "s": "s", "s2": "s2", "t": "ts2", "ts": "t",
           "ts2": "ts"},
    "t": {"e": "e", "s": "s2", "s2": "s", "t": "t", "ts": "ts2",
          "ts2": "ts"},
    "ts": {"e": "e", "s": "s2", "s2": "s", "t": "ts2", "ts": "ts",
           "ts2": "t"},
    "ts2": {"e": "e", "s": "s2", "s2": "s", "t": "ts", "ts": "t",
            "ts2": "ts2"},
}

_PERM_TO_NAME = {v: k for k, v in S3_PERMS.items()}


def s3_compose(a, b):
    """Group product ab (apply b first)."""
    pa, pb = S3_PERMS[a], S3_PERMS[b]
    return _PERM_TO_NAME[tuple(pa[pb[x]] for x in range(3))]


def s3_inverse(a):
    pa = S3_PERMS[a]
    inv = [0, 0, 0]
    for x in range(3):
        inv[pa[x]] = x
    return _PERM_TO_NAME[tuple(inv)]


def s3_conjugate(beta, gamma):
    return S3_CONJ[beta][gamma]


def _is_canonical(names):
    sp = [i for i, x in enumerate(names) if S3_CLASS[x] == "s"]
    tp = [i for i, x in enumerate(names) if S3_CLASS[x] == "t"]
    if sp:
        if names[sp[0]] != "s":
            return False
        if tp and names[tp[0]] != "t":
            return False
        return True
    if tp:
        if names[tp[0]] != "t":
            return False
        seen_ts = False
        for i in tp[1:]:
            x = names[i]
            if not seen_ts and x == "ts2":
                return False
            if x == "ts":
                seen_ts = True
        return True
    return True


def canonical_s3_tuple(names):
    """The representative of the simultaneous-conjugation orbit."""
    candidates = {tuple(S3_CONJ[beta][x] for x in names)
                  for beta in S3_NAMES}
    hits = [c for c in candidates if _is_canonical(c)]
    if len(hits) != 1:
        raise RuntimeError("orbit of %r has %d canonical members"
                           % (names, len(hits)))
    return hits[0]


def s3_labels(r):
    """Canonical representatives of S3^r under simultaneous conjugation.

    Positions are first assigned conjugacy classes in all ways; e-class
    positions stay e; the leading s-class position is pinned to s with
    the rest free over {s, s2}; the leading t-class position is pinned
    to t, the rest free over {t, ts, ts2} when an s-class position
    exists, otherwise restricted to {t, ts} until the first ts occurs.
    """
    if not 1 <= r <= 6:
        raise ValueError("supported for 1 <= r <= 6")
    labels = []
    for classes in product("est", repeat=r):
        sp = [i for i, c in enumerate(classes) if c == "s"]
        tp = [i for i, c in enumerate(classes) if c == "t"]
        base = ["e"] * r

        def fill_t(partial, rest, free):
            if not rest:
                yield tuple(partial)
                return
            i, tail = rest[0], rest[1:]
            choices = ("t", "ts", "ts2") if free else ("t", "ts")
            for x in choices:
                partial[i] = x
                yield from fill_t(partial, tail, free or x == "ts")

        if sp:
            base[sp[0]] = "s"
            if tp:
                base[tp[0]] = "t"
            s_free = sp[1:]
            t_free = tp[1:]
            for s_fill in product(("s", "s2"), repeat=len(s_free)):
                for i, x in zip(s_free, s_fill):
                    base[i] = x
                for t_fill in product(("t", "ts", "ts2"),
                                      repeat=len(t_free)):
                    for i, x in zip(t_free, t_fill):
                        base[i] = x
                    labels.append(tuple(base))
        elif tp:
            base[tp[0]] = "t"
            labels.extend(fill_t(base, tp[1:], False))
        else:
            labels.append(tuple(base))
    return labels


# ----------------------------------------------------------------------
# labels carrying their grade


_GRADE_NAMES = {1: ("e",), 2: ("e", "t"), 3: S3_NAMES}

_MIN_GRADE = {"e": 1, "t": 2, "s": 3, "s2": 3, "ts": 3, "ts2": 3}


@dataclass(frozen=True)
class PermLabel:
    """A tuple of permutation names together with its grade m, held in
    the canonical form under simultaneous conjugation."""
    grade: int
    names: tuple

    def __post_init__(self):
        if self.grade not in (1, 2, 3):
            raise ValueError("grade must be 1, 2 or 3")
        allowed = _GRADE_NAMES[self.grade]
        for x in self.names:
            if x not in allowed:
                raise ValueError("%r is not a grade-%d permutation"
                                 % (x, self.grade))
        if self.grade == 3 and not _is_canonical(self.names):
            raise ValueError("label %r is not in canonical form; use "
                             "perm_label to normalize" % (self.names,))

    def __str__(self):
        return ",".join(self.names)


def perm_label(spec, grade=None):
    """Build a PermLabel from a string like "t,ts,e" or a name tuple,
    normalizing grade-3 tuples to their canonical representative."""
    if isinstance(spec, PermLabel):
        return spec
    if isinstance(spec, str):
        names = tuple(tok.strip() for tok in spec.split(",") if tok.strip())
    else:
        names = tuple(spec)
    if not names:
        raise ValueError("empty label")
    for x in names:
        if x not in _MIN_GRADE:
            raise ValueError("unknown permutation name %r" % (x,))
    if grade is None:
        grade = max(_MIN_GRADE[x] for x in names)
    if grade == 3:
        names = canonical_s3_tuple(names)
    return PermLabel(grade=int(grade), names=names)


def _perm_images(name, grade):
    if grade == 1:
        return (0,)
    if grade == 2:
        return (0, 1) if name == "e" else (1, 0)
    return S3_PERMS[name]


def label_to_perms(label):
    """Image tuples (0-based, one per subsystem) of a PermLabel."""
    label = perm_label(label)
    return tuple(_perm_images(x, label.grade) for x in label.names)


# ----------------------------------------------------------------------
# evaluation through matrix operations


def _as_matrix(rho, dims):
    d = int(np.prod(dims))
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise ValueError("state shape %s does not match dims %s"
                         % (rho.shape, tuple(dims)))
    return rho


def _realify(val):
    if abs(val.imag) <= 1e-12 * (1.0 + abs(val.real)):
        return float(val.real)
    return complex(val)


def _grade3_product(rho, dims, names):
    n = len(dims)
    s2set = [j + 1 for j, x in enumerate(names) if x == "s2"]
    base = partial_transpose(rho, dims, s2set) if s2set else rho
    ambient = [j + 1 for j, x in enumerate(names) if x != "e"]
    if not ambient:
        return np.trace(rho) ** 3
    ambient_dims = [dims[j - 1] for j in ambient]
    total = None
    for tau in ("ts2", "ts", "t"):
        traced = [j + 1 for j, x in enumerate(names) if x in (tau, "e")]
        red = partial_trace(base, dims, traced)
        keep = [j for j in ambient if names[j - 1] not in (tau, "e")]
        slots = [ambient.index(j) + 1 for j in keep]
        factor = embed(red, ambient_dims, slots)
        # left-multiplication realizes the defining contraction; the
        # reversed order would conjugate the six complex-valued labels
        total = factor if total is None else factor @ total
    return np.trace(total)


def mixed_invariant(rho, dims, label):
    """Grade-1/2/3 invariant of a density matrix; the label has one
    permutation name per subsystem."""
    label = perm_label(label)
    dims = [int(d) for d in dims]
    if len(label.names) != len(dims):
        raise ValueError("label length %d does not match %d subsystems"
                         % (len(label.names), len(dims)))
    rho = _as_matrix(rho, dims)
    if label.grade == 1:
        return _realify(np.trace(rho))
    if label.grade == 2:
        e_set = [j + 1 for j, x in enumerate(label.names) if x == "e"]
        red = partial_trace(rho, dims, e_set) if e_set else rho
        return _realify(np.trace(red @ red))
    return _realify(_grade3_product(rho, dims, label.names))


def pure_invariant(psi, dims, label):
    """Invariant of a state vector; the label has one permutation name
    per subsystem except the last, which is never permuted."""
    label = perm_label(label)
    dims = [int(d) for d in dims]
    if len(label.names) != len(dims) - 1:
        raise ValueError("pure labels carry %d entries for %d subsystems"
                         % (len(dims) - 1, len(dims)))
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != int(np.prod(dims)):
        raise ValueError("vector length does not match dims")
    extended = PermLabel(grade=label.grade, names=label.names + ("e",))
    return mixed_invariant(proj(psi), dims, extended)


# ----------------------------------------------------------------------
# raw index contraction (einsum route), usable up to grade 4 on small
# systems; this is the defining expression the formulas are checked
# against


def _contraction_subscripts(sigmas, m):
    n = len(sigmas)
    ket = [[l * n + j for j in range(n)] for l in range(m)]
    bra = [[ket[sigmas[j][l]][j] for j in range(n)] for l in range(m)]
    return ket, bra


def naive_contraction(state, dims, sigmas, kind="pure"):
    """Direct evaluation of the defining index contraction.

    sigmas holds one 0-based image tuple per subsystem, all of one
    grade m <= 4.  For kind="pure" the state is a vector and each
    conjugate copy l takes on subsystem j the index of copy
    sigmas[j][l]; for kind="density" the matrix element of copy l
    bridges the same index pairs.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    sigmas = [tuple(s) for s in sigmas]
    if len(sigmas) != n:
        raise ValueError("need one permutation per subsystem")
    m = len(sigmas[0])
    if not 1 <= m <= 4:
        raise ValueError("grade must lie in 1..4")
    for s in sigmas:
        if sorted(s) != list(range(m)):
            raise ValueError("%r is not a permutation of 0..%d"
                             % (s, m - 1))
    ket, bra = _contraction_subscripts(sigmas, m)
    if kind == "pure":
        t = np.asarray(state, dtype=complex).reshape(dims)
        operands = []
        for l in range(m):
            operands += [t, ket[l]]
        for l in range(m):
            operands += [np.conj(t), bra[l]]
        return complex(np.einsum(*operands, optimize=True))
    if kind == "density":
        t = np.asarray(state, dtype=complex).reshape(dims + dims)
        operands = []
        for l in range(m):
            operands += [t, ket[l] + bra[l]]
        return complex(np.einsum(*operands, optimize=True))
    raise ValueError("kind must be 'pure' or 'density'")
