"""Three-qubit family mixing white noise with GHZ and W projectors.

States are parametrized by the simplex point (g, w), with noise weight
d = 1 - g - w.  Everything about this family is analytic: the matrix is
sparse in the computational basis and all the criteria margins used by
the scanner admit closed forms, collected here next to the constructors
so they can be cross-checked against the generic numerical routes.

The per-entry weights are dt = d/8, gt = g/2, wt = w/3.
"""

import numpy as np

SQRT2 = float(np.sqrt(2.0))

GHZ3 = np.zeros(8)
GHZ3[0] = GHZ3[7] = 1.0 / SQRT2

W3 = np.zeros(8)
W3[1] = W3[2] = W3[4] = 1.0 / np.sqrt(3.0)


def tilde_weights(g, w):
    """(dt, gt, wt) for a simplex point."""
    d = 1.0 - g - w
    return d / 8.0, g / 2.0, w / 3.0


def on_simplex(g, w, tol=1e-12):
    return g >= -tol and w >= -tol and g + w <= 1.0 + tol


def build_ghzw(g, w):
    """Density matrix of the family state; raises off the simplex."""
    if not on_simplex(g, w):
        raise ValueError("point (%r, %r) is outside the parameter simplex" % (g, w))
    dt, gt, wt = tilde_weights(g, w)
    rho = np.diag([dt + gt, dt + wt, dt + wt, dt, dt + wt, dt, dt, dt + gt]
                  ).astype(complex)
    rho[0, 7] = rho[7, 0] = gt
    for a in (1, 2, 4):
        for b in (1, 2, 4):
            if a != b:
                rho[a, b] = wt
    return rho


def reduced_23(g, w):
    """Two-qubit marginal on subsystems (2,3)."""
    dt, gt, wt = tilde_weights(g, w)
    rho = np.diag([2 * dt + gt + wt, 2 * dt + wt, 2 * dt + wt, 2 * dt + gt]
                  ).astype(complex)
    rho[1, 2] = rho[2, 1] = wt
    return rho


def reduced_1(g, w):
    dt, gt, wt = tilde_weights(g, w)
    return np.diag([4 * dt + gt + 2 * wt, 4 * dt + gt + wt]).astype(complex)


def fit_gw(rho, tol=1e-10):
    """Recover (g, w) if rho is a family state, else None."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        return None
    g = 2.0 * float(np.real(rho[0, 7]))
    w = 3.0 * float(np.real(rho[1, 2]))
    if not on_simplex(g, w, tol=1e-8):
        return None
    try:
        ref = build_ghzw(max(g, 0.0), max(w, 0.0))
    except ValueError:
        return None
    if np.max(np.abs(rho - ref)) > tol:
        return None
    return g, w


# ----------------------------------------------------------------------
# closed-form spectra


def spectrum_full(g, w):
    dt, gt, wt = tilde_weights(g, w)
    vals = [dt + 2 * gt, dt + 3 * wt] + [dt] * 6
    return np.sort(np.array(vals))[::-1]


def spectrum_reduced23(g, w):
    dt, gt, wt = tilde_weights(g, w)
    vals = [2 * dt + 2 * wt, 2 * dt + gt + wt, 2 * dt + gt, 2 * dt]
    return np.sort(np.array(vals))[::-1]


def spectrum_reduced1(g, w):
    dt, gt, wt = tilde_weights(g, w)
    return np.sort(np.array([4 * dt + gt + 2 * wt, 4 * dt + gt + wt]))[::-1]


def spectrum_pt1(g, w):
    """Eigenvalues of the partial transpose over the 1|23 cut."""
    dt, gt, wt = tilde_weights(g, w)
    ra = 0.5 * np.sqrt(4 * gt ** 2 + wt ** 2)
    rb = 0.5 * np.sqrt(gt ** 2 + 8 * wt ** 2)
    vals = [dt + 0.5 * wt + ra, dt + 0.5 * wt - ra,
            dt + 0.5 * gt + rb, dt + 0.5 * gt - rb,
            dt + gt, dt + 2 * wt, dt, dt]
    return np.sort(np.array(vals))[::-1]


def spectrum_reduction_1(g, w):
    """Eigenvalues of rho_1 (x) I - rho."""
    dt, gt, wt = tilde_weights(g, w)
    ra = 0.5 * np.sqrt(4 * gt ** 2 + wt ** 2)
    vals = [3 * dt + 1.5 * wt + ra, 3 * dt + 1.5 * wt - ra,
            3 * dt + gt + SQRT2 * wt, 3 * dt + gt - SQRT2 * wt,
            3 * dt + gt + 2 * wt, 3 * dt + gt + 2 * wt,
            3 * dt + gt + wt, 3 * dt + gt + wt]
    return np.sort(np.array(vals))[::-1]


# ----------------------------------------------------------------------
# closed-form criterion margins (nonnegative = criterion satisfied)


def ppt1_margin(g, w):
    dt, gt, wt = tilde_weights(g, w)
    return dt * dt + dt * wt - gt * gt


def ppt1_poly(g, w):
    return (-135 * g * g - 15 * w * w - 6 * g * w - 18 * g + 6 * w + 9) / 576.0


def ppt2_margin(g, w):
    dt, gt, wt = tilde_weights(g, w)
    return dt * dt + dt * gt - 2 * wt * wt


def ppt2_poly(g, w):
    return (-27 * g * g - 119 * w * w - 18 * g * w + 18 * g - 18 * w + 9) / 576.0


def red3_margin(g, w):
    dt, gt, wt = tilde_weights(g, w)
    return 9 * dt * dt - gt * gt + 9 * dt * wt + 2 * wt * wt


def red4_margin(g, w):
    dt, gt, wt = tilde_weights(g, w)
    return 3 * dt + gt - SQRT2 * wt


def reshuffle_singulars(g, w):
    """The four singular values of the realignment across 1|23."""
    dt, gt, wt = tilde_weights(g, w)
    p1 = (16 * dt ** 2 + 4 * gt ** 2 + 10 * wt ** 2 + 8 * dt * gt
          + 12 * dt * wt)
    p2 = (64 * dt ** 4 + 9 * wt ** 4 + 64 * dt ** 3 * gt + 96 * dt ** 3 * wt
          + 12 * dt * wt ** 3 + 16 * dt ** 2 * gt ** 2 + 40 * dt ** 2 * wt ** 2
          + 4 * gt ** 2 * wt ** 2 + 80 * dt ** 2 * gt * wt
          + 16 * dt * gt ** 2 * wt + 24 * dt * gt * wt ** 2)
    root = 2.0 * np.sqrt(max(0.0, p2))
    side = np.sqrt(gt ** 2 + 2 * wt ** 2)
    vals = [0.5 * np.sqrt(max(0.0, p1 + root)),
            0.5 * np.sqrt(max(0.0, p1 - root)), side, side]
    return np.sort(np.array(vals))[::-1]


def ccnr_margin(g, w):
    return 1.0 - float(np.sum(reshuffle_singulars(g, w)))


def su2_margins(g, w):
    """Matrix-element margins of the three biseparability inequalities
    (settings I, II, III)."""
    dt, gt, wt = tilde_weights(g, w)
    m1 = 3 * np.sqrt(dt * (dt + wt)) - gt
    m2 = np.sqrt((8 * dt + wt) * (8 * dt + 4 * gt + wt)) - 3 * wt
    m3 = 3 * (8 * dt + 2 * gt + wt) - np.sqrt(4 * gt ** 2 + 81 * wt ** 2)
    return float(m1), float(m2), float(m3)


def su2_polys(g, w):
    p1 = (-7 * g * g - 6 * g * w - 15 * w * w - 18 * g + 6 * w + 9)
    p2 = (-9 * g * g - 5 * w * w - 12 * w + 9)
    p3 = (-g * g - 5 * w * w - 12 * w + 9)
    return p1, p2, p3


def su283_margins(g, w):
    """Squared-form margins of the first two settings of the intersection
    criterion; the first one coincides with the 1|23 partial-transpose
    boundary."""
    dt, gt, wt = tilde_weights(g, w)
    m1 = dt * (dt + wt) - gt ** 2
    m2 = (8 * dt + wt) * (8 * dt + 4 * gt + wt) - 81 * wt ** 2
    return float(m1), float(m2)


def su283_poly2(g, w):
    return (-9 * g * g - 77 * w * w - 12 * w + 9) / 9.0


def gs2_margins(g, w):
    dt, gt, wt = tilde_weights(g, w)
    m1 = 3 * np.sqrt(dt * (dt + wt)) - gt
    m2 = np.sqrt((dt + gt) * dt) + 0.5 * (dt + wt) - wt
    return float(m1), float(m2)


def gs3_margins(g, w):
    """(original sixth-root, the detecting fourth-root, the W-type one)."""
    dt, gt, wt = tilde_weights(g, w)
    m1 = np.sqrt((dt + wt) * dt) - gt
    m11 = ((dt + gt) * dt ** 3) ** 0.25 - gt
    m2 = np.sqrt((dt + gt) * dt) - wt
    return float(m1), float(m11), float(m2)


def wootters_c23(g, w):
    """Closed-form Wootters concurrence of the (2,3) marginal."""
    dt, gt, wt = tilde_weights(g, w)
    val = 2 * wt - 2 * np.sqrt((2 * dt + gt) * (2 * dt + gt + wt))
    return float(max(0.0, val))


def witness_traces(g, w):
    """(GHZ-class witness, the two W-class witnesses)."""
    dt, gt, wt = tilde_weights(g, w)
    t_ghz = (20 * dt - 2 * gt + 9 * wt) / 4.0
    t_w1 = (13 * dt + 4 * gt - 3 * wt) / 3.0
    t_w2 = (6 * dt - 2 * gt + 3 * wt) / 2.0
    return float(t_ghz), float(t_w1), float(t_w2)


GHZ_LINE_SLOPE = 3.0 / (4.0 * 2.0 ** (1.0 / 3.0))


def ghz_line_margin(g, w):
    """Below this line (positive margin) the GHZ-class witness argument
    applies; the crossing point on the w = 0 axis is at slope g."""
    return GHZ_LINE_SLOPE * g - w


# ----------------------------------------------------------------------
# closed-form majorization table (disorder criteria)


def maj_rho_vs_23(g, w):
    """(first, second) partial-sum comparisons of Spect(rho) against
    Spect(rho_23); both must hold for the marginal to majorize."""
    if g <= (2.0 / 3.0) * w:
        first = w <= 3.0 / 11.0 - (3.0 / 11.0) * g
    elif g <= w:
        first = w <= 3.0 / 19.0 + (9.0 / 19.0) * g
    else:
        first = 3.0 * g - 3.0 / 5.0 <= w
    if g <= (4.0 / 3.0) * w:
        second = w <= 1.0 - 3.0 * g
    else:
        second = w <= 3.0 / 11.0 - (3.0 / 11.0) * g
    return bool(first), bool(second)


def maj_rho_vs_1(g, w):
    """First partial-sum comparison of Spect(rho) against Spect(rho_1)."""
    if g <= w:
        return bool(w <= 9.0 / 17.0 + (3.0 / 17.0) * g)
    return bool(3.0 * g - 9.0 / 7.0 <= w)
