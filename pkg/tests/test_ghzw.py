import numpy as np
import pytest

from entanglia.bipartite import (
    majorization_criterion,
    ppt_criterion,
    reduction_criterion,
    reshuffling_criterion,
)
from entanglia.ghzw import (
    GHZ3,
    W3,
    build_ghzw,
    ccnr_margin,
    fit_gw,
    ghz_line_margin,
    maj_rho_vs_1,
    maj_rho_vs_23,
    ppt1_margin,
    ppt1_poly,
    ppt2_margin,
    ppt2_poly,
    red3_margin,
    red4_margin,
    reduced_1,
    reduced_23,
    reshuffle_singulars,
    spectrum_full,
    spectrum_pt1,
    spectrum_reduced1,
    spectrum_reduced23,
    spectrum_reduction_1,
    su2_margins,
    su2_polys,
    su283_margins,
    su283_poly2,
    wootters_c23,
)
from entanglia.mixedness import majorization_margins
from entanglia.tensor import embed, partial_trace, partial_transpose, proj, reshuffle
from entanglia.twoqubit import wootters_concurrence

DIMS = (2, 2, 2)


def _grid(n=25, rng=None):
    pts = []
    for g in np.linspace(0, 1, n):
        for w in np.linspace(0, 1 - g, max(2, int(np.ceil((1 - g) * n)))):
            pts.append((float(g), float(w)))
    return pts


def test_endpoints():
    assert np.allclose(build_ghzw(0, 0), np.eye(8) / 8)
    assert np.allclose(build_ghzw(1, 0), proj(GHZ3))
    assert np.allclose(build_ghzw(0, 1), proj(W3))


def test_off_simplex_raises():
    with pytest.raises(ValueError):
        build_ghzw(0.8, 0.3)
    with pytest.raises(ValueError):
        build_ghzw(-0.1, 0.2)


def test_pptes_point_exact_matrix():
    ref = np.zeros((8, 8))
    ref[0, 0] = ref[7, 7] = 21
    ref[0, 7] = ref[7, 0] = 12
    for a in (1, 2, 4):
        ref[a, a] = 17
        for b in (1, 2, 4):
            if a != b:
                ref[a, b] = 8
    for a in (3, 5, 6):
        ref[a, a] = 9
    assert np.allclose(build_ghzw(0.2, 0.2) * 120, ref, atol=1e-13)


def test_marginals_match_partial_trace():
    for g, w in ((0.1, 0.3), (0.5, 0.2), (0.0, 0.9), (0.7, 0.0)):
        rho = build_ghzw(g, w)
        assert np.allclose(reduced_23(g, w), partial_trace(rho, DIMS, [1]),
                           atol=1e-13)
        assert np.allclose(reduced_1(g, w), partial_trace(rho, DIMS, [2, 3]),
                           atol=1e-13)


def test_marginals_permutation_invariant():
    for g, w in ((0.15, 0.25), (0.4, 0.4)):
        rho = build_ghzw(g, w)
        r23 = partial_trace(rho, DIMS, [1])
        r13 = partial_trace(rho, DIMS, [2])
        r12 = partial_trace(rho, DIMS, [3])
        assert np.allclose(r23, r13, atol=1e-13)
        assert np.allclose(r23, r12, atol=1e-13)


def test_fit_gw_roundtrip():
    for g, w in ((0.0, 0.0), (0.3, 0.45), (1.0, 0.0)):
        fit = fit_gw(build_ghzw(g, w))
        assert fit is not None
        assert fit[0] == pytest.approx(g, abs=1e-12)
        assert fit[1] == pytest.approx(w, abs=1e-12)
    rho = np.eye(8) / 8
    rho[1, 1] += 0.01
    rho[2, 2] -= 0.01
    assert fit_gw(rho) is None


def test_closed_spectra():
    for g, w in _grid(9):
        rho = build_ghzw(g, w)
        assert np.allclose(spectrum_full(g, w),
                           np.sort(np.linalg.eigvalsh(rho))[::-1], atol=1e-12)
        assert np.allclose(spectrum_reduced23(g, w),
                           np.sort(np.linalg.eigvalsh(reduced_23(g, w)))[::-1],
                           atol=1e-12)
        assert np.allclose(spectrum_reduced1(g, w),
                           np.sort(np.linalg.eigvalsh(reduced_1(g, w)))[::-1],
                           atol=1e-12)
        pt = partial_transpose(rho, DIMS, [1])
        assert np.allclose(spectrum_pt1(g, w),
                           np.sort(np.linalg.eigvalsh(pt))[::-1], atol=1e-12)
        red = embed(reduced_1(g, w), DIMS, [1]) - rho
        assert np.allclose(spectrum_reduction_1(g, w),
                           np.sort(np.linalg.eigvalsh(red))[::-1], atol=1e-12)


def test_reduction_map_shares_pt_spectrum():
    for g, w in ((0.2, 0.3), (0.6, 0.1)):
        rho = build_ghzw(g, w)
        lhs = embed(reduced_23(g, w), DIMS, [2, 3]) - rho
        pt = partial_transpose(rho, DIMS, [1])
        assert np.allclose(np.sort(np.linalg.eigvalsh(lhs)),
                           np.sort(np.linalg.eigvalsh(pt)), atol=1e-12)


def test_ppt_polynomials_and_boundaries():
    for g, w in _grid(12):
        assert ppt1_margin(g, w) == pytest.approx(ppt1_poly(g, w), abs=1e-13)
        assert ppt2_margin(g, w) == pytest.approx(ppt2_poly(g, w), abs=1e-13)
    assert ppt1_margin(0.2, 0.0) == pytest.approx(0.0, abs=1e-15)
    w_star = (24 * np.sqrt(2) - 9) / 119
    assert ppt2_margin(0.0, w_star) == pytest.approx(0.0, abs=1e-15)
    assert red3_margin(3.0 / 7.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    w_star4 = 9.0 / (9.0 + 8.0 * np.sqrt(2))
    assert red4_margin(0.0, w_star4) == pytest.approx(0.0, abs=1e-15)


def test_ppt_verdict_matches_closed_margins():
    for g, w in _grid(14):
        rho = build_ghzw(g, w)
        verdict, _ = ppt_criterion(rho, DIMS, [1])
        closed = min(ppt1_margin(g, w), ppt2_margin(g, w))
        if abs(closed) > 1e-9:
            assert verdict.holds == (closed > 0)


def test_reduction_verdict_matches_closed_margins():
    for g, w in _grid(14):
        rho = build_ghzw(g, w)
        verdict = reduction_criterion(rho, DIMS, [1])
        closed = min(ppt1_margin(g, w), ppt2_margin(g, w),
                     red3_margin(g, w), red4_margin(g, w))
        if abs(closed) > 1e-9:
            assert verdict.holds == (closed > 0)


def test_reshuffle_closed_singulars():
    for g, w in _grid(10):
        rho = build_ghzw(g, w)
        mat = reshuffle(rho, DIMS, [1, 4])
        sv = np.linalg.svd(mat, compute_uv=False)
        assert np.allclose(np.sort(sv)[::-1][:4], reshuffle_singulars(g, w),
                           atol=1e-11)
        verdict = reshuffling_criterion(rho, DIMS, [1])
        assert verdict.margins[0] == pytest.approx(ccnr_margin(g, w), abs=1e-11)


def test_su2_poly_equivalences():
    for g, w in _grid(12):
        m1, m2, m3 = su2_margins(g, w)
        p1, p2, p3 = su2_polys(g, w)
        # margins and polynomials agree in sign; squared forms agree in value
        dt = (1 - g - w) / 8.0
        gt, wt = g / 2.0, w / 3.0
        assert dt * (dt + wt) - (gt / 3.0) ** 2 == pytest.approx(
            p1 / 576, abs=1e-13)
        assert ((8 * dt + wt) * (8 * dt + 4 * gt + wt) - 9 * wt ** 2
                ) == pytest.approx(p2 / 9, abs=1e-12)
        assert (9 * (8 * dt + 2 * gt + wt) ** 2 - 4 * gt ** 2 - 81 * wt ** 2
                ) == pytest.approx(p3, abs=1e-12)
    assert su2_polys(0.0, 0.6)[1] == pytest.approx(0.0, abs=1e-12)


def test_su283_closed_forms():
    for g, w in _grid(12):
        m1, m2 = su283_margins(g, w)
        assert m1 == pytest.approx(ppt1_margin(g, w), abs=1e-14)
        assert m2 == pytest.approx(su283_poly2(g, w), abs=1e-12)
    assert su283_poly2(0.0, 3.0 / 11.0) == pytest.approx(0.0, abs=1e-13)


def test_wootters_closed_form():
    for g, w in _grid(12):
        direct = wootters_concurrence(reduced_23(g, w))
        assert wootters_c23(g, w) == pytest.approx(direct, abs=1e-10)
    assert wootters_c23(0.0, 1.0) == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert wootters_c23(0.0, 0.6) == pytest.approx(
        0.4 - 2 * np.sqrt(0.1 * 0.3), abs=1e-12)


def test_wootters_poly_route():
    for g, w in _grid(10):
        alt = (2.0 / 3.0) * w - (1.0 / (2 * np.sqrt(3.0))) * np.sqrt(
            (1 + g - w) * (3 + 3 * g + w))
        assert wootters_c23(g, w) == pytest.approx(max(0.0, alt), abs=1e-12)


def test_majorization_table_vs_numeric():
    rng = np.random.default_rng(5)
    for _ in range(400):
        g = rng.uniform(0, 1)
        w = rng.uniform(0, 1 - g)
        rho = build_ghzw(g, w)
        spec_rho = spectrum_full(g, w)
        spec_23 = np.concatenate([spectrum_reduced23(g, w), np.zeros(4)])
        spec_1 = np.concatenate([spectrum_reduced1(g, w), np.zeros(6)])
        sums_23 = np.cumsum(spec_23) - np.cumsum(spec_rho)
        sums_1 = np.cumsum(spec_1) - np.cumsum(spec_rho)
        first23, second23 = maj_rho_vs_23(g, w)
        first1 = maj_rho_vs_1(g, w)
        if abs(sums_23[0]) > 1e-9:
            assert first23 == (sums_23[0] > 0)
        if abs(sums_23[1]) > 1e-9:
            assert second23 == (sums_23[1] > 0)
        if abs(sums_1[0]) > 1e-9:
            assert first1 == (sums_1[0] > 0)
        # the two tabulated sums are the only binding ones for the 23 cut
        if min(sums_23[0], sums_23[1]) > 1e-9:
            assert np.min(sums_23) > -1e-9
        verdict = majorization_criterion(rho, DIMS, [1])
        if abs(min(verdict.margins)) > 1e-9:
            assert verdict.holds == (min(sums_23.min(), sums_1.min()) > 0)


def test_ghz_line_slope_value():
    assert ghz_line_margin(1.0, 0.0) == pytest.approx(3.0 / (4 * 2 ** (1 / 3)))
    g0 = 4 * 2 ** (1 / 3) / (3 + 4 * 2 ** (1 / 3))
    assert ghz_line_margin(g0, 1 - g0) == pytest.approx(0.0, abs=1e-12)
