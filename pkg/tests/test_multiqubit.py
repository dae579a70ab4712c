import numpy as np
import pytest

from entanglia.ghzw import (
    build_ghzw,
    gs2_margins,
    gs3_margins,
    ppt1_margin,
    su2_margins,
    su2_polys,
    su283_poly2,
    tilde_weights,
    witness_traces,
)
from entanglia.multiqubit import (
    gabriel_criterion,
    gabriel_values,
    gs2_criteria,
    gs3_criteria,
    gs_matrix_criteria,
    permutation_criterion,
    phi_ghz_like,
    phi_w_like,
    su_criteria,
    su_expectations,
    su_operators,
    su_pair_margins,
    witness_criteria,
)
from entanglia.rand import default_rng, random_density, random_separable_density
from entanglia.tensor import SX, SY, SZ, ID2, partial_transpose, trace_norm

from oracles import naive_gabriel_values


def _simplex_grid(n=9):
    pts = []
    for g in np.linspace(0, 1, n):
        for w in np.linspace(0, 1 - g, n):
            pts.append((float(g), float(w)))
    return pts


def _random_x_state(rng):
    """Random three-qubit state that is diagonal up to the four
    antipodal coherences."""
    p = rng.dirichlet(np.ones(8))
    rho = np.diag(p).astype(complex)
    for a, b in ((0, 7), (1, 6), (2, 5), (3, 4)):
        c = (rng.normal() + 1j * rng.normal()) * 0.2
        cap = np.sqrt(p[a] * p[b])
        if abs(c) > cap:
            c *= cap / abs(c)
        rho[a, b] = c
        rho[b, a] = np.conj(c)
    return rho, p


def test_su_level2_explicit_forms():
    ops = su_operators(setting=1, n=2)
    kron = np.kron
    assert np.allclose(ops["X"][0], 0.5 * (kron(SX, SX) - kron(SY, SY)))
    assert np.allclose(ops["X"][1], 0.5 * (kron(SX, SX) + kron(SY, SY)))
    assert np.allclose(ops["Y"][0], 0.5 * (kron(SY, SX) + kron(SX, SY)))
    assert np.allclose(ops["Y"][1], 0.5 * (kron(SY, SX) - kron(SX, SY)))
    assert np.allclose(ops["Z"][0], 0.5 * (kron(SZ, ID2) + kron(ID2, SZ)))
    assert np.allclose(ops["Z"][1], 0.5 * (kron(SZ, ID2) - kron(ID2, SZ)))
    assert np.allclose(ops["I"][0], 0.5 * (np.eye(4) + kron(SZ, SZ)))
    assert np.allclose(ops["I"][1], 0.5 * (np.eye(4) - kron(SZ, SZ)))


def test_su_identity_completeness():
    for setting in (1, 2, 3):
        ops = su_operators(setting, n=3)
        assert len(ops["X"]) == 4
        assert np.allclose(sum(ops["I"]), np.eye(8), atol=1e-13)
        for key in ("X", "Y", "Z", "I"):
            for op in ops[key]:
                assert np.allclose(op, op.conj().T, atol=1e-13)


def test_su_setting1_reads_antipodal_entries():
    rng = default_rng(3)
    for _ in range(20):
        rho, p = _random_x_state(rng)
        ex = su_expectations(rho, setting=1)
        coh = ex["X"] ** 2 + ex["Y"] ** 2
        gap = ex["I"] ** 2 - ex["Z"] ** 2
        want_coh = sorted(4 * abs(rho[a, b]) ** 2
                          for a, b in ((0, 7), (1, 6), (2, 5), (3, 4)))
        want_gap = sorted(4 * p[a] * p[b]
                          for a, b in ((0, 7), (1, 6), (2, 5), (3, 4)))
        assert np.allclose(sorted(coh), want_coh, atol=1e-12)
        assert np.allclose(sorted(gap), want_gap, atol=1e-12)


def test_su_2sep_margin_family_setting1():
    for g, w in _simplex_grid(8):
        rho = build_ghzw(g, w)
        v2, _, _ = su_criteria(rho, setting=1)
        # the first battery entry is the only one that can turn negative
        # on this family, and it doubles the matrix-element margin
        closed = su2_margins(g, w)[0]
        assert v2.margins[0] == pytest.approx(2.0 * closed, abs=1e-11)
        if abs(closed) > 1e-9:
            assert v2.holds == (closed > 0)


def test_su_2sep_sign_settings_2_3():
    for g, w in _simplex_grid(10):
        _, p2, p3 = su2_polys(g, w)
        for setting, poly in ((2, p2), (3, p3)):
            rho = build_ghzw(g, w)
            v2, _, _ = su_criteria(rho, setting=setting)
            if abs(poly) > 1e-6:
                assert v2.holds == (poly > 0), (g, w, setting)


def test_su_intersection_matches_ppt_boundary():
    for g, w in _simplex_grid(10):
        rho = build_ghzw(g, w)
        _, v_int, _ = su_criteria(rho, setting=1)
        closed = ppt1_margin(g, w)
        cap = 1.0 / 4.0 - 4.0 * min(
            (tilde_weights(g, w)[0] + tilde_weights(g, w)[1]) ** 2,
            tilde_weights(g, w)[0] * (tilde_weights(g, w)[0]
                                      + tilde_weights(g, w)[2]))
        if abs(closed) > 1e-7 and abs(cap) > 1e-7:
            assert v_int.holds == (closed > 0 and cap > 0), (g, w)


def test_su_pair_margin_equals_ppt_polynomial():
    for g, w in _simplex_grid(12):
        rho = build_ghzw(g, w)
        pm = su_pair_margins(rho, setting=1)
        pair = min(pm[0, 1], pm[0, 2], pm[0, 3]) / 4.0
        assert pair == pytest.approx(ppt1_margin(g, w), abs=1e-12)


def test_su_setting2_boundary_points():
    rho = build_ghzw(0.0, 0.6)
    v2, _, _ = su_criteria(rho, setting=2)
    assert min(v2.margins) == pytest.approx(0.0, abs=1e-9)
    rho = build_ghzw(0.0, 3.0 / 11.0)
    _, v_int, _ = su_criteria(rho, setting=2)
    assert min(v_int.margins[0], 0.0) == pytest.approx(0.0, abs=1e-9)
    assert su283_poly2(0.0, 3.0 / 11.0) == pytest.approx(0.0, abs=1e-12)


def test_su_full_separability_cap():
    _, _, v_full = su_criteria(np.eye(8) / 8, setting=1)
    assert min(v_full.margins) == pytest.approx(0.0, abs=1e-12)
    _, _, v_ghz = su_criteria(build_ghzw(1.0, 0.0), setting=1)
    assert not v_ghz.holds


def test_gs_margins_on_family():
    for g, w in _simplex_grid(8):
        rho = build_ghzw(g, w)
        va, vb = gs2_criteria(rho)
        m1, m2 = gs2_margins(g, w)
        assert va.margins[0] == pytest.approx(m1, abs=1e-11)
        assert vb.margins[0] == pytest.approx(3.0 * m2, abs=1e-11)
        verdicts = gs3_criteria(rho)
        m31, m311, m32 = gs3_margins(g, w)
        assert verdicts[1].margins[0] == pytest.approx(m31, abs=1e-11)
        assert verdicts[8 + 4].margins[0] == pytest.approx(m311, abs=1e-11)
        assert verdicts[-1].margins[0] == pytest.approx(3.0 * m32, abs=1e-11)


def test_gs_detects_bound_entanglement_point():
    rho = build_ghzw(0.2, 0.2)
    pt = partial_transpose(rho, (2, 2, 2), [1])
    assert float(np.min(np.linalg.eigvalsh(pt))) >= -1e-12
    verdicts = gs3_criteria(rho)
    margin_311 = verdicts[8 + 4].margins[0]
    assert margin_311 < -1e-3
    assert margin_311 == pytest.approx(189.0 ** 0.25 / 40.0 - 0.1, abs=1e-12)


def test_gs_holds_on_separable_samples():
    rng = default_rng(19)
    for _ in range(30):
        rho = random_separable_density((2, 2, 2), terms=8, rng=rng)
        for v in gs_matrix_criteria(rho):
            assert v.holds, v.id


def test_gabriel_matches_oracle():
    rng = default_rng(29)
    splits2 = [[[1], [2, 3]], [[2], [1, 3]], [[3], [1, 2]]]
    phi = phi_w_like(3)
    for _ in range(5):
        rho = random_density(8, rng=rng)
        lhs, terms = gabriel_values(rho, splits2, phi)
        o_lhs, o_terms = naive_gabriel_values(rho, splits2, phi)
        assert lhs == pytest.approx(o_lhs, abs=1e-12)
        assert np.allclose(terms, o_terms, atol=1e-12)


def test_gabriel_family_equivalences():
    phi_g = phi_ghz_like(3)
    for g, w in _simplex_grid(7):
        rho = build_ghzw(g, w)
        dt, gt, wt = tilde_weights(g, w)
        v2 = gabriel_criterion(rho, 2, phi_g)
        assert v2.margins[0] == pytest.approx(
            3 * np.sqrt(dt * (dt + wt)) - gt, abs=1e-11)
        splits3 = [[[1], [2], [3]]]
        lhs, terms = gabriel_values(rho, splits3, phi_g)
        assert lhs == pytest.approx(gt, abs=1e-11)
        assert terms[0] == pytest.approx(np.sqrt(dt * (dt + wt)), abs=1e-11)


def test_gabriel_w_vector_sign_agreement():
    phi_w = phi_w_like(3)
    for g, w in _simplex_grid(9):
        rho = build_ghzw(g, w)
        _, p2, _ = su2_polys(g, w)
        v2 = gabriel_criterion(rho, 2, phi_w)
        if abs(p2) > 1e-4:
            assert v2.holds == (p2 > 0), (g, w)
        v3 = gabriel_criterion(rho, 3, phi_w)
        poly283 = su283_poly2(g, w)
        if abs(poly283) > 1e-4:
            assert v3.holds == (poly283 > 0), (g, w)


def test_permutation_criterion_transpose_route():
    for g, w in ((0.3, 0.2), (0.7, 0.1), (0.0, 0.8)):
        rho = build_ghzw(g, w)
        verdicts = {v.id: v for v in permutation_criterion(rho)}
        pt = partial_transpose(rho, (2, 2, 2), [1])
        assert verdicts["perm[t1]"].margins[0] == pytest.approx(
            1.0 - trace_norm(pt), abs=1e-11)
        # the family is symmetric under qubit exchange
        assert verdicts["perm[t1]"].margins[0] == pytest.approx(
            verdicts["perm[t2]"].margins[0], abs=1e-11)
        assert verdicts["perm[t2]"].margins[0] == pytest.approx(
            verdicts["perm[t3]"].margins[0], abs=1e-11)


def test_permutation_reshuffle_frozen_matrix():
    g, w = 0.25, 0.35
    dt, gt, wt = tilde_weights(g, w)
    rho = build_ghzw(g, w)
    from entanglia.tensor import permute_systems
    mat = permute_systems(rho, (2, 2, 2), (1, 2, 5, 4, 3, 6))
    ref = np.zeros((8, 8))
    ref[0, 0], ref[0, 3], ref[0, 6] = dt + gt, dt + wt, wt
    ref[1, 2], ref[1, 5] = wt, gt
    ref[2, 1], ref[2, 4] = wt, wt
    ref[3, 0], ref[3, 3] = dt + wt, dt
    ref[4, 1], ref[4, 4], ref[4, 7] = wt, dt + wt, dt
    ref[5, 0] = wt
    ref[6, 2] = gt
    ref[7, 4], ref[7, 7] = dt, dt + gt
    assert np.allclose(mat, ref, atol=1e-13)


def test_permutation_criterion_product_state():
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 1.0
    for v in permutation_criterion(rho):
        assert v.margins[0] == pytest.approx(0.0, abs=1e-12)
        assert v.holds


def test_witness_traces_match_closed_forms():
    for g, w in _simplex_grid(8):
        rho = build_ghzw(g, w)
        vg, vw1, vw2 = witness_criteria(rho)
        tg, tw1, tw2 = witness_traces(g, w)
        assert vg.margins[0] == pytest.approx(tg, abs=1e-12)
        assert vw1.margins[0] == pytest.approx(tw1, abs=1e-12)
        assert vw2.margins[0] == pytest.approx(tw2, abs=1e-12)
    vg, _, _ = witness_criteria(build_ghzw(1.0, 0.0))
    assert vg.margins[0] == pytest.approx(-0.25)
    assert not vg.holds
