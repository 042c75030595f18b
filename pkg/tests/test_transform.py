"""
Forward/inverse VSH transforms and the spectral differential operators.
"""

import numpy as np
import pytest

from divcurl.frames import sph_to_cart_points, cart_to_sph_vector
from divcurl.grids import SampledField, make_grids
from divcurl.harmonics import vsh_eval
from divcurl.transform import (ScalarSpectral, SpectralField, analyze,
                               mode_degrees, mode_index, spectral_curl,
                               spectral_div, spectral_grad, synthesize,
                               synthesize_at)

SQRT_4PI_3 = 2.046653415892977     # coefficient of z_hat on the (1, 0) mode


def _grids(L=6, n_r=32):
    return make_grids(1.0, 5.0, n_r, L)


def _bump(r):
    # panel-smooth profile supported strictly inside [1, 5]
    return np.exp(-((r - 3.0) / 0.9) ** 2)


def _random_spectral(radial, L, seed, decay=0.5):
    """Band-limited field with per-mode random amplitudes on one smooth profile."""
    rng = np.random.default_rng(seed)
    S = SpectralField(radial, L)
    amp = decay ** S.ells
    scal = amp[:, None] * (rng.standard_normal((S.n_modes, 3))
                           + 1j * rng.standard_normal((S.n_modes, 3)))
    S.coeffs[:] = scal[:, :, None] * _bump(radial.r)[None, None, :]
    S.coeffs[0, 1:] = 0.0
    return S


############################################
# Mode bookkeeping


def test_mode_index_layout():
    assert mode_index(0, 0) == 0
    assert mode_index(1, -1) == 1
    assert mode_index(1, 0) == 2
    assert mode_index(1, 1) == 3
    assert mode_index(2, -2) == 4
    with pytest.raises(ValueError):
        mode_index(2, 3)


def test_mode_degrees_round_trip():
    ells, ems = mode_degrees(5)
    assert ells.size == 36
    for k in range(36):
        assert mode_index(ells[k], ems[k]) == k


############################################
# analyze / synthesize


def test_analyze_uniform_z_flow():
    # v = z_hat everywhere: single (1, 0) mode with c_r = c_1 = sqrt(4 pi / 3)
    ang, rad = _grids()
    theta = ang.theta[None, :, None]
    vals = np.zeros((rad.n_r, ang.n_theta, ang.n_phi, 3), dtype=complex)
    vals[..., 0] = np.cos(theta)
    vals[..., 1] = -np.sin(theta)
    S = analyze(SampledField(rad, ang, vals), 6)
    k = mode_index(1, 0)
    assert np.abs(S.coeffs[k, 0] - SQRT_4PI_3).max() < 1e-13
    assert np.abs(S.coeffs[k, 1] - SQRT_4PI_3).max() < 1e-13
    assert np.abs(S.coeffs[k, 2]).max() < 1e-13
    rest = np.delete(S.coeffs, k, axis=0)
    assert np.abs(rest).max() < 1e-12


def test_round_trip_random_band_limited():
    ang, rad = _grids()
    S = _random_spectral(rad, 6, seed=0)
    back = analyze(synthesize(S, ang), 6)
    assert np.abs(back.coeffs - S.coeffs).max() < 1e-12


def test_synthesize_single_mode_matches_reference_eval():
    # one Phi_{3,2} mode with profile g(r): samples must equal g(r) Phi(theta, phi)
    ang, rad = _grids()
    S = SpectralField(rad, 6)
    g = _bump(rad.r)
    S.set_mode(3, 2, 2, g)
    v = synthesize(S, ang).values
    T, P = np.meshgrid(ang.theta, ang.phi, indexing="ij")
    vr, vt, vp = vsh_eval("Phi", 3, 2, T, P)
    ref = g[:, None, None, None] * np.stack([vr, vt, vp], axis=-1)[None]
    assert np.abs(v - ref).max() < 1e-13


def test_analyze_conjugation_symmetry_for_real_fields():
    # real samples force c_{l,-m} = (-1)^m conj(c_{l,m}) in every channel
    ang, rad = _grids(L=4, n_r=16)
    rng = np.random.default_rng(7)
    vals = rng.standard_normal((rad.n_r, ang.n_theta, ang.n_phi, 3))
    S = analyze(SampledField(rad, ang, vals), 4)
    for l in range(5):
        for m in range(1, l + 1):
            a = S.coeffs[mode_index(l, -m)]
            b = (-1) ** m * np.conj(S.coeffs[mode_index(l, m)])
            assert np.abs(a - b).max() < 1e-13


def test_parseval_norm():
    # S.norm() equals the quadrature L2 norm of the synthesized samples
    ang, rad = _grids()
    S = _random_spectral(rad, 6, seed=1)
    v = synthesize(S, ang).values
    dens = (np.abs(v) ** 2).sum(axis=-1)
    dens = (dens * ang.w_ct[None, :, None]).sum(axis=(1, 2)) * ang.w_phi
    direct = np.sqrt(rad.integrate(dens * rad.r ** 2))
    assert abs(S.norm() - direct) < 1e-10 * direct


def test_band_limit_enforced():
    ang, rad = _grids(L=4)
    field = SampledField.zeros(rad, ang)
    with pytest.raises(ValueError):
        analyze(field, 6)
    S = SpectralField(rad, 6)
    with pytest.raises(ValueError):
        synthesize(S, ang)


def test_synthesize_at_matches_grid_synthesis():
    ang, rad = _grids()
    S = _random_spectral(rad, 6, seed=2)
    v = synthesize(S, ang).values
    ii, jj, kk = [4, 17, 30], [1, 3, 6], [0, 5, 11]
    pts, want = [], []
    for i, j, k in zip(ii, jj, kk):
        pts.append(sph_to_cart_points(rad.r[i], ang.theta[j], ang.phi[k]))
        want.append(v[i, j, k])
    got = synthesize_at(S, np.array(pts))
    want_cart = []
    for (i, j, k), w in zip(zip(ii, jj, kk), want):
        from divcurl.frames import sph_to_cart_vector
        want_cart.append(sph_to_cart_vector(w[0], w[1], w[2],
                                            ang.theta[j], ang.phi[k]))
    assert np.abs(got - np.array(want_cart)).max() < 1e-12


def test_synthesize_at_rejects_points_outside_shell():
    _, rad = _grids()
    S = SpectralField(rad, 6)
    with pytest.raises(ValueError):
        synthesize_at(S, np.array([[6.0, 0.0, 0.0]]))


############################################
# Spectral calculus


def test_div_of_uniform_flow_vanishes():
    ang, rad = _grids()
    theta = ang.theta[None, :, None]
    vals = np.zeros((rad.n_r, ang.n_theta, ang.n_phi, 3), dtype=complex)
    vals[..., 0] = np.cos(theta)
    vals[..., 1] = -np.sin(theta)
    d = spectral_div(analyze(SampledField(rad, ang, vals), 6))
    assert np.abs(d.coeffs).max() < 1e-12


def test_div_of_monopole_stretch():
    # v = r Y_00 rhat has divergence profile 3 Y_00
    _, rad = _grids()
    S = SpectralField(rad, 0)
    S.set_mode(0, 0, 0, rad.r)
    d = spectral_div(S)
    assert np.abs(d.coeffs[0] - 3.0).max() < 1e-12


def test_div_of_phi_sector_is_exactly_zero():
    _, rad = _grids()
    S = SpectralField(rad, 4)
    rng = np.random.default_rng(3)
    S.coeffs[:, 2] = rng.standard_normal((S.n_modes, rad.n_r))
    assert np.abs(spectral_div(S).coeffs).max() == 0.0


def test_grad_of_power_profile():
    # g = r^2 on mode (2, 1): grad = (2r) Y + (r) Psi
    _, rad = _grids()
    s = ScalarSpectral(rad, 4)
    s.coeffs[mode_index(2, 1)] = rad.r ** 2
    G = spectral_grad(s)
    k = mode_index(2, 1)
    assert np.abs(G.coeffs[k, 0] - 2.0 * rad.r).max() < 1e-10
    assert np.abs(G.coeffs[k, 1] - rad.r).max() < 1e-13
    assert np.abs(G.coeffs[k, 2]).max() == 0.0


def test_curl_of_gradient_vanishes_identically():
    # cancellation happens through r (s / r), so the differentiation matrix
    # sees last-bit noise; the residual stays at amplified round-off
    _, rad = _grids()
    rng = np.random.default_rng(4)
    s = ScalarSpectral(rad, 5)
    s.coeffs[:] = (rng.standard_normal(s.coeffs.shape)
                   + 1j * rng.standard_normal(s.coeffs.shape))
    C = spectral_curl(spectral_grad(s))
    assert np.abs(C.coeffs).max() < 1e-11


def test_div_of_curl_vanishes_identically():
    # conservative forms make div(curl(.)) cancel at the level of the
    # differentiation matrix, for arbitrary (even rough) coefficients
    _, rad = _grids()
    rng = np.random.default_rng(5)
    S = SpectralField(rad, 5)
    S.coeffs[:] = (rng.standard_normal(S.coeffs.shape)
                   + 1j * rng.standard_normal(S.coeffs.shape))
    C = spectral_curl(S)
    d = spectral_div(C)
    assert np.abs(d.coeffs).max() < 1e-9 * max(np.abs(C.coeffs).max(), 1.0)


def test_curl_of_decaying_phi_profile():
    # c_2 = r^(-l-1) on one mode: curl = -l(l+1) r^(-l-2) Y + l r^(-l-2) Psi
    _, rad = _grids(n_r=64)
    r = rad.r
    for l, m in [(1, 0), (2, 1), (3, -2)]:
        S = SpectralField(rad, 4)
        S.set_mode(l, m, 2, r ** (-l - 1.0))
        C = spectral_curl(S)
        k = mode_index(l, m)
        ref_r = -l * (l + 1.0) * r ** (-l - 2.0)
        ref_1 = l * r ** (-l - 2.0)
        assert np.abs(C.coeffs[k, 0] - ref_r).max() < 1e-9
        assert np.abs(C.coeffs[k, 1] - ref_1).max() < 1e-9
        assert np.abs(C.coeffs[k, 2]).max() == 0.0


def test_curl_radial_channel_feeds_phi_exactly():
    # c_r = r^(-l-2), no tangential input: curl has only the Phi channel
    # -c_r / r, a pointwise quotient with no differentiation error
    _, rad = _grids()
    r = rad.r
    S = SpectralField(rad, 3)
    S.set_mode(2, 2, 0, r ** -4.0)
    C = spectral_curl(S)
    k = mode_index(2, 2)
    assert np.abs(C.coeffs[k, 2] + r ** -5.0).max() < 1e-14
    assert np.abs(C.coeffs[k, 0]).max() == 0.0
    other = np.delete(C.coeffs, k, axis=0)
    assert np.abs(other).max() == 0.0


def test_curl_against_finite_differences():
    # independent check: Cartesian central differences of the synthesized
    # field reproduce the spectral curl at off-grid points
    _, rad = _grids()
    S = _random_spectral(rad, 4, seed=6)
    C = spectral_curl(S)
    rng = np.random.default_rng(8)
    pts = rng.uniform(-1.5, 1.5, (6, 3))
    pts += np.array([0.0, 0.0, 3.0])          # keep radii inside the shell
    h = 1e-3
    grad = np.empty((6, 3, 3), dtype=complex)  # grad[p, i, j] = d v_j / d x_i
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        grad[:, i, :] = (synthesize_at(S, pts + e) - synthesize_at(S, pts - e)) / (2 * h)
    fd_curl = np.stack([grad[:, 1, 2] - grad[:, 2, 1],
                        grad[:, 2, 0] - grad[:, 0, 2],
                        grad[:, 0, 1] - grad[:, 1, 0]], axis=-1)
    spec = synthesize_at(C, pts)
    scale = np.abs(spec).max()
    assert np.abs(fd_curl - spec).max() < 1e-4 * scale


def test_l0_tangential_channels_stay_zero():
    _, rad = _grids()
    S = SpectralField(rad, 2)
    with pytest.raises(ValueError):
        S.set_mode(0, 0, 1, rad.r)
    coeffs = np.ones((9, 3, rad.n_r), dtype=complex)
    T = SpectralField(rad, 2, coeffs)
    assert np.abs(T.coeffs[0, 1:]).max() == 0.0
