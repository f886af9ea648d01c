import numpy as np
import pytest

from nhssh import (
    Boundary,
    ComplexBandError,
    LatticeParams,
    analytic_dispersion,
    build_hamiltonian,
    esm_spacing,
    full_spectrum,
    revival_period,
    verify_equal_spacing,
)


def test_two_site_hermitian():
    ev = full_spectrum(np.array([[0.0, 1.9], [1.9, 0.0]]))
    assert np.allclose(ev, [-1.9, 1.9])


def test_two_site_gain_loss():
    ev = full_spectrum(np.array([[1.8j, 1.9], [1.9, -1.8j]]))
    expected = np.sqrt(1.9**2 - 1.8**2)  # 0.60827625...
    assert np.allclose(sorted(ev.real), [-expected, expected], atol=1e-12)
    assert np.abs(ev.imag).max() < 1e-12


def test_ring_at_ep_has_zero_pair(params250):
    ring = LatticeParams(250, 0.9, 1.8, Boundary.PERIODIC)
    ev = full_spectrum(build_hamiltonian(ring))
    assert np.sort(np.abs(ev))[1] < 1e-6  # two coalescing zero levels


def test_full_spectrum_rejects_nonsquare():
    with pytest.raises(ValueError):
        full_spectrum(np.zeros((3, 4)))


def test_small_k_slope():
    # eps ~ sqrt(2 delta (1-delta)) * k at the band bottom
    params = LatticeParams(250, 0.9, 1.8)
    eps1, _ = analytic_dispersion(1, params)
    k1 = np.pi / 251
    assert eps1 / k1 == pytest.approx(np.sqrt(0.18), rel=1e-4)


def test_first_level_is_omega():
    params = LatticeParams(250, 0.9, 1.8)
    eps1, _ = analytic_dispersion(1, params)
    assert eps1 == pytest.approx(esm_spacing(params), rel=1e-4)


def test_band_top_value():
    # k -> pi: band factor (1+delta)+(1-delta) = 2, eps -> sqrt(4 - 3.24);
    # the n = N mode sits at k = N pi/(N+1), within 1e-4 of the limit
    params = LatticeParams(250, 0.9, 1.8)
    eps, phi = analytic_dispersion(250, params)
    assert eps == pytest.approx(np.sqrt(0.76), rel=1e-4)
    assert 0.0 < phi < np.pi / 2


def test_dispersion_complex_band_error():
    params = LatticeParams(250, 0.9, 1.8)
    with pytest.raises(ComplexBandError):
        analytic_dispersion(1, params, gamma=1.9)


def test_dispersion_index_range():
    params = LatticeParams(10, 0.9, 1.8)
    with pytest.raises(ValueError):
        analytic_dispersion(11, params)


def test_esm_spacing_values():
    params = LatticeParams(250, 0.9, 1.8)
    assert esm_spacing(params) == pytest.approx(np.sqrt(0.18) * np.pi / 251, rel=1e-14)
    assert revival_period(params) == pytest.approx(502 / np.sqrt(0.18), rel=1e-14)
    # delta = 0.5 maximizes delta*(1-delta)
    assert esm_spacing(LatticeParams(250, 0.5, 1.0)) == pytest.approx(
        np.sqrt(0.5) * np.pi / 251, rel=1e-14
    )
    assert revival_period(LatticeParams(250, 0.98, 1.96)) == pytest.approx(
        502 / np.sqrt(2 * 0.98 * 0.02), rel=1e-14
    )


def test_dispersion_tracks_numeric_levels(params250, h250):
    # the closed-form band sits a uniform ~2.7% below the true levels at
    # delta = 0.9 (strong-dimerization approximation); assert the envelope
    ev = full_spectrum(h250)
    positive = np.sort(ev.real[(np.abs(ev.imag) < 1e-8) & (ev.real > 0)])
    for n in range(1, 26):
        eps, _ = analytic_dispersion(n, params250)
        assert abs(positive[n - 1] - eps) / eps < 0.05


def test_equal_spacing_at_tuned_gain(params250, h250):
    report = verify_equal_spacing(full_spectrum(h250), 5, params250)
    assert report.ok
    assert max(report.spacing_deviations) < 0.10
    assert report.max_imag < 1e-6 * 2.0


def test_equal_spacing_single_level(params250, h250):
    report = verify_equal_spacing(full_spectrum(h250), 1, params250)
    assert report.ok and len(report.spacing_deviations) == 1
    assert report.spacing_deviations[0] < 0.10


def test_hermitian_chain_is_not_equally_spaced():
    # gamma = 0 keeps a gap of order 2*delta near zero, nothing like n*omega
    params = LatticeParams(250, 0.9, 0.0)
    report = verify_equal_spacing(full_spectrum(build_hamiltonian(params)), 5, params)
    assert report.ok  # levels are real, pairing works
    assert max(report.spacing_deviations) > 0.5


def _matches_as_multiset(left: np.ndarray, right: np.ndarray, tol: float) -> bool:
    # every value of `left` has a partner in `right` within tol
    dist = np.abs(left[:, None] - right[None, :])
    return bool(dist.min(axis=1).max() < tol)


def test_spectrum_minus_symmetry(params250, h250):
    ev = full_spectrum(h250)
    scale = np.abs(ev).max()
    assert _matches_as_multiset(-ev, ev, 1e-9 * scale)


@pytest.mark.parametrize("gamma", [0.9, 1.8, 2.2])
def test_spectrum_conjugation_pairing(gamma):
    # [PT, H] = 0 forces eigenvalues into (E, E*) pairs
    H = build_hamiltonian(LatticeParams(40, 0.9, gamma))
    ev = full_spectrum(H)
    scale = np.abs(ev).max()
    assert _matches_as_multiset(ev.conj(), ev, 1e-9 * scale)


def test_hermitian_spectrum_real():
    ev = full_spectrum(build_hamiltonian(LatticeParams(100, 0.9, 0.0)))
    assert np.abs(ev.imag).max() < 1e-10 * np.abs(ev).max()


@pytest.mark.parametrize("cells,delta,gamma", [(2, 0.5, 0.3), (3, 0.7, 0.9), (4, 0.9, 1.8)])
def test_characteristic_polynomial_residual(cells, delta, gamma):
    # brute force: each returned eigenvalue should nearly kill det(H - E I)
    H = build_hamiltonian(LatticeParams(cells, delta, gamma))
    ev = full_spectrum(H)
    scale = np.abs(ev).max()
    for k, e in enumerate(ev):
        det = np.linalg.det(H - e * np.eye(2 * cells))
        others = np.prod([np.abs(ej - e) for j, ej in enumerate(ev) if j != k])
        if others > 1e-12:
            assert abs(det) / others < 1e-9 * scale


def test_spectrum_sorted_by_abs_real():
    ev = full_spectrum(build_hamiltonian(LatticeParams(20, 0.6, 1.2)))
    key = np.abs(ev.real)
    assert np.all(np.diff(key) >= -1e-12)


def test_failure_report_when_levels_complex():
    # far above threshold the near-zero levels are complex; the report
    # flags it instead of raising
    params = LatticeParams(60, 0.9, 1.8)
    H = build_hamiltonian(params.at_gamma(2.6))
    report = verify_equal_spacing(full_spectrum(H), 5, params)
    assert not report.ok
    assert "near-zero" in report.message or "pairs" in report.message
