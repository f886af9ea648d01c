import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhssh import ConvergenceError, dilog, lerch_phi


def brute_lerch(z: complex, s: float, alpha: float, terms: int = 1_000_000) -> complex:
    """Independent oracle: plain partial sum, vectorized."""
    n = np.arange(terms, dtype=float)
    return complex(np.sum(np.power(complex(z), n) / (n + alpha) ** s))


def richardson_lerch_at_one(s: float, alpha: float, m: int = 200_000) -> float:
    """Oracle at z = 1: Richardson extrapolation of partial sums in 1/M."""
    s1 = brute_lerch(1.0, s, alpha, m).real
    s2 = brute_lerch(1.0, s, alpha, 2 * m).real
    s4 = brute_lerch(1.0, s, alpha, 4 * m).real
    r1, r2 = 2 * s2 - s1, 2 * s4 - s2  # kills the 1/M tail
    return 2 * r2 - r1  # and the 1/M^2 remainder


def test_lerch_at_zero():
    assert lerch_phi(0.0, 2, 0.5).value == pytest.approx(4.0, abs=1e-14)


def test_lerch_at_one_against_extrapolated_oracle():
    got = lerch_phi(1.0, 2, 0.5)
    assert got.value.real == pytest.approx(richardson_lerch_at_one(2, 0.5), abs=1e-9)
    assert got.value.real == pytest.approx(np.pi**2 / 2, abs=1e-10)
    assert got.est_error <= 1e-12


def test_lerch_interior_against_brute_force():
    got = lerch_phi(np.exp(-0.2), 2, 0.5)
    assert abs(got.value - brute_lerch(np.exp(-0.2), 2, 0.5)) < 1e-10


def test_lerch_on_circle_against_long_sum():
    # |1-z| well away from zero: a 10^7-term direct sum carries a tail
    # below 1e-13 by the summation-by-parts bound
    for angle in (0.7, 2.0, np.pi):
        z = np.exp(1j * angle)
        got = lerch_phi(z, 2, 0.5, tol=1e-12)
        ref = brute_lerch(z, 2, 0.5, terms=10_000_000)
        assert abs(got.value - ref) < 1e-10
        assert got.est_error <= 1e-12


def test_lerch_validation():
    with pytest.raises(ValueError):
        lerch_phi(1.5, 2, 0.5)
    with pytest.raises(ValueError):
        lerch_phi(0.5, 1.5, 0.5)
    with pytest.raises(ValueError):
        lerch_phi(0.5, 2, 0.0)


def test_lerch_unreachable_tolerance_reports_estimate():
    with pytest.raises(ConvergenceError) as err:
        lerch_phi(1.0, 2, 0.5, tol=1e-30)
    assert err.value.est_error > 1e-30
    assert err.value.terms_used > 0


def test_dilog_basel_values():
    assert dilog(1.0).value == pytest.approx(np.pi**2 / 6, abs=1e-10)
    assert dilog(-1.0).value == pytest.approx(-np.pi**2 / 12, abs=1e-10)


def test_dilog_half_identity():
    # Li2(1/2) = pi^2/12 - ln(2)^2/2, cross-checked against the raw sum
    expected = np.pi**2 / 12 - np.log(2.0) ** 2 / 2
    got = dilog(0.5)
    assert got.value == pytest.approx(expected, abs=1e-12)
    k = np.arange(1, 200)
    assert got.value == pytest.approx(np.sum(0.5**k / k**2), abs=1e-12)


def test_dilog_domain():
    with pytest.raises(ValueError):
        dilog(1.2)
    assert dilog(0.0).value == 0.0


def test_twenty_point_grid_against_brute_force():
    rng = np.random.default_rng(42)
    points = []
    for _ in range(14):
        r = rng.uniform(0.05, 0.95)
        ang = rng.uniform(0, 2 * np.pi)
        points.append(r * np.exp(1j * ang))
    points += [0.99, -0.99, 0.5j, np.exp(-0.2), -1.0, 1.0]
    assert len(points) == 20
    for z in points:
        s = 2.0 if abs(z) > 0.9 else rng.choice([2.0, 2.5, 3.0])
        alpha = rng.uniform(0.3, 1.5)
        if z == 1.0:
            ref = richardson_lerch_at_one(s, alpha)
        else:
            ref = brute_lerch(z, s, alpha, terms=2_000_000)
        got = lerch_phi(z, s, alpha)
        assert abs(got.value - ref) < 1e-10, f"z={z}, s={s}, alpha={alpha}"


@settings(max_examples=25, deadline=None)
@given(
    r=st.floats(min_value=0.0, max_value=0.9),
    angle=st.floats(min_value=0.0, max_value=2 * np.pi),
    s=st.floats(min_value=2.0, max_value=4.0),
    alpha=st.floats(min_value=0.2, max_value=2.0),
)
def test_interior_matches_brute_property(r, angle, s, alpha):
    z = r * np.exp(1j * angle)
    got = lerch_phi(z, s, alpha)
    ref = brute_lerch(z, s, alpha, terms=400_000)
    assert abs(got.value - ref) < 1e-10
    assert got.est_error <= 1e-12
