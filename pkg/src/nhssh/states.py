"""Initial-state builders and profile measurements.

Packets live in the analytic eigenbasis of the tuned chain; the builders
therefore depend only on ``cells`` and ``delta`` (through
``gamma_c = 2*delta``), never on the gain actually used for evolution.
That separation is what lets the same packet be propagated below, at and
above threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .lattice import LatticeParams
from .oracle import PacketSpec, packet_coefficients, superpose_eigenstates

SMOOTH_WINDOW = 4  # suppresses A/B sublattice alternation in profiles


@dataclass(frozen=True)
class PacketPairSpec:
    """Two packets at kappa01 and kappa02 superposed with a relative sign."""

    kappa01: float
    kappa02: float
    q: float = 0.0
    relative_sign: int = +1
    lam: float | None = None

    def __post_init__(self):
        for name, k in (("kappa01", self.kappa01), ("kappa02", self.kappa02)):
            if not 0.0 < k < math.pi:
                raise ValueError(f"{name} must lie strictly inside (0, pi), got {k}")
        if self.kappa01 == self.kappa02:
            raise ValueError("kappa01 and kappa02 must differ for a genuine two-packet state")
        if self.q < 0.0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if self.relative_sign not in (+1, -1):
            raise ValueError("relative_sign must be +1 or -1")

    def normalized(self, cells: int) -> "PacketPairSpec":
        if self.lam is not None:
            return self
        n = np.arange(1, cells + 1, dtype=float)
        weights = (np.sin(n * self.kappa01) + self.relative_sign * np.sin(n * self.kappa02)) * np.exp(
            -self.q * n
        ) / n
        total = np.sum(weights**2)
        return replace(self, lam=1.0 / math.sqrt(total))

    def single_specs(self, cells: int) -> tuple[PacketSpec, PacketSpec]:
        """The two constituent packets carrying the pair's shared scale."""
        norm = self.normalized(cells)
        lam_single = norm.lam / math.sqrt(2.0)
        return (
            PacketSpec(self.kappa01, self.q, lam=lam_single),
            PacketSpec(self.kappa02, self.q, lam=lam_single),
        )


def build_initial_state(spec: PacketSpec, params: LatticeParams) -> np.ndarray:
    """Localized packet ``sum_{n,sigma} sigma lam sin(n kappa0) e^{-qn}/n |n,sigma>``.

    Centered near site ``2N kappa0/pi``; coefficient-normalized unless
    the spec carries an explicit scale.
    """
    c = packet_coefficients(spec, params.cells)
    return superpose_eigenstates(c, params)


def build_pair_state(pair: PacketPairSpec, params: LatticeParams) -> np.ndarray:
    """Two-packet state with coefficients ``(lam/sqrt2) sigma [sin(n k1) +/- sin(n k2)] e^{-qn}/n``."""
    pair = pair.normalized(params.cells)
    N = params.cells
    n = np.arange(1, N + 1, dtype=float)
    c = (
        (pair.lam / math.sqrt(2.0))
        * (np.sin(n * pair.kappa01) + pair.relative_sign * np.sin(n * pair.kappa02))
        * np.exp(-pair.q * n)
        / n
    )
    return superpose_eigenstates(c, params)


def coalescing_state(cells: int) -> np.ndarray:
    """Zero mode of the conjugate ring Hamiltonian at gamma = 2*delta.

    ``(1/sqrt(2N)) sum_j (-1)^j (|2j-1> + i |2j>)``; unit Dirac norm.
    Requires even N so the alternating sign closes around the ring.
    """
    if cells % 2:
        raise ValueError("coalescing state needs an even cell count")
    j = np.arange(1, cells + 1, dtype=float)
    state = np.empty(2 * cells, dtype=complex)
    state[0::2] = (-1.0) ** j
    state[1::2] = 1j * (-1.0) ** j
    return state / math.sqrt(2 * cells)


def direct_coalescing_overlap(spec: PacketSpec, params: LatticeParams) -> complex:
    """Numerical ``<phi_c | psi(0)>``, the companion check of the overlap formula."""
    return complex(np.vdot(coalescing_state(params.cells), build_initial_state(spec, params)))


def smoothed_profile(profile: np.ndarray, window: int = SMOOTH_WINDOW) -> np.ndarray:
    kernel = np.ones(window) / window
    return np.convolve(profile, kernel, mode="same")


def fwhm_interval(profile: np.ndarray, window: int = SMOOTH_WINDOW) -> tuple[int, int]:
    """First and last 1-based site where the smoothed profile reaches half max."""
    sm = smoothed_profile(np.asarray(profile, dtype=float), window)
    idx = np.nonzero(sm >= 0.5 * sm.max())[0]
    return int(idx[0]) + 1, int(idx[-1]) + 1


def shape_distance(profile_a: np.ndarray, profile_b: np.ndarray, shift: int, slack: int = 5) -> float:
    """L1 distance between two packet shapes after translating b by ~shift.

    Shapes are mass-normalized, smoothed profiles (the same envelope the
    width measurement uses), and the integer shift is optimized within
    ``slack`` sites: packet centers sit on the site grid only up to a
    fraction of a site, which a pure integer roll cannot absorb.
    """
    a = smoothed_profile(np.asarray(profile_a, dtype=float))
    b = smoothed_profile(np.asarray(profile_b, dtype=float))
    a = a / a.sum()
    b = b / b.sum()
    return min(
        float(np.abs(a - np.roll(b, shift + d)).sum()) for d in range(-slack, slack + 1)
    )


@dataclass(frozen=True)
class Measurement:
    dirac_norm: float
    center: float
    width: float


def measure(state_or_profile: np.ndarray, window: int = SMOOTH_WINDOW) -> Measurement:
    """Dirac norm, probability-weighted mean site and FWHM width.

    Accepts either a complex state vector or a real probability profile.
    The width is read off a ``window``-site moving average so that the
    A/B alternation does not fake narrow features.
    """
    arr = np.asarray(state_or_profile)
    profile = np.abs(arr) ** 2 if np.iscomplexobj(arr) else arr.astype(float)
    total = profile.sum()
    if total <= 0.0:
        raise ValueError("cannot measure a zero state")
    sites = np.arange(1, profile.size + 1)
    center = float((sites * profile).sum() / total)
    lo, hi = fwhm_interval(profile, window)
    return Measurement(dirac_norm=float(total), center=center, width=float(hi - lo + 1))
