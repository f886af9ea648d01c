"""Closed-form oracles for the tuned chain (gamma = gamma_c).

Everything here is an independent analytic prediction, meant to be
compared against the numerically exact evolution:

* the analytic eigenstate family and its symmetry phases,
* the compact form of the evolved wave packet,
* the Dirac-norm formula built from the Lerch transcendent and the
  dilogarithm, with its q = 0 triangle-wave reduction,
* the coalescing-mode overlap estimate.

Normalization policy: packets are coefficient-normalized,
``sum_{n,sigma} |c_n^sigma|^2 = 1``.  Dirac-normalizing the initial
state is ill conditioned at the tuned gain (the two eigenstate branches
nearly coalesce, so P(0) is tiny) and would contradict the norm growth
curves this package reproduces; the coefficient convention is the one
consistent with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .lattice import LatticeParams
from .spectra import analytic_dispersion, esm_spacing
from .specfun import dilog, lerch_phi

# exp(-q n)/n weights below exp(-40) never reach float relevance
COEFF_CUTOFF = 40.0


@dataclass(frozen=True)
class PacketSpec:
    """Shape of one localized packet: position kappa0, decay q, scale lam.

    ``lam`` is usually left unset and filled in by the normalization
    policy for a given lattice size via :meth:`normalized`.
    """

    kappa0: float
    q: float = 0.0
    lam: float | None = None

    def __post_init__(self):
        if not 0.0 < self.kappa0 < math.pi:
            raise ValueError(f"kappa0 must lie strictly inside (0, pi), got {self.kappa0}")
        if self.q < 0.0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if self.lam is not None and self.lam <= 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")

    def normalized(self, cells: int) -> "PacketSpec":
        """Copy with lam fixed by coefficient normalization for this size."""
        if self.lam is not None:
            return self
        return replace(self, lam=coefficient_lambda(self.kappa0, self.q, cells))


def coefficient_lambda(kappa0: float, q: float, cells: int) -> float:
    """Scale constant from ``2 lam^2 sum_n sin^2(n kappa0) e^{-2qn}/n^2 = 1``."""
    n = np.arange(1, cells + 1, dtype=float)
    total = 2.0 * np.sum(np.sin(n * kappa0) ** 2 * np.exp(-2.0 * q * n) / n**2)
    return 1.0 / math.sqrt(total)


def packet_coefficients(spec: PacketSpec, cells: int) -> np.ndarray:
    """Eigenbasis coefficients c_n for the + branch; the - branch is -c_n.

    Terms with ``n*q > 40`` are dropped (below machine relevance).
    """
    spec = spec.normalized(cells)
    n = np.arange(1, cells + 1, dtype=float)
    c = spec.lam * np.sin(n * spec.kappa0) * np.exp(-spec.q * n) / n
    if spec.q > 0.0:
        c[n * spec.q > COEFF_CUTOFF] = 0.0
    return c


def _branch_constants(cells: int) -> tuple[complex, complex]:
    # principal square roots of +/- (-1)^N / (N+1); this phase choice makes
    # the PT and CT eigenstate identities exact
    sgn = (-1.0) ** cells
    c_plus = complex(np.sqrt(complex(sgn / (cells + 1))))
    c_minus = complex(np.sqrt(complex(-sgn / (cells + 1))))
    return c_plus, c_minus


def analytic_eigenstate(
    n: int, sign: int, params: LatticeParams, approx: bool = False
) -> np.ndarray:
    """Analytic eigenstate of the tuned open chain, Dirac-normalized.

    A-site amplitude ``C (-1)^j sin(kj) e^{+i s phi_k/2}`` and B-site
    amplitude ``s C (-1)^j sin(kj) e^{-i s phi_k/2}`` with s = +/-1 and
    ``C = sqrt(s (-1)^N/(N+1))``.  With ``approx=True`` the mixing angle
    is frozen at ``phi_k = pi/2`` (deep strong-dimerization form).
    """
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    N = params.cells
    _, phi = analytic_dispersion(n, params)
    if approx:
        phi = np.pi / 2.0
    c_plus, c_minus = _branch_constants(N)
    C = c_plus if sign > 0 else c_minus
    j = np.arange(1, N + 1, dtype=float)
    envelope = C * (-1.0) ** j * np.sin(n * np.pi * j / (N + 1))
    state = np.empty(2 * N, dtype=complex)
    state[0::2] = envelope * np.exp(1j * sign * phi / 2.0)
    state[1::2] = sign * envelope * np.exp(-1j * sign * phi / 2.0)
    return state


def superpose_eigenstates(c_plus_coeffs: np.ndarray, params: LatticeParams, t: float = 0.0) -> np.ndarray:
    """State ``sum_n c_n (e^{-i eps_n t} |n,+> - e^{+i eps_n t} |n,->)``.

    Assembled through per-mode sublattice weights and one sine matrix
    product, which is exactly the eigenstate sum but O(N^2) instead of
    O(N^3).  All packet builders funnel through here.
    """
    N = params.cells
    c = np.asarray(c_plus_coeffs, dtype=complex)
    if c.shape != (N,):
        raise ValueError(f"expected {N} coefficients, got {c.shape}")
    n = np.arange(1, N + 1)
    eps = np.empty(N)
    phi = np.empty(N)
    for i, ni in enumerate(n):
        eps[i], phi[i] = analytic_dispersion(int(ni), params)
    cp, cm = _branch_constants(N)
    fp = c * np.exp(-1j * eps * t)
    fm = -c * np.exp(+1j * eps * t)
    a_weight = fp * cp * np.exp(1j * phi / 2) + fm * cm * np.exp(-1j * phi / 2)
    b_weight = fp * cp * np.exp(-1j * phi / 2) - fm * cm * np.exp(1j * phi / 2)
    j = np.arange(1, N + 1)
    sine = np.sin(np.outer(j, n) * (np.pi / (N + 1)))
    alternating = (-1.0) ** j
    state = np.empty(2 * N, dtype=complex)
    state[0::2] = alternating * (sine @ a_weight)
    state[1::2] = alternating * (sine @ b_weight)
    return state


def _sawtooth(theta: np.ndarray, q: float) -> np.ndarray:
    """Abel-summed sawtooth ``sum_n e^{-qn} sin(n theta)/n``.

    For q > 0 this is ``arctan(sin theta / (e^q - cos theta))``; the
    q = 0 limit is the periodic triangular ramp ``(pi - theta mod 2pi)/2``,
    evaluated directly to avoid the 0/0 at theta = 0.
    """
    if q > 0.0:
        return np.arctan(np.sin(theta) / (np.exp(q) - np.cos(theta)))
    return 0.5 * (np.pi - np.mod(theta, 2.0 * np.pi))


def evolved_state_closed_form(
    t: float,
    spec: PacketSpec,
    params: LatticeParams,
    branch_shift: bool = True,
) -> np.ndarray:
    """Compact analytic form of the evolved packet at time t.

    Amplitudes are ``Lam_N sum_{rho,ups,eta} w(theta) (-1)^j rho ups eta
    e^{i eta pi/4}`` distributed on the B site (eta = +1) and A site
    (eta = -1) of cell j, with ``w`` the sawtooth above and
    ``theta = rho kappa0 + ups pi j/(N+1) + omega (t - eta/(4 delta))``.

    The ``eta/(4 delta)`` term is a per-sublattice time offset carrying
    the first-order deviation of the mixing angle from pi/2 (the phases
    ``e^{+/- i phi_k/2}`` expand to ``e^{+/- i pi/4}`` times a shift of
    the time argument by ``1/(4 delta)``, opposite on the two
    sublattices).  ``branch_shift=False`` drops it, which is useful for
    measuring how much the correction matters: without it the two
    branches cancel exactly at t = 0.
    """
    N = params.cells
    spec = spec.normalized(N)
    omega = esm_spacing(params)
    lam_n = (spec.lam / 2.0) * complex(np.sqrt(complex((-1.0) ** N / (N + 1))))
    j = np.arange(1, N + 1, dtype=float)
    cell_phase = np.pi * j / (N + 1)
    alternating = (-1.0) ** j
    state = np.zeros(2 * N, dtype=complex)
    for rho in (1.0, -1.0):
        for ups in (1.0, -1.0):
            for eta in (1, -1):
                shift = eta / (4.0 * params.delta) if branch_shift else 0.0
                theta = rho * spec.kappa0 + ups * cell_phase + omega * (t - shift)
                w = _sawtooth(theta, spec.q)
                prefactor = lam_n * rho * ups * eta * np.exp(1j * eta * np.pi / 4.0)
                # eta = +1 lands on B sites (2j), eta = -1 on A sites (2j-1)
                offset = 1 if eta > 0 else 0
                state[offset::2] += prefactor * alternating * w
    return state


def dirac_norm_closed_form(
    t,
    spec: PacketSpec,
    params: LatticeParams,
    via_series: bool = False,
    tol: float = 1e-9,
):
    """Closed-form Dirac norm P(t) of the evolved kappa0 = pi/2 packet.

    ``P(t) = -(lam^2 e^{-2q}/2) Re[e^{-2 i omega t} Phi(e^{-4(q + i omega t)}, 2, 1/2)]
    + lam^2 (Li2(e^{-2q}) - Li2(-e^{-2q}))``.

    At q = 0 the expression collapses to a triangle wave of slope
    ``2 lam^2 pi^2 / tau`` and period tau/2, which is returned directly
    unless ``via_series`` forces the Lerch evaluation (then the argument
    sits on the unit circle and the boundary machinery is exercised).

    Accepts scalar or array t.
    """
    if abs(spec.kappa0 - np.pi / 2.0) > 1e-9:
        raise ValueError("the Dirac-norm formula is derived for kappa0 = pi/2 only")
    spec = spec.normalized(params.cells)
    omega = esm_spacing(params)
    tau = 2.0 * np.pi / omega
    lam2 = spec.lam**2
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))

    if spec.q == 0.0 and not via_series:
        phase = np.mod(t_arr, tau / 2.0)
        tri = np.where(phase < tau / 4.0, phase, tau / 2.0 - phase)
        out = (2.0 * lam2 * np.pi**2 / tau) * tri
        return float(out[0]) if np.isscalar(t) or np.ndim(t) == 0 else out

    decay = math.exp(-2.0 * spec.q)
    constant = lam2 * (dilog(decay, tol=tol).value - dilog(-decay, tol=tol).value).real
    out = np.empty_like(t_arr)
    for i, ti in enumerate(t_arr):
        z = np.exp(-4.0 * (spec.q + 1j * omega * ti))
        phi_val = lerch_phi(z, 2.0, 0.5, tol=tol).value
        out[i] = -0.5 * lam2 * decay * (np.exp(-2j * omega * ti) * phi_val).real + constant
    return float(out[0]) if np.isscalar(t) or np.ndim(t) == 0 else out


def triangle_wave_norm(t, spec: PacketSpec, params: LatticeParams):
    """The explicit q = 0 triangle wave (slope ``2 lam^2 pi^2/tau``, period tau/2)."""
    return dirac_norm_closed_form(t, replace(spec, q=0.0), params, via_series=False)


def overlap_formula(spec: PacketSpec, params: LatticeParams) -> float:
    """Estimated overlap magnitude of the packet with the coalescing mode.

    ``sqrt(delta (1-delta)) lam / (N delta) * arctan(sin kappa0 / sinh q)``;
    at q = 0 the arctan saturates at pi/2 for sin(kappa0) > 0.
    """
    spec = spec.normalized(params.cells)
    s = math.sin(spec.kappa0)
    if spec.q == 0.0:
        angle = math.pi / 2.0 if s > 0.0 else 0.0
    else:
        angle = math.atan(s / math.sinh(spec.q))
    return (
        math.sqrt(params.delta * (1.0 - params.delta))
        * spec.lam
        / (params.cells * params.delta)
        * angle
    )
