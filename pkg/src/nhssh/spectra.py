"""Exact diagonalization and the analytic level structure.

The open chain tuned to ``gamma = gamma_c`` carries equally spaced
levels ``E_n = +/- n*omega`` near zero energy, with
``omega = sqrt(2*delta*(1-delta))*pi/(N+1)``.  This module computes the
full complex spectrum numerically and checks it against that analytic
structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import LatticeParams


class EigensolverError(RuntimeError):
    """QR iteration failed to converge within the LAPACK iteration cap."""


class ComplexBandError(ValueError):
    """Dispersion argument went negative: the requested gain exceeds the band."""


def full_spectrum(H: np.ndarray) -> np.ndarray:
    """All eigenvalues of a dense complex matrix.

    Sorted by |Re|, then Re, then Im, so repeated runs produce identical
    output.  Defective inputs (ring at the exceptional point) return
    clustered eigenvalues rather than failing.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"H must be square, got shape {H.shape}")
    try:
        ev = np.linalg.eigvals(H)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigenvalue iteration did not converge: {exc}") from exc
    order = np.lexsort((ev.imag, ev.real, np.abs(ev.real)))
    return ev[order]


def esm_spacing(params: LatticeParams) -> float:
    """Analytic near-zero level spacing omega at the tuned gain."""
    return np.sqrt(2.0 * params.delta * (1.0 - params.delta)) * np.pi / (params.cells + 1)


def revival_period(params: LatticeParams) -> float:
    """tau = 2*pi/omega, the full revival period of low-lying packets."""
    return 2.0 * np.pi / esm_spacing(params)


def analytic_dispersion(n: int, params: LatticeParams, gamma: float | None = None):
    """Analytic level ``eps_k`` and mixing angle ``phi_k`` for mode n.

    ``k = n*pi/(N+1)`` and ``eps_k = sqrt(((1+delta)-(1-delta)cos k)^2 - gamma^2)``
    with ``gamma`` defaulting to the tuned value ``gamma_c = 2*delta``
    (the regime where the expression is a real band).  ``phi_k`` solves
    ``tan(phi_k) = gamma/eps_k`` on the principal branch (0, pi/2].

    Returns
    -------
    (eps, phi) : tuple of floats
    """
    N = params.cells
    if not 1 <= n <= N:
        raise ValueError(f"level index n must lie in 1..{N}, got {n}")
    g = params.gamma_c if gamma is None else gamma
    k = n * np.pi / (N + 1)
    band = (1.0 + params.delta) - (1.0 - params.delta) * np.cos(k)
    arg = band * band - g * g
    if arg < 0.0:
        raise ComplexBandError(
            f"gamma={g} exceeds the band value {band:.6g} at n={n}; level is complex"
        )
    eps = float(np.sqrt(arg))
    phi = float(np.arctan2(g, eps))
    return eps, phi


@dataclass
class SpectrumReport:
    """Near-zero level pairing against the equal-spacing prediction."""

    eigenvalues: np.ndarray
    esm_spacing: float
    max_imag: float
    spacing_deviations: list = field(default_factory=list)
    levels: list = field(default_factory=list)
    ok: bool = True
    message: str = ""


def verify_equal_spacing(
    eigenvalues: np.ndarray,
    n_max: int,
    params: LatticeParams,
    im_tol: float | None = None,
) -> SpectrumReport:
    """Pair the 2*n_max eigenvalues nearest zero into +/-E_n and grade them.

    ``spacing_deviations[n-1] = |E_n - n*omega| / (n*omega)`` where E_n is
    the pair-averaged magnitude.  Levels count as near-real when
    ``|Im E| < im_tol`` (default ``1e-6`` times the spectral radius); if
    fewer than ``2*n_max`` qualify the report comes back with ``ok=False``
    instead of raising.
    """
    ev = np.asarray(eigenvalues, dtype=complex)
    omega = esm_spacing(params)
    scale = np.abs(ev).max() if ev.size else 1.0
    if im_tol is None:
        im_tol = 1e-6 * scale

    nearest = ev[np.argsort(np.abs(ev))][: 2 * n_max]
    max_imag = float(np.abs(nearest.imag).max()) if nearest.size else 0.0
    real_enough = nearest[np.abs(nearest.imag) < im_tol]
    if real_enough.size < 2 * n_max:
        return SpectrumReport(
            eigenvalues=ev,
            esm_spacing=omega,
            max_imag=max_imag,
            ok=False,
            message=(
                f"only {real_enough.size} of {2 * n_max} near-zero levels have "
                f"|Im E| < {im_tol:.3g}"
            ),
        )

    pos = np.sort(real_enough.real[real_enough.real > 0])
    neg = np.sort(-real_enough.real[real_enough.real < 0])
    if len(pos) != n_max or len(neg) != n_max:
        return SpectrumReport(
            eigenvalues=ev,
            esm_spacing=omega,
            max_imag=max_imag,
            ok=False,
            message=f"levels do not split into +/- pairs ({len(pos)} positive, {len(neg)} negative)",
        )

    levels = 0.5 * (pos + neg)
    deviations = [float(abs(levels[n - 1] - n * omega) / (n * omega)) for n in range(1, n_max + 1)]
    return SpectrumReport(
        eigenvalues=ev,
        esm_spacing=omega,
        max_imag=max_imag,
        spacing_deviations=deviations,
        levels=[float(e) for e in levels],
    )
