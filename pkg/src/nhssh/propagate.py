"""Numerically exact time evolution via the dense matrix exponential.

``psi(t) = expm(-i H t) psi(0)`` stays valid where H is defective (the
ring at its exceptional point evolves polynomially inside the Jordan
block), which rules out eigendecomposition-based propagation.  Each
sampling step is a machine-precision exponential, so the step size only
controls sampling resolution, not accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


def expm(A: np.ndarray) -> np.ndarray:
    """Matrix exponential by Pade scaling-and-squaring.

    Thin validation wrapper over the scipy implementation (order-13
    diagonal Pade with norm-based squaring), which is reliable for the
    non-normal matrices this package produces.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expm needs a square matrix, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError("expm input contains non-finite entries")
    with np.errstate(over="ignore", invalid="ignore"):
        out = scipy.linalg.expm(A)
    if not np.isfinite(out).all():
        raise OverflowError("matrix exponential overflowed; norm of the generator is pathological")
    return out


def propagator(H: np.ndarray, dt: float) -> np.ndarray:
    """One-step evolution operator U = expm(-i H dt)."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    return expm(-1j * np.asarray(H, dtype=complex) * dt)


@dataclass
class Trajectory:
    """Time-ordered record of one evolution run.

    ``profiles[k]`` holds the site probabilities |psi_l(t_k)|^2 (2N
    entries, 1-based site l maps to column l-1) and ``norms[k]`` the
    Dirac norm P(t_k).  Full states are kept only when requested.
    """

    times: np.ndarray
    profiles: np.ndarray
    norms: np.ndarray
    states: np.ndarray | None = None

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    def index_at(self, t: float) -> int:
        """Index of the sample nearest t; t must lie inside the span."""
        if t < self.times[0] - 0.5 * self.dt or t > self.times[-1] + 0.5 * self.dt:
            raise ValueError(f"t={t} outside the recorded span [{self.times[0]}, {self.times[-1]}]")
        return int(np.argmin(np.abs(self.times - t)))

    def profile_at(self, t: float) -> np.ndarray:
        return self.profiles[self.index_at(t)]


def evolve(
    state0: np.ndarray,
    H: np.ndarray,
    dt: float,
    steps: int,
    record_states: bool = False,
) -> Trajectory:
    """Propagate ``state0`` for ``steps`` uniform steps of size ``dt``.

    Samples at t = 0, dt, ..., steps*dt.  Profiles and Dirac norms are
    always recorded; amplitudes only when ``record_states`` is set.
    """
    psi = np.asarray(state0, dtype=complex).copy()
    H = np.asarray(H, dtype=complex)
    if psi.shape != (H.shape[0],):
        raise ValueError(f"state length {psi.shape} does not match H dimension {H.shape[0]}")
    if steps < 1:
        raise ValueError("steps must be >= 1")

    U = propagator(H, dt)
    n_samples = steps + 1
    profiles = np.empty((n_samples, psi.size))
    norms = np.empty(n_samples)
    states = np.empty((n_samples, psi.size), dtype=complex) if record_states else None

    for k in range(n_samples):
        if k:
            psi = U @ psi
        profiles[k] = np.abs(psi) ** 2
        norms[k] = np.vdot(psi, psi).real
        if states is not None:
            states[k] = psi

    times = np.arange(n_samples) * dt
    return Trajectory(times=times, profiles=profiles, norms=norms, states=states)
