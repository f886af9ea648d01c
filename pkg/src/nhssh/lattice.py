"""Non-Hermitian SSH chain: Hamiltonian and symmetry operators.

Conventions used throughout the package:

* A lattice of ``N`` unit cells has ``2N`` sites.  Site numbering is
  1-based in every interface: site ``2j-1`` is the A site of cell ``j``
  (gain, ``+i*gamma``), site ``2j`` is the B site (loss, ``-i*gamma``).
* Hopping amplitudes are ``1+delta`` inside a cell and ``1-delta``
  between cells, with ``delta`` in (0, 1).  The hopping scale sets the
  unit of time (J = 1).
* The ring (periodic boundary) reaches its exceptional point at
  ``gamma = gamma_c = 2*delta``; the open chain is obtained by removing
  one weak bond, keeping N strong and N-1 weak bonds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Boundary(enum.Enum):
    OPEN = "open"
    PERIODIC = "periodic"

    @classmethod
    def parse(cls, text: str) -> "Boundary":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown boundary {text!r}; expected 'open' or 'periodic'") from None


@dataclass(frozen=True)
class LatticeParams:
    """Model definition for one gain/loss SSH lattice."""

    cells: int
    delta: float
    gamma: float
    boundary: Boundary = Boundary.OPEN

    def __post_init__(self):
        if not isinstance(self.cells, int) or self.cells < 2:
            raise ValueError(f"cells must be an integer >= 2, got {self.cells}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.boundary is Boundary.PERIODIC and self.cells % 2:
            raise ValueError("periodic boundary requires an even number of cells")

    @property
    def gamma_c(self) -> float:
        """Exceptional-point gain of the corresponding ring, 2*delta."""
        return 2.0 * self.delta

    @property
    def n_sites(self) -> int:
        return 2 * self.cells

    def at_gamma(self, gamma: float) -> "LatticeParams":
        """Same lattice with a different gain value."""
        return LatticeParams(self.cells, self.delta, gamma, self.boundary)


def build_hamiltonian(params: LatticeParams) -> np.ndarray:
    """Dense 2N x 2N single-particle Hamiltonian.

    Real symmetric hoppings plus the staggered imaginary potential
    ``+i*gamma`` on A sites and ``-i*gamma`` on B sites.  The matrix is
    complex symmetric (H == H.T) for every parameter choice.
    """
    N = params.cells
    n = 2 * N
    H = np.zeros((n, n), dtype=complex)
    strong = 1.0 + params.delta
    weak = 1.0 - params.delta
    for j in range(N):
        a, b = 2 * j, 2 * j + 1
        H[a, b] = H[b, a] = strong
        H[a, a] = 1j * params.gamma
        H[b, b] = -1j * params.gamma
    for j in range(N - 1):
        b, a_next = 2 * j + 1, 2 * j + 2
        H[b, a_next] = H[a_next, b] = weak
    if params.boundary is Boundary.PERIODIC:
        H[n - 1, 0] = H[0, n - 1] = weak
    return H


def symmetry_operator(kind: str, cells: int) -> np.ndarray:
    """Parity P or sublattice-sign C as a dense 2N x 2N matrix.

    P exchanges the A site of cell j with the B site of cell N+1-j;
    C is diagonal with +1 on A sites and -1 on B sites.  Both square
    to the identity.
    """
    if cells < 1:
        raise ValueError("cells must be >= 1")
    n = 2 * cells
    if kind == "C":
        d = np.ones(n)
        d[1::2] = -1.0
        return np.diag(d)
    if kind == "P":
        P = np.zeros((n, n))
        for j in range(1, cells + 1):
            P[2 * (cells + 1 - j) - 1, 2 * j - 2] = 1.0  # a_j -> b_{N+1-j}
            P[2 * (cells + 1 - j) - 2, 2 * j - 1] = 1.0  # b_j -> a_{N+1-j}
        return P
    raise ValueError(f"unknown symmetry operator kind {kind!r}; expected 'P' or 'C'")


def apply_antilinear(kind: str, state: np.ndarray) -> np.ndarray:
    """Apply T, PT or CT to a state vector.

    T is plain complex conjugation; PT and CT compose it with the real
    involutions P and C (the order does not matter).
    """
    state = np.asarray(state, dtype=complex)
    if state.ndim != 1 or state.size % 2:
        raise ValueError("state must be a flat vector of even length")
    if kind == "T":
        return state.conj()
    cells = state.size // 2
    if kind == "PT":
        return symmetry_operator("P", cells) @ state.conj()
    if kind == "CT":
        out = state.conj().copy()
        out[1::2] *= -1.0
        return out
    raise ValueError(f"unknown antilinear kind {kind!r}; expected 'T', 'PT' or 'CT'")


def symmetry_residuals(H: np.ndarray, cells: int) -> dict:
    """Max-entry residuals of the PT commutation and CT anticommutation.

    ``pt_residual = max |P conj(H) P - H|`` and
    ``ct_residual = max |C conj(H) C + H|``; both vanish to machine
    precision for Hamiltonians from :func:`build_hamiltonian`.
    """
    H = np.asarray(H)
    n = 2 * cells
    if H.shape != (n, n):
        raise ValueError(f"H has shape {H.shape}, expected ({n}, {n})")
    P = symmetry_operator("P", cells)
    C = symmetry_operator("C", cells)
    pt = np.abs(P @ H.conj() @ P - H).max()
    ct = np.abs(C @ H.conj() @ C + H).max()
    return {"pt_residual": float(pt), "ct_residual": float(ct)}
