"""Shared fixtures: desk-scale lattice (2N = 500) and the heavy trajectories.

The expensive evolution runs are session-scoped and shared between the
unit tests and the acceptance suite.
"""

from __future__ import annotations

import numpy as np
import pytest

from nhssh import (
    Boundary,
    LatticeParams,
    PacketPairSpec,
    PacketSpec,
    build_hamiltonian,
    build_initial_state,
    build_pair_state,
    evolve,
    revival_period,
)

DELTA = 0.9
CELLS = 250


@pytest.fixture(scope="session")
def params250() -> LatticeParams:
    return LatticeParams(CELLS, DELTA, 2 * DELTA, Boundary.OPEN)


@pytest.fixture(scope="session")
def h250(params250):
    return build_hamiltonian(params250)


@pytest.fixture(scope="session")
def tau250(params250):
    return revival_period(params250)


@pytest.fixture(scope="session")
def traj_central(params250, h250, tau250):
    """kappa0 = pi/2, q = 0.02 packet over one full revival period.

    1200 steps so that tau/8, tau/4, tau/2 and tau land exactly on
    samples 150, 300, 600 and 1200.
    """
    spec = PacketSpec(np.pi / 2, 0.02)
    psi0 = build_initial_state(spec, params250)
    return evolve(psi0, h250, tau250 / 1200, 1200)


@pytest.fixture(scope="session")
def traj_pi6(params250, h250, tau250):
    """kappa0 = pi/6, q = 0.05 packet over half a period (translation run)."""
    spec = PacketSpec(np.pi / 6, 0.05)
    psi0 = build_initial_state(spec, params250)
    return evolve(psi0, h250, tau250 / 1600, 800)


@pytest.fixture(scope="session")
def pair_runs(params250, h250, tau250):
    """Both two-packet states plus their constituent singles, shared grid."""
    dt, steps = tau250 / 1600, 800
    out = {}
    for sign in (+1, -1):
        pair = PacketPairSpec(np.pi / 6, 5 * np.pi / 6, 0.05, sign).normalized(CELLS)
        pair_traj = evolve(build_pair_state(pair, params250), h250, dt, steps)
        spec1, spec2 = pair.single_specs(CELLS)
        traj1 = evolve(build_initial_state(spec1, params250), h250, dt, steps)
        traj2 = evolve(build_initial_state(spec2, params250), h250, dt, steps)
        out[sign] = (pair_traj, traj1, traj2)
    return out
