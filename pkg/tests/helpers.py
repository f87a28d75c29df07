"""Shared reference parameters and grids for the heavy test fixtures."""

import numpy as np

from ringqed.model import DEFAULT_COUPLING_G, SAME_LOCATION, SystemParams

LOSS_RATE = 0.1 * DEFAULT_COUPLING_G

# sampling grid for the retardation runs: thirds of the round trip on-grid
KINK_DT = 1.0 / 30000.0
KINK_STRIDE = 100
KINK_T_MAX = 2.0

MAP_COOPS = tuple(np.geomspace(0.005, 120.0, 12))
MAP_T_GRID = np.linspace(0.0, 2.5, 201)


def reference_params(n_modes, positions=SAME_LOCATION, lossy=False):
    rate = LOSS_RATE if lossy else 0.0
    return SystemParams(
        n_modes=n_modes,
        cavity_length=994.0,
        qubit_positions=positions,
        coupling_g=DEFAULT_COUPLING_G,
        gamma=rate,
        kappa=rate,
    )
