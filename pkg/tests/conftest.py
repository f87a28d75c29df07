"""Session-wide fixtures for the expensive reference trajectories.

Each fixture is computed once per session and shared between the acceptance
criteria and the property tests.
"""

import numpy as np
import pytest

from helpers import KINK_DT, KINK_STRIDE, KINK_T_MAX, MAP_COOPS, MAP_T_GRID, reference_params
from ringqed.experiments import fidelity_map, run_time_series, sweep_max_negativity
from ringqed.model import SAME_LOCATION, SEPARATED_POSITIONS


@pytest.fixture(scope="session")
def fig2_lossless():
    """Single mode, same location, no losses, t <= 5 L/c at the default step."""
    return run_time_series(reference_params(1), t_max=5.0, dt=1e-4, stride=100)


@pytest.fixture(scope="session")
def fig2_lossy():
    """Single mode, separated emitters, kappa = gamma = 0.1|G|."""
    return run_time_series(
        reference_params(1, SEPARATED_POSITIONS, lossy=True), t_max=5.0, dt=1e-4, stride=100
    )


@pytest.fixture(scope="session")
def n7_series_pair():
    """Seven modes, lossless, at the default step and at half the step."""
    params = reference_params(7, SEPARATED_POSITIONS)
    coarse = run_time_series(params, t_max=5.0, dt=1e-4, stride=100)
    fine = run_time_series(params, t_max=5.0, dt=5e-5, stride=200)
    return coarse, fine


@pytest.fixture(scope="session")
def retardation_same():
    return run_time_series(
        reference_params(31), t_max=KINK_T_MAX, dt=KINK_DT, stride=KINK_STRIDE
    )


@pytest.fixture(scope="session")
def retardation_separated():
    return run_time_series(
        reference_params(31, SEPARATED_POSITIONS), t_max=KINK_T_MAX, dt=KINK_DT, stride=KINK_STRIDE
    )


@pytest.fixture(scope="session")
def retardation_single_mode():
    return run_time_series(
        reference_params(1), t_max=KINK_T_MAX, dt=KINK_DT, stride=KINK_STRIDE
    )


@pytest.fixture(scope="session")
def revival_pair():
    """31 modes, lossless, both placements, long enough to catch the t~3 revival."""
    same = run_time_series(reference_params(31), t_max=3.5, dt=1e-4, stride=100)
    separated = run_time_series(
        reference_params(31, SEPARATED_POSITIONS), t_max=3.5, dt=1e-4, stride=100
    )
    return same, separated


@pytest.fixture(scope="session")
def sweep_points():
    """Reduced sweep plus the plateau triple, all four scenarios."""
    modes = list(range(1, 10)) + [15, 16, 17]
    return sweep_max_negativity(
        reference_params(1), modes, t_max=5.0, dt=2e-4, stride=50
    )


@pytest.fixture(scope="session")
def map_grids():
    """N=7 fidelity maps, both placements, renormalized and raw conventions."""
    grids = {}
    for label, positions in (("same", SAME_LOCATION), ("sep", SEPARATED_POSITIONS)):
        base = reference_params(7, positions)
        for convention, renorm in (("renorm", True), ("raw", False)):
            points = fidelity_map(base, list(MAP_COOPS), MAP_T_GRID, dt=2.5e-4, renormalize=renorm)
            grid = np.array([p.fidelity for p in points]).reshape(len(MAP_T_GRID), len(MAP_COOPS))
            grids[label, convention] = grid
    return grids
