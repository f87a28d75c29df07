"""Three two-level emitters coupled to a multimode ring cavity, three-excitation sector.

Library layout:

* ``hilbert`` - occupation basis enumeration and indexing
* ``model`` - physical parameters, mode window, detunings, couplings
* ``dynamics`` - generator assembly (two independent routes) and RK4 integration
* ``observables`` - reduced qubit state, populations, negativity, GHZ fidelity
* ``experiments`` - figure-level runners and CSV output
* ``cli`` - the ``ringqed`` command
"""

from .dynamics import (
    Trajectory,
    assemble_appendix_a,
    assemble_generic,
    initial_state_all_excited,
    integrate,
)
from .experiments import (
    SCENARIOS,
    detect_retardation_kinks,
    fidelity_map,
    run_time_series,
    sweep_max_negativity,
)
from .hilbert import BasisState, SectorDimensions, count_amplitudes, enumerate_basis, index_of
from .model import (
    DEFAULT_CAVITY_LENGTH,
    DEFAULT_COUPLING_G,
    SystemParams,
    cooperativity,
    coupling,
    mode_detuning,
    mode_window,
)
from .observables import ghz_fidelity, negativity, partial_transpose, populations, reduce_qubits

__all__ = [
    "BasisState",
    "DEFAULT_CAVITY_LENGTH",
    "DEFAULT_COUPLING_G",
    "SCENARIOS",
    "SectorDimensions",
    "SystemParams",
    "Trajectory",
    "assemble_appendix_a",
    "assemble_generic",
    "cooperativity",
    "count_amplitudes",
    "coupling",
    "detect_retardation_kinks",
    "enumerate_basis",
    "fidelity_map",
    "ghz_fidelity",
    "index_of",
    "initial_state_all_excited",
    "integrate",
    "mode_detuning",
    "mode_window",
    "negativity",
    "partial_transpose",
    "populations",
    "reduce_qubits",
    "run_time_series",
    "sweep_max_negativity",
]

__version__ = "0.1.0"
