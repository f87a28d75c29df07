"""Linear generator of the sector dynamics and its time integration.

The state vector A of complex amplitudes obeys dA/dt = M A, where M folds
the loss rates into complex frequencies: every excited emitter contributes
-gamma/2 and every photon contributes -i*(detuning - i*kappa/2) to the
diagonal, while the emitter-photon exchange terms carry the traveling-wave
coupling phases.  Two independent constructions of M are provided:

* :func:`assemble_generic` applies the second-quantized raising/lowering
  operators state by state and works for any (atoms, excitations) sector.
* :func:`assemble_appendix_a` writes out the eight coupled amplitude
  families of the three-emitter, three-excitation problem explicitly, with
  the sqrt(2)/sqrt(3) bosonic factors and index restrictions spelled out.

Entrywise agreement of the two matrices is the central correctness check of
this module and is enforced by the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .hilbert import BasisState, SectorDimensions, enumerate_basis, sector_dimensions
from .model import SystemParams, coupling_matrix, detuning_vector

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class IntegrationError(RuntimeError):
    """Raised when the integrator produces non-finite amplitudes."""


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: times in L/c and one amplitude vector per sample."""

    times: np.ndarray
    states: np.ndarray  # shape (n_samples, dimension)

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have matching lengths")


def initial_state_all_excited(dims: SectorDimensions) -> np.ndarray:
    """Unit amplitude on the all-excited, zero-photon state (canonical index 0)."""
    if dims.atoms != 3 or dims.excitations != 3:
        raise ValueError("the all-excited initial state needs the (3 atoms, 3 excitations) sector")
    state = np.zeros(dims.dimension, dtype=complex)
    state[0] = 1.0
    return state


def loss_diagonal(params: SystemParams, atoms: int = 3, excitations: int = 3) -> np.ndarray:
    """Real diagonal damping -gamma/2 per excited emitter -kappa/2 per photon."""
    basis = enumerate_basis(atoms, excitations, params.n_modes)
    n_exc = np.array([sum(s.qubits) for s in basis])
    n_phot = np.array([sum(s.modes) for s in basis])
    return -0.5 * params.gamma * n_exc - 0.5 * params.kappa * n_phot


def assemble_generic(params: SystemParams, atoms: int = 3, excitations: int = 3) -> sp.csr_matrix:
    """Generator built from second-quantized matrix elements, column by column.

    For every basis state the diagonal collects -i * detuning * occupation
    over the occupied modes plus the loss half-rates; for every (emitter,
    mode) pair the photon-absorbing hop enters with coupling * sqrt(n) and
    the photon-emitting hop with -conj(coupling) * sqrt(n + 1).  Emitting
    each hop from the column it acts on writes every matrix entry exactly
    once, and the fixed loop order keeps the assembly deterministic.
    """
    basis = enumerate_basis(atoms, excitations, params.n_modes)
    index = {state: k for k, state in enumerate(basis)}
    couplings = coupling_matrix(params)[:, :atoms]
    detunings = detuning_vector(params)
    n_modes = params.n_modes

    rows, cols, vals = [], [], []
    for col, state in enumerate(basis):
        diag = -0.5 * params.gamma * sum(state.qubits)
        diag += -1j * sum(occ * detunings[m] for m, occ in enumerate(state.modes) if occ)
        rows.append(col)
        cols.append(col)
        vals.append(diag)
        for j in range(atoms):
            if state.qubits[j] == 0:
                for m in range(n_modes):
                    occ = state.modes[m]
                    if occ == 0:
                        continue
                    qubits = state.qubits[:j] + (1,) + state.qubits[j + 1 :]
                    modes = state.modes[:m] + (occ - 1,) + state.modes[m + 1 :]
                    rows.append(index[BasisState(qubits, modes)])
                    cols.append(col)
                    vals.append(couplings[m, j] * math.sqrt(occ))
            else:
                for m in range(n_modes):
                    occ = state.modes[m]
                    qubits = state.qubits[:j] + (0,) + state.qubits[j + 1 :]
                    modes = state.modes[:m] + (occ + 1,) + state.modes[m + 1 :]
                    rows.append(index[BasisState(qubits, modes)])
                    cols.append(col)
                    vals.append(-np.conj(couplings[m, j]) * math.sqrt(occ + 1))
    dim = len(basis)
    matrix = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    matrix.sum_duplicates()
    return matrix


def assemble_appendix_a(params: SystemParams) -> sp.csr_matrix:
    """Generator from the explicit equations of motion of the eight amplitude families.

    The families are: all emitters excited; two excited with one photon; one
    excited with a photon pair in a single mode; one excited with photons in
    two distinct modes; and the four all-ground photon triples (2+1, 1+2,
    3 in one mode, 1+1+1).  Each family's equation is transcribed term by
    term, which makes this an independent cross-check of
    :func:`assemble_generic` rather than a refactoring of it.

    Every single-excited family carries the same gamma/2 emitter damping,
    including the two-distinct-photons one; anything else would break the
    entrywise equivalence between the two assemblies whenever gamma > 0.
    """
    basis = enumerate_basis(3, 3, params.n_modes)
    index = {state: k for k, state in enumerate(basis)}
    g = coupling_matrix(params)  # g[mode, qubit]
    dtl = detuning_vector(params)  # complex detunings per window slot
    gamma = params.gamma
    nm = params.n_modes

    def occ(*pairs):
        modes = [0] * nm
        for pos, count in pairs:
            modes[pos] += count
        return tuple(modes)

    def qub(*excited):
        bits = [0, 0, 0]
        for q in excited:
            bits[q] = 1
        return tuple(bits)

    st_all = index[BasisState((1, 1, 1), occ())]

    def st_pair(i, j, a):  # emitters i<j excited, one photon in mode a
        return index[BasisState(qub(i, j), occ((a, 1)))]

    def st_two_same(i, a):  # emitter i excited, two photons in mode a
        return index[BasisState(qub(i), occ((a, 2)))]

    def st_two_diff(i, a, b):  # emitter i excited, photons in modes a<b
        return index[BasisState(qub(i), occ((a, 1), (b, 1)))]

    def st_21(a, b):  # two photons in a, one in b, a<b
        return index[BasisState(qub(), occ((a, 2), (b, 1)))]

    def st_12(a, b):  # one photon in a, two in b, a<b
        return index[BasisState(qub(), occ((a, 1), (b, 2)))]

    def st_3(a):  # three photons in one mode
        return index[BasisState(qub(), occ((a, 3)))]

    def st_111(a, b, c):  # one photon each in modes a<b<c
        return index[BasisState(qub(), occ((a, 1), (b, 1), (c, 1)))]

    rows, cols, vals = [], [], []

    def add(row, col, val):
        rows.append(row)
        cols.append(col)
        vals.append(val)

    pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]  # (i, j, spectator k)

    # all three emitters excited, empty field
    add(st_all, st_all, -1.5 * gamma)
    for i, j, k in pairs:
        for a in range(nm):
            add(st_all, st_pair(i, j, a), g[a, k])

    # two emitters excited, one photon
    for i, j, k in pairs:
        for a in range(nm):
            row = st_pair(i, j, a)
            add(row, row, -(1j * dtl[a] + gamma))
            add(row, st_two_same(j, a), SQRT2 * g[a, i])
            add(row, st_two_same(i, a), SQRT2 * g[a, j])
            add(row, st_all, -np.conj(g[a, k]))
            for b in range(a + 1, nm):
                add(row, st_two_diff(j, a, b), g[b, i])
                add(row, st_two_diff(i, a, b), g[b, j])
            for b in range(a):
                add(row, st_two_diff(j, b, a), g[b, i])
                add(row, st_two_diff(i, b, a), g[b, j])

    # one emitter excited, photon pair in a single mode
    for i in range(3):
        for a in range(nm):
            row = st_two_same(i, a)
            add(row, row, -(2j * dtl[a] + 0.5 * gamma))
            add(row, st_3(a), SQRT3 * g[a, i])
            for b in range(a + 1, nm):
                add(row, st_21(a, b), g[b, i])
            for b in range(a):
                add(row, st_12(b, a), g[b, i])
            for j in range(i + 1, 3):
                add(row, st_pair(i, j, a), -SQRT2 * np.conj(g[a, j]))
            for j in range(i):
                add(row, st_pair(j, i, a), -SQRT2 * np.conj(g[a, j]))

    # one emitter excited, photons in two distinct modes
    for i in range(3):
        for a in range(nm):
            for b in range(a + 1, nm):
                row = st_two_diff(i, a, b)
                add(row, row, -(1j * dtl[a] + 1j * dtl[b] + 0.5 * gamma))
                add(row, st_21(a, b), SQRT2 * g[a, i])
                add(row, st_12(a, b), SQRT2 * g[b, i])
                for c in range(b + 1, nm):
                    add(row, st_111(a, b, c), g[c, i])
                for c in range(a + 1, b):
                    add(row, st_111(a, c, b), g[c, i])
                for c in range(a):
                    add(row, st_111(c, a, b), g[c, i])
                for j in range(i + 1, 3):
                    add(row, st_pair(i, j, a), -np.conj(g[b, j]))
                    add(row, st_pair(i, j, b), -np.conj(g[a, j]))
                for j in range(i):
                    add(row, st_pair(j, i, a), -np.conj(g[b, j]))
                    add(row, st_pair(j, i, b), -np.conj(g[a, j]))

    # all ground, three photons in one mode
    for a in range(nm):
        row = st_3(a)
        add(row, row, -3j * dtl[a])
        for i in range(3):
            add(row, st_two_same(i, a), -SQRT3 * np.conj(g[a, i]))

    # all ground, two photons in the lower mode plus one in the upper
    for a in range(nm):
        for b in range(a + 1, nm):
            row = st_21(a, b)
            add(row, row, -(2j * dtl[a] + 1j * dtl[b]))
            for i in range(3):
                add(row, st_two_same(i, a), -np.conj(g[b, i]))
                add(row, st_two_diff(i, a, b), -SQRT2 * np.conj(g[a, i]))

    # all ground, one photon in the lower mode plus two in the upper
    for a in range(nm):
        for b in range(a + 1, nm):
            row = st_12(a, b)
            add(row, row, -(1j * dtl[a] + 2j * dtl[b]))
            for i in range(3):
                add(row, st_two_same(i, b), -np.conj(g[a, i]))
                add(row, st_two_diff(i, a, b), -SQRT2 * np.conj(g[b, i]))

    # all ground, three photons in three distinct modes
    for a in range(nm):
        for b in range(a + 1, nm):
            for c in range(b + 1, nm):
                row = st_111(a, b, c)
                add(row, row, -(1j * dtl[a] + 1j * dtl[b] + 1j * dtl[c]))
                for i in range(3):
                    add(row, st_two_diff(i, a, b), -np.conj(g[c, i]))
                    add(row, st_two_diff(i, a, c), -np.conj(g[b, i]))
                    add(row, st_two_diff(i, b, c), -np.conj(g[a, i]))

    dim = len(basis)
    matrix = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    matrix.sum_duplicates()
    return matrix


def _sample_times(n_steps: int, dt: float, stride: int) -> list[int]:
    steps = list(range(0, n_steps + 1, stride))
    if steps[-1] != n_steps:
        steps.append(n_steps)
    return steps


def integrate(
    generator: sp.spmatrix,
    initial: np.ndarray,
    t_max: float,
    dt: float,
    stride: int = 100,
) -> Trajectory:
    """Propagate dA/dt = M A with classical fixed-step fourth-order Runge-Kutta.

    Samples are stored every ``stride`` steps (plus the final step).  The
    generator is time independent, so the fixed grid keeps sampled feature
    locations reproducible run to run.  Non-finite amplitudes abort with the
    step at which they were first detected.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_max < dt:
        raise ValueError("t_max must be at least one step")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    norm = np.linalg.norm(initial)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"initial state must be normalized, got |A| = {norm}")

    n_steps = int(round(t_max / dt))
    sample_steps = _sample_times(n_steps, dt, stride)
    sample_set = set(sample_steps)

    state = np.asarray(initial, dtype=complex).copy()
    samples = [state.copy()]
    # divergence is detected explicitly below, so overflow warnings are noise
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, n_steps + 1):
            k1 = generator @ state
            k2 = generator @ (state + (0.5 * dt) * k1)
            k3 = generator @ (state + (0.5 * dt) * k2)
            k4 = generator @ (state + dt * k3)
            state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if step in sample_set:
                if not np.all(np.isfinite(state.view(float))):
                    raise IntegrationError(
                        f"non-finite amplitude first detected at step {step} (t = {step * dt:g})"
                    )
                samples.append(state.copy())
    times = np.array([s * dt for s in sample_steps])
    return Trajectory(times, np.array(samples))


def integrate_batch(
    generator: sp.spmatrix,
    diag_shifts: np.ndarray,
    initial: np.ndarray,
    t_grid: np.ndarray,
    dt: float,
) -> np.ndarray:
    """Propagate one initial state under many diagonal-shifted copies of a generator.

    Column k of the result evolves under M + diag(diag_shifts[:, k]); all
    columns share the sparse off-diagonal structure, so each Runge-Kutta
    stage costs one sparse-dense product.  ``t_grid`` must be uniform and
    start at 0; the step size is the largest exact divisor of the grid
    spacing not exceeding ``dt``.  Returns an array of shape
    (len(t_grid), dimension, n_columns).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid[0] != 0.0:
        raise ValueError("t_grid must start at 0")
    spacing = np.diff(t_grid)
    if len(spacing) == 0 or not np.allclose(spacing, spacing[0], rtol=1e-9, atol=0):
        raise ValueError("t_grid must be uniformly spaced")
    if dt <= 0:
        raise ValueError("dt must be positive")
    h_out = float(spacing[0])
    substeps = max(1, math.ceil(h_out / dt - 1e-12))
    h = h_out / substeps

    shifts = np.asarray(diag_shifts, dtype=complex)
    if shifts.ndim != 2 or shifts.shape[0] != generator.shape[0]:
        raise ValueError("diag_shifts must have shape (dimension, n_columns)")

    def deriv(block):
        return generator @ block + shifts * block

    state = np.repeat(np.asarray(initial, dtype=complex)[:, None], shifts.shape[1], axis=1)
    out = np.empty((len(t_grid), *state.shape), dtype=complex)
    out[0] = state
    for k in range(1, len(t_grid)):
        for _ in range(substeps):
            k1 = deriv(state)
            k2 = deriv(state + (0.5 * h) * k1)
            k3 = deriv(state + (0.5 * h) * k2)
            k4 = deriv(state + h * k3)
            state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(state.view(float))):
            raise IntegrationError(f"non-finite amplitude first detected at t = {t_grid[k]:g}")
        out[k] = state
    return out


def sector_for(params: SystemParams, atoms: int = 3, excitations: int = 3) -> SectorDimensions:
    """Dimensions of the sector the generator acts on."""
    return sector_dimensions(atoms, excitations, params.n_modes)
