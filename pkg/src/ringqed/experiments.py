"""Scenario runners: time series, retardation detection, mode sweeps, fidelity maps.

Each runner produces plain records and can write them as CSV with full
double precision (17 significant digits), so identical configurations yield
byte-identical files.  Parameter points are independent trajectories; the
mode sweep distributes them over a process pool and merges results by
sorting on the parameter key, which keeps output independent of scheduling.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from multiprocessing import get_context

import numpy as np

from .dynamics import (
    assemble_generic,
    initial_state_all_excited,
    integrate,
    integrate_batch,
    loss_diagonal,
    sector_for,
)
from .model import SAME_LOCATION, SEPARATED_POSITIONS, SystemParams, rates_for_cooperativity
from .observables import ghz_fidelity, negativity, populations, reduce_qubits

SCENARIOS = (
    "no-loss/same-location",
    "no-loss/separated",
    "loss/same-location",
    "loss/separated",
)

# loss scenarios use the reference rates kappa = gamma = 0.1 |G|
LOSS_FRACTION = 0.1

TIMESERIES_HEADER = "t,p_eee,p_eeg,p_egg,p_ggg,norm,negativity,fidelity"
SWEEP_HEADER = "n_modes,scenario,max_negativity"
MAP_HEADER = "t,cooperativity,fidelity"


@dataclass(frozen=True)
class TimeSeriesRecord:
    t: float
    p_eee: float
    p_eeg: float
    p_egg: float
    p_ggg: float
    norm: float
    negativity: float
    fidelity: float


@dataclass(frozen=True)
class KinkDetection:
    expected_time: float
    time: float
    strength: float
    fired: bool


@dataclass(frozen=True)
class SweepPoint:
    n_modes: int
    scenario: str
    max_negativity: float


@dataclass(frozen=True)
class FidelityMapPoint:
    t: float
    cooperativity: float
    fidelity: float


def apply_scenario(base: SystemParams, scenario: str) -> SystemParams:
    """Specialize positions and loss rates for one of the four sweep scenarios."""
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    loss, placement = scenario.split("/")
    rate = LOSS_FRACTION * base.coupling_g if loss == "loss" else 0.0
    positions = SAME_LOCATION if placement == "same-location" else SEPARATED_POSITIONS
    return replace(base, qubit_positions=positions, gamma=rate, kappa=rate)


def run_time_series(
    params: SystemParams,
    t_max: float,
    dt: float,
    stride: int = 100,
    renormalize: bool = False,
) -> list[TimeSeriesRecord]:
    """Evolve the all-excited state and sample populations, negativity, fidelity.

    With ``renormalize`` the reduced density matrix is rescaled to unit trace
    before computing observables; by default the leaked norm is kept, so
    lossy observables decay with the surviving population.
    """
    generator = assemble_generic(params)
    initial = initial_state_all_excited(sector_for(params))
    trajectory = integrate(generator, initial, t_max, dt, stride)
    records = []
    for t, state in zip(trajectory.times, trajectory.states):
        norm = float(np.linalg.norm(state))
        rho = reduce_qubits(state, params.n_modes)
        if renormalize and norm > 0:
            rho = rho / norm**2
        pops = populations(rho)
        records.append(
            TimeSeriesRecord(
                t=float(t),
                p_eee=pops.p_eee,
                p_eeg=pops.p_eeg,
                p_egg=pops.p_egg,
                p_ggg=pops.p_ggg,
                norm=norm,
                negativity=negativity(rho).tripartite,
                fidelity=ghz_fidelity(rho),
            )
        )
    return records


def detect_retardation_kinks(
    series: list[TimeSeriesRecord],
    expected_times: list[float],
    column: str = "p_ggg",
    window: float = 0.02,
    threshold: float = 5.0,
) -> list[KinkDetection]:
    """Locate slope discontinuities near photon flight times.

    The discrete second difference of the chosen column spikes where the
    curve has a kink; for each expected time the peak |second difference|
    within ``window`` is normalized by the series-wide median, and a kink is
    declared when that strength reaches ``threshold``.  Requires a uniformly
    sampled series.
    """
    if len(series) < 5:
        raise ValueError("series too short for second differences")
    times = np.array([r.t for r in series])
    steps = np.diff(times)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
        raise ValueError("kink detection requires uniform sampling")
    values = np.array([getattr(r, column) for r in series])
    second = np.abs(values[2:] - 2.0 * values[1:-1] + values[:-2])
    centers = times[1:-1]
    median = float(np.median(second))
    if median == 0.0:
        median = float(np.finfo(float).tiny)
    results = []
    for expected in expected_times:
        mask = np.abs(centers - expected) <= window + 1e-12
        if not mask.any():
            raise ValueError(f"no samples within {window} of expected time {expected}")
        local = second[mask]
        peak = int(np.argmax(local))
        strength = float(local[peak] / median)
        results.append(
            KinkDetection(
                expected_time=float(expected),
                time=float(centers[mask][peak]),
                strength=strength,
                fired=strength >= threshold,
            )
        )
    return results


def _sweep_worker(task):
    base, n_modes, scenario, t_max, dt, stride = task
    params = apply_scenario(replace(base, n_modes=n_modes), scenario)
    series = run_time_series(params, t_max, dt, stride)
    return SweepPoint(
        n_modes=n_modes,
        scenario=scenario,
        max_negativity=max(r.negativity for r in series),
    )


def sweep_max_negativity(
    base: SystemParams,
    modes_list: list[int],
    scenarios: list[str] = SCENARIOS,
    t_max: float = 5.0,
    dt: float = 1e-4,
    stride: int = 100,
    workers: int | None = None,
) -> list[SweepPoint]:
    """Grid maximum of tripartite negativity per (mode count, scenario).

    Points are independent and run on a fork pool; results are sorted by
    (n_modes, scenario order) so concurrency never changes the output.
    """
    if not modes_list:
        raise ValueError("modes_list must not be empty")
    for scenario in scenarios:
        if scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {scenario!r}")
    tasks = [
        (base, n, scenario, t_max, dt, stride) for n in modes_list for scenario in scenarios
    ]
    if workers is None:
        workers = min(len(tasks), os.cpu_count() or 1)
    if workers <= 1:
        points = [_sweep_worker(task) for task in tasks]
    else:
        with get_context("fork").Pool(processes=workers) as pool:
            points = pool.map(_sweep_worker, tasks)
    points.sort(key=lambda p: (p.n_modes, SCENARIOS.index(p.scenario)))
    return points


def fidelity_map(
    base: SystemParams,
    coop_grid: list[float],
    t_grid: np.ndarray,
    dt: float = 2.5e-4,
    renormalize: bool = False,
) -> list[FidelityMapPoint]:
    """GHZ fidelity over a (time, cooperativity) grid at fixed geometry.

    Each cooperativity sets kappa = gamma = |G|/sqrt(C).  All columns share
    the loss-free generator and differ only in the diagonal damping, so they
    propagate together in one batched integration.  Rows are emitted in time
    order, cooperativities ascending within a row.
    """
    coops = [float(c) for c in coop_grid]
    if any(not (c > 0) or not math.isfinite(c) for c in coops):
        raise ValueError("cooperativities must be positive and finite")
    lossless = replace(base, gamma=0.0, kappa=0.0)
    generator = assemble_generic(lossless)
    initial = initial_state_all_excited(sector_for(lossless))
    shifts = np.empty((generator.shape[0], len(coops)), dtype=complex)
    for k, coop in enumerate(coops):
        rate = rates_for_cooperativity(base.coupling_g, coop)
        shifts[:, k] = loss_diagonal(replace(base, gamma=rate, kappa=rate))
    block = integrate_batch(generator, shifts, initial, t_grid, dt)
    points = []
    for it, t in enumerate(t_grid):
        for k, coop in enumerate(coops):
            state = block[it, :, k]
            rho = reduce_qubits(state, base.n_modes)
            if renormalize:
                trace = np.trace(rho).real
                if trace > 0:
                    rho = rho / trace
            points.append(
                FidelityMapPoint(t=float(t), cooperativity=coop, fidelity=ghz_fidelity(rho))
            )
    return points


def _format(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_rows(path: str, header: str, rows) -> None:
    """Write to a temp file in the destination directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp_path = path + ".tmp"
    with open(tmp_path, "w", encoding="utf-8") as handle:
        handle.write(header + "\n")
        for row in rows:
            handle.write(",".join(_format(v) for v in row) + "\n")
    os.replace(tmp_path, path)


def write_timeseries_csv(path: str, records: list[TimeSeriesRecord]) -> None:
    _write_rows(
        path,
        TIMESERIES_HEADER,
        (
            (r.t, r.p_eee, r.p_eeg, r.p_egg, r.p_ggg, r.norm, r.negativity, r.fidelity)
            for r in records
        ),
    )


def write_sweep_csv(path: str, points: list[SweepPoint]) -> None:
    _write_rows(path, SWEEP_HEADER, ((p.n_modes, p.scenario, p.max_negativity) for p in points))


def write_map_csv(path: str, points: list[FidelityMapPoint]) -> None:
    _write_rows(path, MAP_HEADER, ((p.t, p.cooperativity, p.fidelity) for p in points))
