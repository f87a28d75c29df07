import math

import numpy as np
import pytest

from ringqed.experiments import (
    SCENARIOS,
    FidelityMapPoint,
    TimeSeriesRecord,
    apply_scenario,
    detect_retardation_kinks,
    fidelity_map,
    run_time_series,
    sweep_max_negativity,
    write_map_csv,
    write_sweep_csv,
    write_timeseries_csv,
)
from ringqed.model import SAME_LOCATION, SEPARATED_POSITIONS, SystemParams

G = 0.314 * 2 * math.pi


def make_params(**kw):
    defaults = dict(n_modes=1, cavity_length=994.0, coupling_g=G)
    defaults.update(kw)
    return SystemParams(**defaults)


def synthetic_series(kink_at=1.0, jump=0.5, h=0.01, t_max=2.0):
    records = []
    steps = int(round(t_max / h))
    for k in range(steps + 1):
        t = k * h
        value = 0.1 * t * t + (jump * (t - kink_at) if t > kink_at else 0.0)
        records.append(TimeSeriesRecord(t, 0, 0, 0, value, 1.0, 0.0, 0.5))
    return records


def test_scenarios_set_positions_and_rates():
    base = make_params()
    for scenario in SCENARIOS:
        p = apply_scenario(base, scenario)
        if scenario.startswith("loss"):
            assert p.gamma == pytest.approx(0.1 * G)
            assert p.kappa == pytest.approx(0.1 * G)
        else:
            assert p.gamma == 0.0 and p.kappa == 0.0
        if scenario.endswith("separated"):
            assert p.qubit_positions == SEPARATED_POSITIONS
        else:
            assert p.qubit_positions == SAME_LOCATION
    with pytest.raises(ValueError):
        apply_scenario(base, "loss/everywhere")


def test_time_series_structure_and_conservation():
    series = run_time_series(make_params(), t_max=0.5, dt=1e-3, stride=50)
    assert series[0].t == 0.0
    assert series[0].p_eee == 1.0
    assert series[0].negativity == 0.0
    assert series[0].fidelity == 0.5
    for r in series:
        total = r.p_eee + r.p_eeg + r.p_egg + r.p_ggg
        assert total == pytest.approx(r.norm**2, abs=1e-10)
        assert r.norm == pytest.approx(1.0, abs=1e-9)  # lossless


def test_time_series_renormalization():
    params = make_params(gamma=0.3, kappa=0.3)
    raw = run_time_series(params, t_max=0.5, dt=1e-3, stride=100)
    scaled = run_time_series(params, t_max=0.5, dt=1e-3, stride=100, renormalize=True)
    assert raw[-1].norm < 1.0
    total = scaled[-1].p_eee + scaled[-1].p_eeg + scaled[-1].p_egg + scaled[-1].p_ggg
    assert total == pytest.approx(1.0, abs=1e-10)
    # the norm column still reports the surviving amplitude
    assert scaled[-1].norm == pytest.approx(raw[-1].norm)


def test_time_series_is_deterministic():
    a = run_time_series(make_params(), t_max=0.3, dt=1e-3, stride=30)
    b = run_time_series(make_params(), t_max=0.3, dt=1e-3, stride=30)
    assert a == b


def test_kink_detector_finds_synthetic_break():
    series = synthetic_series(kink_at=1.0, jump=0.5)
    hits = detect_retardation_kinks(series, [0.5, 1.0])
    at_half, at_one = hits
    assert not at_half.fired
    assert at_one.fired
    assert at_one.time == pytest.approx(1.0, abs=0.011)
    assert at_one.strength > 50


def test_kink_detector_requires_uniform_sampling():
    series = synthetic_series()
    bumped = series[:10] + [TimeSeriesRecord(5.0, 0, 0, 0, 0.0, 1.0, 0.0, 0.5)]
    with pytest.raises(ValueError):
        detect_retardation_kinks(bumped, [1.0])


def test_kink_detector_requires_samples_in_window():
    series = synthetic_series(t_max=0.5)
    with pytest.raises(ValueError):
        detect_retardation_kinks(series, [2.0])


def test_kink_detector_reads_other_columns():
    series = synthetic_series()
    flat = detect_retardation_kinks(series, [1.0], column="negativity")
    assert not flat[0].fired


def test_sweep_is_order_independent_and_sorted():
    base = make_params()
    kw = dict(t_max=0.5, dt=1e-3, stride=50)
    serial = sweep_max_negativity(base, [2, 1], scenarios=SCENARIOS[:2], workers=1, **kw)
    parallel = sweep_max_negativity(base, [2, 1], scenarios=SCENARIOS[:2], workers=2, **kw)
    assert serial == parallel
    assert [(p.n_modes, p.scenario) for p in serial] == [
        (1, "no-loss/same-location"),
        (1, "no-loss/separated"),
        (2, "no-loss/same-location"),
        (2, "no-loss/separated"),
    ]
    with pytest.raises(ValueError):
        sweep_max_negativity(base, [], workers=1)


def test_fidelity_map_starts_at_half_for_every_cooperativity():
    points = fidelity_map(
        make_params(), [0.5, 10.0, 100.0], np.linspace(0.0, 0.2, 9), dt=1e-3
    )
    start = [p for p in points if p.t == 0.0]
    assert len(start) == 3
    for p in start:
        assert p.fidelity == pytest.approx(0.5, abs=1e-14)
    # rows in time order, cooperativities ascending within each row
    keys = [(p.t, p.cooperativity) for p in points]
    assert keys == sorted(keys)


def test_fidelity_map_rejects_bad_cooperativities():
    with pytest.raises(ValueError):
        fidelity_map(make_params(), [0.0, 1.0], np.linspace(0.0, 0.1, 3))
    with pytest.raises(ValueError):
        fidelity_map(make_params(), [-2.0], np.linspace(0.0, 0.1, 3))


def test_fidelity_map_renormalized_is_loss_free():
    # kappa = gamma makes the in-sector damping uniform, so renormalization
    # removes the cooperativity dependence identically
    points = fidelity_map(
        make_params(), [0.5, 50.0], np.linspace(0.0, 0.2, 5), dt=1e-3, renormalize=True
    )
    by_time = {}
    for p in points:
        by_time.setdefault(p.t, []).append(p.fidelity)
    for values in by_time.values():
        assert values[0] == pytest.approx(values[1], abs=1e-9)


def test_csv_writers_round_trip(tmp_path):
    series = run_time_series(make_params(), t_max=0.2, dt=1e-3, stride=100)
    ts_path = tmp_path / "series.csv"
    write_timeseries_csv(str(ts_path), series)
    lines = ts_path.read_text().splitlines()
    assert lines[0] == "t,p_eee,p_eeg,p_egg,p_ggg,norm,negativity,fidelity"
    assert len(lines) == len(series) + 1
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 1.0
    assert not (tmp_path / "series.csv.tmp").exists()

    sweep_path = tmp_path / "sweep.csv"
    points = sweep_max_negativity(
        make_params(), [1], scenarios=["no-loss/same-location"], t_max=0.3, dt=1e-3, workers=1
    )
    write_sweep_csv(str(sweep_path), points)
    sweep_lines = sweep_path.read_text().splitlines()
    assert sweep_lines[0] == "n_modes,scenario,max_negativity"
    assert sweep_lines[1].startswith("1,no-loss/same-location,")

    map_path = tmp_path / "map.csv"
    write_map_csv(
        str(map_path),
        [FidelityMapPoint(0.0, 1.0, 0.5), FidelityMapPoint(0.1, 1.0, 0.25)],
    )
    map_lines = map_path.read_text().splitlines()
    assert map_lines[0] == "t,cooperativity,fidelity"
    assert map_lines[2] == "0.10000000000000001,1,0.25"


def test_csv_full_precision_round_trips():
    series = run_time_series(
        make_params(gamma=0.1 * G, kappa=0.1 * G), t_max=0.3, dt=1e-3, stride=60
    )
    value = series[-1].negativity
    assert float(format(value, ".17g")) == value


def test_identical_configs_give_identical_bytes(tmp_path):
    paths = []
    for name in ("a.csv", "b.csv"):
        series = run_time_series(make_params(), t_max=0.2, dt=1e-3, stride=50)
        path = tmp_path / name
        write_timeseries_csv(str(path), series)
        paths.append(path.read_bytes())
    assert paths[0] == paths[1]
