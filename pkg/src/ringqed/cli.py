"""Command-line entry point.

Subcommands: ``count`` (sector dimension), ``evolve`` (time-series CSV),
``sweep-modes`` (max-negativity-vs-modes CSV), ``fidelity-map``
(time x cooperativity CSV).  Parameters come from a flat key=value config
file, with command-line flags overriding individual keys; every key, its
unit, and its default appear in ``--help``.

Exit status: 0 success; 2 configuration or usage error; 3 numerical failure
during integration; 4 output I/O failure.  Output files are written to a
temporary name and renamed on success, so a failed run never leaves a
partial CSV behind.  Relative output paths are resolved against the
RINGQED_OUTDIR environment variable when it is set.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .dynamics import IntegrationError, sector_for
from .experiments import (
    SCENARIOS,
    fidelity_map,
    run_time_series,
    sweep_max_negativity,
    write_map_csv,
    write_sweep_csv,
    write_timeseries_csv,
)
from .hilbert import count_amplitudes
from .model import SystemParams

OUTDIR_ENV = "RINGQED_OUTDIR"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class ConfigError(Exception):
    """All configuration problems, collected and reported together."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_positions(text: str) -> tuple[float, ...]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    values = tuple(float(p) for p in parts)
    if len(values) != 3:
        raise ValueError("positions must list exactly 3 fractions of L")
    return values


def _parse_scenarios(text: str) -> tuple[str, ...]:
    cleaned = text.strip()
    if cleaned == "all":
        return SCENARIOS
    chosen = tuple(part.strip() for part in cleaned.split(",") if part.strip())
    for name in chosen:
        if name not in SCENARIOS:
            raise ValueError(f"unknown scenario {name!r}; choices: {', '.join(SCENARIOS)} or 'all'")
    if not chosen:
        raise ValueError("scenarios must not be empty")
    return chosen


# key -> (parser, default or None if required, unit, description)
CONFIG_SCHEMA = {
    "n_modes": (int, 1, "count", "number of cavity modes in the window"),
    "cavity_length_lambda": (float, 994.0, "lambda_eg", "round-trip length in transition wavelengths"),
    "positions": (_parse_positions, (0.0, 0.0, 0.0), "L", "three emitter positions as fractions of L"),
    "coupling_g": (float, None, "c/L", "coupling magnitude |G| (required)"),
    "kappa": (float, 0.0, "c/L", "cavity leakage rate"),
    "gamma": (float, 0.0, "c/L", "spontaneous emission rate"),
    "t_max": (float, 5.0, "L/c", "evolution span"),
    "dt": (float, 1e-4, "L/c", "integrator step"),
    "output_path": (str, None, "path", "output CSV (required; or pass --output)"),
    "stride": (int, 100, "steps", "output sampling stride"),
    "renormalize": (_parse_bool, False, "flag", "rescale the reduced state to unit trace"),
    "scenarios": (_parse_scenarios, SCENARIOS, "list", "sweep scenarios, comma list or 'all'"),
    "modes_min": (int, 1, "count", "sweep: first mode count"),
    "modes_max": (int, 9, "count", "sweep: last mode count"),
    "coop_min": (float, 0.005, "1", "map: smallest cooperativity"),
    "coop_max": (float, 120.0, "1", "map: largest cooperativity"),
    "coop_count": (int, 60, "count", "map: cooperativity grid points (log-spaced)"),
    "t_samples": (int, 401, "count", "map: time samples including t=0"),
    "threads": (int, 0, "count", "sweep: worker cap, 0 = all cores"),
}

_FLAG_DEST = {key: key for key in CONFIG_SCHEMA}
_FLAG_DEST["output_path"] = "output"


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: SystemParams | None = None
    t_max: float = 5.0
    dt: float = 1e-4
    stride: int = 100
    renormalize: bool = False
    output_path: str | None = None
    scenarios: tuple[str, ...] = SCENARIOS
    modes_min: int = 1
    modes_max: int = 9
    coop_min: float = 0.005
    coop_max: float = 120.0
    coop_count: int = 60
    t_samples: int = 401
    threads: int = 0
    # count subcommand only
    count_atoms: int = 3
    count_excitations: int = 3
    count_modes: int = 1


def _schema_epilog() -> str:
    lines = ["config keys (key = value, '#' starts a comment):"]
    for key, (_, default, unit, help_text) in CONFIG_SCHEMA.items():
        if default is None:
            shown = "required"
        elif isinstance(default, tuple):
            shown = ",".join(str(v) for v in default) if key == "positions" else "all"
        else:
            shown = str(default)
        lines.append(f"  {key:22s} [{unit:9s}] default: {shown:28s} {help_text}")
    lines.append("")
    lines.append(f"relative output paths are resolved under ${OUTDIR_ENV} when it is set")
    lines.append("exit status: 0 ok, 2 config error, 3 numerical failure, 4 output I/O failure")
    return "\n".join(lines)


def preset_path(name: str) -> str:
    """Filesystem path of a bundled preset config such as 'fig2a'."""
    candidate = resources.files("ringqed").joinpath("presets", f"{name}.cfg")
    if not candidate.is_file():
        available = sorted(
            entry.name[:-4]
            for entry in resources.files("ringqed").joinpath("presets").iterdir()
            if entry.name.endswith(".cfg")
        )
        raise ConfigError([f"unknown preset {name!r}; available: {', '.join(available)}"])
    return str(candidate)


def read_config_file(path: str) -> dict[str, str]:
    """Parse a flat key=value file into raw strings."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as err:
        raise ConfigError([f"cannot read config file {path}: {err}"]) from err
    raw = {}
    problems = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            problems.append(f"{path}:{lineno}: expected key = value, got {stripped!r}")
            continue
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in CONFIG_SCHEMA:
            problems.append(f"{path}:{lineno}: unknown key {key!r}")
            continue
        raw[key] = value
    if problems:
        raise ConfigError(problems)
    return raw


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="flat key=value config file")
    parser.add_argument("--preset", metavar="NAME", help="bundled config, e.g. fig2a .. fig5c")
    for key, (_, default, unit, help_text) in CONFIG_SCHEMA.items():
        flag = "--output" if key == "output_path" else "--" + key.replace("_", "-")
        parser.add_argument(
            flag,
            dest=_FLAG_DEST[key],
            metavar="V",
            default=None,
            help=f"{help_text} [{unit}]" + ("" if default is None else f" (default {default})"),
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringqed",
        description="Three emitters in a multimode ring cavity: populations, "
        "tripartite negativity, GHZ fidelity.",
        epilog=_schema_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    count = sub.add_parser("count", help="print the sector dimension")
    count.add_argument("--atoms", type=int, default=3)
    count.add_argument("--excitations", type=int, default=3)
    count.add_argument("--modes", type=int, required=True)

    for name, help_text in (
        ("evolve", "time-series CSV from the all-excited state"),
        ("sweep-modes", "max tripartite negativity per (mode count, scenario)"),
        ("fidelity-map", "GHZ fidelity over a time x cooperativity grid"),
    ):
        p = sub.add_parser(
            name,
            help=help_text,
            epilog=_schema_epilog(),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        _add_override_flags(p)
    return parser


def parse_and_validate(argv) -> RunConfig:
    """Resolve flags over config-file keys over defaults, reporting all problems."""
    namespace = build_parser().parse_args(argv)
    if namespace.subcommand == "count":
        problems = []
        for field in ("atoms", "excitations"):
            if getattr(namespace, field) < 0:
                problems.append(f"--{field} must be non-negative")
        if namespace.modes < 1:
            problems.append("--modes must be >= 1")
        if problems:
            raise ConfigError(problems)
        return RunConfig(
            subcommand="count",
            count_atoms=namespace.atoms,
            count_excitations=namespace.excitations,
            count_modes=namespace.modes,
        )

    problems: list[str] = []
    raw: dict[str, str] = {}
    if namespace.config and namespace.preset:
        problems.append("pass either --config or --preset, not both")
    source = namespace.config or (preset_path(namespace.preset) if namespace.preset else None)
    if source:
        raw = read_config_file(source)

    values = {}
    for key, (convert, default, _unit, _help) in CONFIG_SCHEMA.items():
        override = getattr(namespace, _FLAG_DEST[key])
        text = override if override is not None else raw.get(key)
        if text is None:
            values[key] = default
            continue
        try:
            values[key] = convert(text) if isinstance(text, str) else text
        except ValueError as err:
            problems.append(f"{key}: {err}")

    for required in ("coupling_g", "output_path"):
        if values.get(required) is None and not any(p.startswith(required) for p in problems):
            problems.append(f"missing required key {required!r}")

    # independent checks all run so one report covers every problem
    params = None
    param_keys = ("n_modes", "cavity_length_lambda", "positions", "coupling_g", "gamma", "kappa")
    if values.get("coupling_g") is not None and all(k in values for k in param_keys):
        try:
            params = SystemParams(
                n_modes=values["n_modes"],
                cavity_length=values["cavity_length_lambda"],
                qubit_positions=values["positions"],
                coupling_g=values["coupling_g"],
                gamma=values["gamma"],
                kappa=values["kappa"],
            )
        except ValueError as err:
            problems.append(str(err))

    def have(*keys):
        return all(k in values for k in keys)

    if have("dt") and values["dt"] <= 0:
        problems.append("dt must be positive")
    elif have("dt", "t_max") and values["t_max"] < values["dt"]:
        problems.append("t_max must cover at least one step")
    if have("stride") and values["stride"] < 1:
        problems.append("stride must be >= 1")
    if namespace.subcommand == "sweep-modes":
        if have("modes_min") and values["modes_min"] < 1:
            problems.append("modes_min must be >= 1")
        elif have("modes_min", "modes_max") and values["modes_max"] < values["modes_min"]:
            problems.append("modes_max must be >= modes_min")
        if have("threads") and values["threads"] < 0:
            problems.append("threads must be >= 0")
    if namespace.subcommand == "fidelity-map":
        if have("coop_min") and not (values["coop_min"] > 0 and math.isfinite(values["coop_min"])):
            problems.append("coop_min must be positive and finite (a zero-loss grid is not representable)")
        if have("coop_max") and not (values["coop_max"] > 0 and math.isfinite(values["coop_max"])):
            problems.append("coop_max must be positive and finite")
        if have("coop_min", "coop_max") and 0 < values["coop_min"] and values["coop_min"] > values["coop_max"]:
            problems.append("coop_min must not exceed coop_max")
        if have("coop_count") and values["coop_count"] < 1:
            problems.append("coop_count must be >= 1")
        if have("t_samples") and values["t_samples"] < 2:
            problems.append("t_samples must be >= 2")

    if problems:
        raise ConfigError(problems)

    output_path = values["output_path"]
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(output_path):
        output_path = os.path.join(outdir, output_path)

    return RunConfig(
        subcommand=namespace.subcommand,
        params=params,
        t_max=values["t_max"],
        dt=values["dt"],
        stride=values["stride"],
        renormalize=values["renormalize"],
        output_path=output_path,
        scenarios=values["scenarios"],
        modes_min=values["modes_min"],
        modes_max=values["modes_max"],
        coop_min=values["coop_min"],
        coop_max=values["coop_max"],
        coop_count=values["coop_count"],
        t_samples=values["t_samples"],
        threads=values["threads"],
    )


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the exit status."""
    started = time.perf_counter()
    if config.subcommand == "count":
        print(count_amplitudes(config.count_atoms, config.count_excitations, config.count_modes))
        return EXIT_OK

    if config.subcommand == "evolve":
        dimension = sector_for(config.params).dimension
        series = run_time_series(
            config.params,
            t_max=config.t_max,
            dt=config.dt,
            stride=config.stride,
            renormalize=config.renormalize,
        )
        write_timeseries_csv(config.output_path, series)
        peak = max(r.negativity for r in series)
        print(
            f"dimension={dimension} runtime={time.perf_counter() - started:.1f}s "
            f"peak_negativity={peak:.6f} wrote={config.output_path}"
        )
        return EXIT_OK

    if config.subcommand == "sweep-modes":
        modes = list(range(config.modes_min, config.modes_max + 1))
        points = sweep_max_negativity(
            config.params,
            modes,
            scenarios=config.scenarios,
            t_max=config.t_max,
            dt=config.dt,
            stride=config.stride,
            workers=config.threads or None,
        )
        write_sweep_csv(config.output_path, points)
        peak = max(p.max_negativity for p in points)
        print(
            f"points={len(points)} runtime={time.perf_counter() - started:.1f}s "
            f"peak_negativity={peak:.6f} wrote={config.output_path}"
        )
        return EXIT_OK

    if config.subcommand == "fidelity-map":
        coops = np.geomspace(config.coop_min, config.coop_max, config.coop_count)
        t_grid = np.linspace(0.0, config.t_max, config.t_samples)
        points = fidelity_map(
            config.params,
            list(coops),
            t_grid,
            dt=config.dt,
            renormalize=config.renormalize,
        )
        write_map_csv(config.output_path, points)
        dimension = sector_for(config.params).dimension
        print(
            f"dimension={dimension} grid={config.t_samples}x{config.coop_count} "
            f"runtime={time.perf_counter() - started:.1f}s wrote={config.output_path}"
        )
        return EXIT_OK

    raise ValueError(f"unhandled subcommand {config.subcommand}")


def main(argv=None) -> int:
    try:
        config = parse_and_validate(sys.argv[1:] if argv is None else argv)
    except ConfigError as err:
        for problem in err.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run(config)
    except ConfigError as err:
        for problem in err.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, ArithmeticError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as err:
        print(f"output error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
