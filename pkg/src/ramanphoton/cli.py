"""Command-line front end: configure a scenario, compute, write delimited text.

Configs are INI-style files with sections; unknown sections or keys are
rejected so typos fail loudly instead of silently keeping a default.
Every run writes a CSV table plus a JSON metadata sidecar holding all
resolved parameters; feeding the sidecar back through ``--config``
reproduces the run byte for byte.

Exit codes: 0 success, 1 config error (the message names the offending
key), 2 computation error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import __version__
from .beats import (
    beat_spectrum_laser,
    beat_spectrum_photon,
    beat_success_probability,
    beat_sum_spectrum,
)
from .errors import ConfigError, RamanPhotonError, RecurrenceHorizon
from .laser_spectra import (
    partial_spectrum,
    s0_spectrum,
    stark_shift,
    success_probabilities,
)
from .measures import DEFAULT_QUADRATURE, STRICT_QUADRATURE, suessmann_linewidth
from .model import (
    AtomDoublet,
    AtomThreeLevel,
    IncidentWavePacket,
    LaserDrive,
    SpectrumDensity,
    SuperpositionInit,
)
from .oracle import ModeGrid, oracle_laser_n0, oracle_photon_scattering
from .photon_spectra import (
    default_output_grid,
    emission_spectrum,
    success_probability_lorentz,
    success_probability_numeric,
    unnormalized_emission,
)
from .presets import PRESETS, list_scenarios, preset_config
from .temporal import (
    TimeDistribution,
    compound_arrival_stats,
    raman_arrival_stats,
    simulate_raman_arrivals,
)

__all__ = ["MODES", "ScenarioConfig", "build_config", "main", "run"]

MODES = (
    "photon-spectrum",
    "laser-spectrum",
    "beats-photon",
    "beats-laser",
    "linewidth-sweep",
    "success-sweep",
    "temporal",
    "oracle-check",
)

_INV_SQRT2 = repr(1.0 / math.sqrt(2.0))

# full key inventory per mode with defaults; resolution fills these in,
# so the sidecar always carries every parameter the run depended on
_RUN = {"seed": "7", "threads": "1", "tolerance_profile": "default"}
_ATOM = {"gamma_absorb": "0.5", "gamma_emit": "0.5"}
_DOUBLET = {
    "gamma_1": "0.03",
    "gamma_2": "0.03",
    "gamma_emit": "0.94",
    "splitting": "2.0",
}
_OUTPUT = {"window": "8.0", "points": "1601"}
_PACKET = {
    "shape": "lorentzian",
    "bandwidth": "1.0",
    "carrier_detuning": "0.0",
    "arrival_time": "0.0",
}
_SWEEP_PACKET = {"shape": "sinc, gaussian, lorentzian", "carrier_detuning": "0.0"}
_SUPERPOSITION = {
    "c1_magnitude": _INV_SQRT2,
    "c2_magnitude": _INV_SQRT2,
    "relative_phase": "0.0",
}
_DRIVE = {"rabi": "1.0", "detuning": "0.0"}
_SWEEP = {"start": "0.03", "stop": "100.0", "points": "61", "scale": "log"}

_SCHEMA = {
    "photon-spectrum": {
        "scenario": {"mode": "photon-spectrum"},
        "atom": _ATOM,
        "packet": _PACKET,
        "output": _OUTPUT,
        "run": _RUN,
    },
    "laser-spectrum": {
        "scenario": {"mode": "laser-spectrum", "scattered": ""},
        "atom": _ATOM,
        "drive": _DRIVE,
        "output": _OUTPUT,
        "run": _RUN,
    },
    "beats-photon": {
        "scenario": {"mode": "beats-photon"},
        "doublet": _DOUBLET,
        "packet": _PACKET,
        "superposition": _SUPERPOSITION,
        "output": _OUTPUT,
        "run": _RUN,
    },
    "beats-laser": {
        "scenario": {"mode": "beats-laser", "scattered": "0", "include_sum": "false"},
        "doublet": _DOUBLET,
        "drive": _DRIVE,
        "superposition": _SUPERPOSITION,
        "output": _OUTPUT,
        "run": _RUN,
    },
    "linewidth-sweep": {
        "scenario": {"mode": "linewidth-sweep"},
        "atom": _ATOM,
        "packet": _SWEEP_PACKET,
        "sweep": _SWEEP,
        "run": _RUN,
    },
    "success-sweep": {
        "scenario": {"mode": "success-sweep"},
        "atom": _ATOM,
        "packet": _SWEEP_PACKET,
        "sweep": _SWEEP,
        "run": _RUN,
    },
    "temporal": {
        "scenario": {"mode": "temporal"},
        "atom": _ATOM,
        "temporal": {"rate": "1.0", "samples": "1000000"},
        "run": _RUN,
    },
    "oracle-check": {
        "scenario": {"mode": "oracle-check"},
        "atom": _ATOM,
        "oracle": {"case": "photon", "span": "40.0", "spacing": "0.02", "t_end": "60.0"},
        "packet": {
            "shape": "lorentzian",
            "bandwidth": "1.0",
            "carrier_detuning": "0.0",
            "arrival_time": "3.0",
        },
        "drive": _DRIVE,
        "run": _RUN,
    },
}

_PROFILES = {"default": DEFAULT_QUADRATURE, "strict": STRICT_QUADRATURE}


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved scenario: canonical key-value sections plus run flags."""

    mode: str
    sections: dict
    out: Path
    seed: int
    threads: int
    tolerance_profile: str
    preset: str | None = None


class Table(NamedTuple):
    columns: list
    rows: list
    results: dict


# ---------------------------------------------------------------------------
# Config parsing.  Every failure raises ConfigError naming [section] key.


def _parse_float(sections, sec, key, positive=False, minimum=None):
    raw = sections[sec][key]
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"[{sec}] {key}: not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"[{sec}] {key}: must be finite")
    if positive and value <= 0.0:
        raise ConfigError(f"[{sec}] {key}: must be positive")
    if minimum is not None and value < minimum:
        raise ConfigError(f"[{sec}] {key}: must be at least {minimum:g}")
    return value


def _parse_float_list(sections, sec, key):
    raw = sections[sec][key]
    values = []
    for part in raw.split(","):
        part = part.strip()
        try:
            value = float(part)
        except ValueError:
            raise ConfigError(f"[{sec}] {key}: not a number: {part!r}") from None
        if not math.isfinite(value):
            raise ConfigError(f"[{sec}] {key}: must be finite")
        values.append(value)
    if not values:
        raise ConfigError(f"[{sec}] {key}: empty list")
    return values


def _parse_int(sections, sec, key, minimum=None, maximum=None):
    raw = sections[sec][key]
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"[{sec}] {key}: not an integer: {raw!r}") from None
    if minimum is not None and value < minimum:
        raise ConfigError(f"[{sec}] {key}: must be at least {minimum}")
    if maximum is not None and value > maximum:
        raise ConfigError(f"[{sec}] {key}: must be at most {maximum}")
    return value


def _parse_bool(sections, sec, key):
    raw = sections[sec][key].strip().lower()
    if raw in ("true", "yes", "1"):
        return True
    if raw in ("false", "no", "0"):
        return False
    raise ConfigError(f"[{sec}] {key}: expected true or false, got {raw!r}")


def _parse_choice(sections, sec, key, choices):
    raw = sections[sec][key].strip().lower()
    if raw not in choices:
        raise ConfigError(f"[{sec}] {key}: expected one of {', '.join(choices)}")
    return raw


def _parse_scattered(sections, sec="scenario", key="scattered"):
    raw = sections[sec][key].strip()
    if not raw:
        return []
    orders = []
    for part in raw.split(","):
        part = part.strip()
        if part not in ("0", "1", "2"):
            raise ConfigError(f"[{sec}] {key}: scatter orders are 0, 1, or 2, got {part!r}")
        n = int(part)
        if n in orders:
            raise ConfigError(f"[{sec}] {key}: duplicate order {n}")
        orders.append(n)
    return orders


_SHAPE_NAMES = ("sinc", "gaussian", "lorentzian")


def _parse_shapes(sections, single=False):
    raw = sections["packet"]["shape"]
    shapes = [part.strip().lower() for part in raw.split(",")]
    for shape in shapes:
        if shape not in _SHAPE_NAMES:
            raise ConfigError(
                f"[packet] shape: expected one of {', '.join(_SHAPE_NAMES)}, got {shape!r}"
            )
    if len(set(shapes)) != len(shapes):
        raise ConfigError("[packet] shape: duplicate shape")
    if single and len(shapes) != 1:
        raise ConfigError("[packet] shape: this mode takes a single shape")
    return shapes


# ---------------------------------------------------------------------------
# Domain object builders on top of the parsers.


def _build_packet(shape, bandwidth, carrier, arrival):
    builders = {
        "sinc": lambda: IncidentWavePacket.rectangular(
            bandwidth=bandwidth, carrier_detuning=carrier, arrival_time=arrival
        ),
        "gaussian": lambda: IncidentWavePacket.gaussian(bandwidth, carrier, arrival),
        "lorentzian": lambda: IncidentWavePacket.lorentzian(bandwidth, carrier, arrival),
    }
    try:
        return builders[shape]()
    except ValueError as exc:
        raise ConfigError(f"[packet] {exc}") from None


def _atom(sections):
    absorb = _parse_float(sections, "atom", "gamma_absorb", minimum=0.0)
    emit = _parse_float(sections, "atom", "gamma_emit", minimum=0.0)
    try:
        return AtomThreeLevel(absorb, emit)
    except ValueError as exc:
        raise ConfigError(f"[atom] {exc}") from None


def _doublet(sections):
    args = [
        _parse_float(sections, "doublet", key, minimum=0.0)
        for key in ("gamma_1", "gamma_2", "gamma_emit")
    ]
    args.append(_parse_float(sections, "doublet", "splitting"))
    try:
        return AtomDoublet(*args)
    except ValueError as exc:
        raise ConfigError(f"[doublet] {exc}") from None


def _superposition(sections, phase):
    m1 = _parse_float(sections, "superposition", "c1_magnitude", minimum=0.0)
    m2 = _parse_float(sections, "superposition", "c2_magnitude", minimum=0.0)
    norm = m1 * m1 + m2 * m2
    if abs(norm - 1.0) > 1e-6:
        raise ConfigError(
            "[superposition] c1_magnitude: |c1|^2 + |c2|^2 must be 1 "
            f"(got {norm:.8f})"
        )
    scale = 1.0 / math.sqrt(norm)
    return SuperpositionInit(m1 * scale, m2 * scale * complex(math.cos(phase), math.sin(phase)))


def _output_grid(sections):
    window = _parse_float(sections, "output", "window", positive=True)
    points = _parse_int(sections, "output", "points", minimum=9)
    return np.linspace(-window, window, points)


def _single_drive(sections):
    rabi = _parse_float(sections, "drive", "rabi", minimum=0.0)
    detuning = _parse_float(sections, "drive", "detuning")
    try:
        return LaserDrive(rabi, detuning)
    except ValueError as exc:
        raise ConfigError(f"[drive] {exc}") from None


# ---------------------------------------------------------------------------
# Scenario execution, one function per mode.  Each returns a Table.


def _run_photon_spectrum(cfg, quad):
    sections = cfg.sections
    atom = _atom(sections)
    shapes = _parse_shapes(sections)
    bandwidth = _parse_float(sections, "packet", "bandwidth", positive=True)
    carrier = _parse_float(sections, "packet", "carrier_detuning")
    arrival = _parse_float(sections, "packet", "arrival_time", minimum=0.0)
    grid = _output_grid(sections)
    columns = ["detuning[Gamma]"]
    data = [grid]
    results = {}
    for shape in shapes:
        packet = _build_packet(shape, bandwidth, carrier, arrival)
        result = emission_spectrum(atom, packet, grid=grid, quad=quad)
        columns.append(f"density_{shape}[1/Gamma]")
        data.append(result.spectrum.density)
        results[f"success_{shape}"] = float(result.success_probability)
    return Table(columns, np.column_stack(data), results)


def _run_laser_spectrum(cfg, quad):
    sections = cfg.sections
    atom = _atom(sections)
    rabis = _parse_float_list(sections, "drive", "rabi")
    detunings = _parse_float_list(sections, "drive", "detuning")
    if len(rabis) != len(detunings):
        raise ConfigError("[drive] detuning: must match the length of rabi")
    scattered = _parse_scattered(sections)
    grid = _output_grid(sections)
    columns = ["detuning[Gamma]"]
    data = [grid]
    results = {}
    if scattered:
        if len(rabis) != 1:
            raise ConfigError("[scenario] scattered: partial spectra need a single drive")
        drive = _single_drive(sections)
        weights = success_probabilities(atom, max(scattered))
        for n in scattered:
            spectrum = partial_spectrum(atom, drive, n, grid=grid)
            columns.append(f"density_n{n}[1/Gamma]")
            data.append(spectrum.density)
            results[f"weight_n{n}"] = float(weights[n])
        results["light_shift"] = float(stark_shift(atom, drive).delta_s)
    else:
        for rabi, detuning in zip(rabis, detunings):
            try:
                drive = LaserDrive(rabi, detuning)
            except ValueError as exc:
                raise ConfigError(f"[drive] {exc}") from None
            spectrum = s0_spectrum(atom, drive, grid=grid)
            tag = f"rabi{rabi:g}_det{detuning:g}"
            columns.append(f"density_{tag}[1/Gamma]")
            data.append(spectrum.density)
            results[f"light_shift_{tag}"] = float(spectrum.meta["light_shift"])
    return Table(columns, np.column_stack(data), results)


def _run_beats_photon(cfg, quad):
    sections = cfg.sections
    batom = _doublet(sections)
    _parse_shapes(sections, single=True)
    shape = sections["packet"]["shape"].strip().lower()
    bandwidth = _parse_float(sections, "packet", "bandwidth", positive=True)
    carrier = _parse_float(sections, "packet", "carrier_detuning")
    arrival = _parse_float(sections, "packet", "arrival_time", minimum=0.0)
    phases = _parse_float_list(sections, "superposition", "relative_phase")
    grid = _output_grid(sections)
    packet = _build_packet(shape, bandwidth, carrier, arrival)
    columns = ["detuning[Gamma]"]
    data = [grid]
    results = {}
    for phase in phases:
        init = _superposition(sections, phase)
        spectrum = beat_spectrum_photon(batom, init, packet, grid=grid)
        columns.append(f"density_phase{phase:g}[1/Gamma]")
        data.append(spectrum.density)
        results[f"success_phase{phase:g}"] = float(
            beat_success_probability(batom, init, packet, quad)
        )
    return Table(columns, np.column_stack(data), results)


def _run_beats_laser(cfg, quad):
    sections = cfg.sections
    batom = _doublet(sections)
    drive = _single_drive(sections)
    phases = _parse_float_list(sections, "superposition", "relative_phase")
    if len(phases) != 1:
        raise ConfigError("[superposition] relative_phase: this mode takes a single phase")
    init = _superposition(sections, phases[0])
    scattered = _parse_scattered(sections)
    if not scattered:
        raise ConfigError("[scenario] scattered: need at least one scatter order")
    include_sum = _parse_bool(sections, "scenario", "include_sum")
    grid = _output_grid(sections)
    columns = ["detuning[Gamma]"]
    data = [grid]
    results = {}
    equivalent = AtomThreeLevel(batom.gamma_1 + batom.gamma_2, batom.gamma_emit)
    weights = success_probabilities(equivalent, max(scattered))
    spectrum = None
    for n in scattered:
        spectrum = beat_spectrum_laser(batom, init, drive, n, grid=grid)
        columns.append(f"density_n{n}[1/Gamma]")
        data.append(spectrum.density)
        results[f"weight_n{n}"] = float(weights[n])
    results["light_shift_1"] = float(spectrum.meta["light_shift_1"])
    results["light_shift_2"] = float(spectrum.meta["light_shift_2"])
    if include_sum:
        total = beat_sum_spectrum(batom, init, drive, max(scattered), grid=grid)
        columns.append("density_sum[1/Gamma]")
        data.append(total.density)
        results["truncated_mass"] = float(total.meta["truncated_mass"])
    return Table(columns, np.column_stack(data), results)


def _sweep_bandwidths(sections):
    start = _parse_float(sections, "sweep", "start", positive=True)
    stop = _parse_float(sections, "sweep", "stop", positive=True)
    if stop <= start:
        raise ConfigError("[sweep] stop: must exceed start")
    points = _parse_int(sections, "sweep", "points", minimum=2)
    scale = _parse_choice(sections, "sweep", "scale", ("log", "linear"))
    if scale == "log":
        return np.geomspace(start, stop, points)
    return np.linspace(start, stop, points)


def _run_linewidth_sweep(cfg, quad):
    sections = cfg.sections
    atom = _atom(sections)
    shapes = _parse_shapes(sections)
    carrier = _parse_float(sections, "packet", "carrier_detuning")
    bandwidths = _sweep_bandwidths(sections)

    def point(bandwidth):
        row = [float(bandwidth)]
        for shape in shapes:
            # arrival time does not move the long-time spectrum; pick one
            # late enough that every shape is inside its documented domain
            packet = _build_packet(shape, float(bandwidth), carrier, 10.0 / float(bandwidth))
            grid = default_output_grid(atom, packet)
            density = unnormalized_emission(atom, packet, grid)
            row.append(float(suessmann_linewidth(SpectrumDensity(grid, density, {}))))
        return row

    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        rows = list(pool.map(point, bandwidths))
    columns = ["bandwidth[Gamma]"] + [f"linewidth_{shape}[Gamma]" for shape in shapes]
    return Table(columns, rows, {})


def _run_success_sweep(cfg, quad):
    sections = cfg.sections
    atom = _atom(sections)
    shapes = _parse_shapes(sections)
    carrier = _parse_float(sections, "packet", "carrier_detuning")
    bandwidths = _sweep_bandwidths(sections)

    def point(bandwidth):
        row = [float(bandwidth)]
        for shape in shapes:
            packet = _build_packet(shape, float(bandwidth), carrier, 10.0 / float(bandwidth))
            if shape == "lorentzian":
                row.append(float(success_probability_lorentz(atom, packet)))
            else:
                row.append(float(success_probability_numeric(atom, packet, quad)))
        return row

    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        rows = list(pool.map(point, bandwidths))
    columns = ["bandwidth[Gamma]"] + [f"success_{shape}[1]" for shape in shapes]
    return Table(columns, rows, {})


def _run_temporal(cfg, quad):
    sections = cfg.sections
    atom = _atom(sections)
    if atom.gamma_emit <= 0.0:
        raise ConfigError("[atom] gamma_emit: temporal statistics need a nonzero emission rate")
    rate = _parse_float(sections, "temporal", "rate", positive=True)
    samples = _parse_int(sections, "temporal", "samples", minimum=1)
    first = TimeDistribution.exponential(rate)
    mean_lin, spread_lin = raman_arrival_stats(atom, first)
    mean_cmp, spread_cmp = compound_arrival_stats(atom, first)
    mean_mc, spread_mc = simulate_raman_arrivals(
        atom, 1.0 / rate, samples=samples, seed=cfg.seed, max_workers=cfg.threads
    )
    results = {
        "mean_linear": float(mean_lin),
        "spread_linear": float(spread_lin),
        "mean_compound": float(mean_cmp),
        "spread_compound": float(spread_cmp),
        "mean_sampled": float(mean_mc),
        "spread_sampled": float(spread_mc),
    }
    columns = [
        "mean_linear[1/Gamma]",
        "spread_linear[1/Gamma]",
        "mean_compound[1/Gamma]",
        "spread_compound[1/Gamma]",
        "mean_sampled[1/Gamma]",
        "spread_sampled[1/Gamma]",
    ]
    row = [results[col.split("[")[0]] for col in columns]
    return Table(columns, [row], results)


def _run_oracle_check(cfg, quad):
    sections = cfg.sections
    atom = _atom(sections)
    case = _parse_choice(sections, "oracle", "case", ("photon", "laser"))
    span = _parse_float(sections, "oracle", "span", positive=True)
    spacing = _parse_float(sections, "oracle", "spacing", positive=True)
    t_end = _parse_float(sections, "oracle", "t_end", positive=True)
    try:
        grid = ModeGrid(span, spacing)
    except ValueError as exc:
        raise ConfigError(f"[oracle] span: {exc}") from None

    if case == "photon":
        shapes = _parse_shapes(sections, single=True)
        bandwidth = _parse_float(sections, "packet", "bandwidth", positive=True)
        carrier = _parse_float(sections, "packet", "carrier_detuning")
        arrival = _parse_float(sections, "packet", "arrival_time", minimum=0.0)
        packet = _build_packet(shapes[0], bandwidth, carrier, arrival)
        try:
            result = oracle_photon_scattering(atom, packet, grid=grid, t_end=t_end)
        except (ValueError, RecurrenceHorizon) as exc:
            raise ConfigError(f"[oracle] t_end: {exc}") from None
        simulated = result.spectrum.normalized()
        closed = emission_spectrum(atom, packet, grid=simulated.detuning, quad=quad)
        reference = closed.spectrum
        results = {
            "success_simulated": float(result.success_probability),
            "success_closed": float(closed.success_probability),
            "input_mass": float(result.spectrum.meta["input_mass"]),
            "norm_drift": float(result.spectrum.meta["norm_drift"]),
        }
    else:
        drive = _single_drive(sections)
        try:
            simulated = oracle_laser_n0(atom, drive, grid=grid, t_end=t_end)
        except (ValueError, RecurrenceHorizon) as exc:
            raise ConfigError(f"[oracle] t_end: {exc}") from None
        reference = s0_spectrum(atom, drive, grid=simulated.detuning)
        results = {
            "emitted_mass": float(simulated.meta["emitted_mass"]),
            "budget_error": float(simulated.meta["budget_error"]),
            "light_shift": float(reference.meta["light_shift"]),
        }
    results["l1_distance"] = float(
        np.trapezoid(np.abs(simulated.density - reference.density), simulated.detuning)
    )
    columns = ["detuning[Gamma]", "density_simulated[1/Gamma]", "density_closed[1/Gamma]"]
    data = np.column_stack([simulated.detuning, simulated.density, reference.density])
    return Table(columns, data, results)


_EXECUTORS = {
    "photon-spectrum": _run_photon_spectrum,
    "laser-spectrum": _run_laser_spectrum,
    "beats-photon": _run_beats_photon,
    "beats-laser": _run_beats_laser,
    "linewidth-sweep": _run_linewidth_sweep,
    "success-sweep": _run_success_sweep,
    "temporal": _run_temporal,
    "oracle-check": _run_oracle_check,
}


# ---------------------------------------------------------------------------
# Config assembly and output writing.


def _merge_sections(base, extra):
    for sec, keys in extra.items():
        target = base.setdefault(sec, {})
        for key, value in keys.items():
            target[str(key)] = str(value)


def _read_config_file(path):
    target = Path(path)
    try:
        text = target.read_text()
    except OSError as exc:
        raise ConfigError(f"--config {path}: {exc}") from None
    if text.lstrip().startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--config {path}: invalid JSON: {exc}") from None
        block = payload.get("config")
        if not isinstance(block, dict):
            raise ConfigError(f"--config {path}: sidecar has no config block")
        return {
            str(sec): {str(k): str(v) for k, v in keys.items()}
            for sec, keys in block.items()
        }
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"--config {path}: {exc}") from None
    return {sec: dict(parser.items(sec)) for sec in parser.sections()}


def build_config(args) -> ScenarioConfig:
    """Merge preset, config file, and flags into a validated ScenarioConfig."""
    sections = {}
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}; see --list-presets")
        _merge_sections(sections, preset_config(args.preset))
    if args.config is not None:
        _merge_sections(sections, _read_config_file(args.config))
    if not sections:
        raise ConfigError("no scenario given; pass --preset or --config")

    mode = sections.get("scenario", {}).get("mode")
    if mode is None:
        raise ConfigError("missing key: [scenario] mode")
    if mode not in MODES:
        raise ConfigError(f"[scenario] mode: unknown mode {mode!r}")
    schema = _SCHEMA[mode]
    for sec, keys in sections.items():
        if sec not in schema:
            raise ConfigError(f"unknown section [{sec}] for mode {mode}")
        for key in keys:
            if key not in schema[sec]:
                raise ConfigError(f"unknown key: [{sec}] {key}")

    resolved = {sec: dict(defaults) for sec, defaults in schema.items()}
    for sec, keys in sections.items():
        resolved[sec].update(keys)

    if args.seed is not None:
        resolved["run"]["seed"] = str(args.seed)
    if args.threads is not None:
        resolved["run"]["threads"] = str(args.threads)
    if args.tolerance_profile is not None:
        resolved["run"]["tolerance_profile"] = args.tolerance_profile

    seed = _parse_int(resolved, "run", "seed", minimum=0, maximum=2**64 - 1)
    threads = _parse_int(resolved, "run", "threads", minimum=1, maximum=4096)
    profile = _parse_choice(resolved, "run", "tolerance_profile", tuple(_PROFILES))

    out = Path(args.out) if args.out is not None else Path(f"{mode}.csv")
    return ScenarioConfig(
        mode=mode,
        sections=resolved,
        out=out,
        seed=seed,
        threads=threads,
        tolerance_profile=profile,
        preset=args.preset,
    )


def _write_outputs(cfg: ScenarioConfig, table: Table) -> Path:
    quad = _PROFILES[cfg.tolerance_profile]
    sidecar = cfg.out.with_name(cfg.out.stem + ".meta.json")
    meta = {
        "columns": list(table.columns),
        "config": cfg.sections,
        "mode": cfg.mode,
        "output_path": str(cfg.out),
        "preset": cfg.preset,
        "results": table.results,
        "seed": cfg.seed,
        "threads": cfg.threads,
        "tolerance_profile": cfg.tolerance_profile,
        "tolerances": {
            "absolute": quad.abs_tol,
            "relative": quad.rel_tol,
            "max_subdivisions": quad.max_subdivisions,
        },
        "tool": "ramanphoton",
        "version": __version__,
    }
    sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    lines = [f"# metadata: {sidecar}", ",".join(table.columns)]
    for row in table.rows:
        lines.append(",".join(f"{float(value):.12e}" for value in row))
    cfg.out.write_text("\n".join(lines) + "\n", newline="\n")
    return sidecar


def run(config: ScenarioConfig) -> int:
    """Execute a resolved scenario and write the CSV plus sidecar."""
    try:
        table = _EXECUTORS[config.mode](config, _PROFILES[config.tolerance_profile])
        _write_outputs(config, table)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except RamanPhotonError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"config error: --out {config.out}: {exc}", file=sys.stderr)
        return 1
    return 0


class _Parser(argparse.ArgumentParser):
    # bad flags are config errors, so exit 1 instead of argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: config error: {message}\n")


def _build_parser():
    parser = _Parser(prog="ramanphoton", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--config", metavar="PATH", help="INI config, or a metadata sidecar to re-run"
    )
    parser.add_argument("--preset", metavar="NAME", help="built-in scenario name")
    parser.add_argument("--out", metavar="PATH", help="CSV output path (default <mode>.csv)")
    parser.add_argument("--seed", type=int, metavar="U64", help="random seed override")
    parser.add_argument("--threads", type=int, metavar="N", help="sweep worker count override")
    parser.add_argument(
        "--tolerance-profile",
        choices=tuple(_PROFILES),
        dest="tolerance_profile",
        help="quadrature tolerance profile override",
    )
    parser.add_argument("--list-presets", action="store_true", help="print the preset catalog")
    parser.add_argument(
        "--version", action="version", version=f"ramanphoton {__version__}"
    )
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.list_presets:
        list_scenarios()
        return 0
    try:
        config = build_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
