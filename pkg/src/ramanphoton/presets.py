"""Built-in scenario presets reproducing the reference plots.

Each preset is a config-file fragment (section -> key -> string value);
keys left out fall back to the schema defaults in the command line
front end.  Panel parameters that the source plots only show as axis
annotations are chosen here and recorded in every output's metadata.
"""

from __future__ import annotations

import copy
import sys
from typing import NamedTuple


class Preset(NamedTuple):
    summary: str
    sections: dict


def _photon_panel(bandwidth: float, detuning: float) -> dict:
    # keep the Gaussian product form inside its documented domain
    arrival = 10.0 / bandwidth
    return {
        "scenario": {"mode": "photon-spectrum"},
        "packet": {
            "shape": "sinc, gaussian, lorentzian",
            "bandwidth": repr(bandwidth),
            "carrier_detuning": repr(detuning),
            "arrival_time": repr(arrival),
        },
        "output": {"window": "12.0", "points": "1601"},
    }


def _beat_photon_panel(splitting: float, bandwidth: float) -> dict:
    return {
        "scenario": {"mode": "beats-photon"},
        "doublet": {"splitting": repr(splitting)},
        "packet": {
            "shape": "lorentzian",
            "bandwidth": repr(bandwidth),
            "carrier_detuning": repr(-0.5 * splitting),
            "arrival_time": repr(10.0 / bandwidth),
        },
        "superposition": {"relative_phase": "0.0, 3.141592653589793"},
        "output": {"window": "12.0", "points": "1601"},
    }


def _beat_laser_panel(splitting: float, phase: float) -> dict:
    return {
        "scenario": {
            "mode": "beats-laser",
            "scattered": "0, 1, 2",
            "include_sum": "true",
        },
        "doublet": {"splitting": repr(splitting)},
        "drive": {"rabi": "1.0", "detuning": repr(-0.5 * splitting)},
        "superposition": {"relative_phase": repr(phase)},
    }


_PI = 3.141592653589793

PRESETS: dict[str, Preset] = {}

# emitted photon spectra for three packet shapes; the off-resonant column
# sits at detuning 3 and the rows run through bandwidths 0.1, 10, 1
for _name, _bw, _det in [
    ("fig2a", 0.1, 0.0),
    ("fig2b", 0.1, 3.0),
    ("fig2c", 10.0, 0.0),
    ("fig2d", 10.0, 3.0),
    ("fig2e", 1.0, 0.0),
    ("fig2f", 1.0, 3.0),
]:
    _kind = "resonant" if _det == 0.0 else f"carrier detuning {_det:g}"
    PRESETS[_name] = Preset(
        f"photon spectra, three shapes, bandwidth {_bw:g}, {_kind}",
        _photon_panel(_bw, _det),
    )

PRESETS["fig3a"] = Preset(
    "emitted linewidth vs incident bandwidth 0.03..100, three shapes",
    {"scenario": {"mode": "linewidth-sweep"}},
)
PRESETS["fig3b"] = Preset(
    "success probability vs incident bandwidth 0.03..100, three shapes",
    {"scenario": {"mode": "success-sweep"}},
)

PRESETS["fig4"] = Preset(
    "laser lines for drive settings (0.2, 0), (1, 0), (4, 0), (2, 3)",
    {
        "scenario": {"mode": "laser-spectrum"},
        "drive": {"rabi": "0.2, 1.0, 4.0, 2.0", "detuning": "0.0, 0.0, 0.0, 3.0"},
    },
)

PRESETS["fig5"] = Preset(
    "laser partial spectra for 0, 1, 2 intermediate scatters at rabi 2",
    {
        "scenario": {"mode": "laser-spectrum", "scattered": "0, 1, 2"},
        "drive": {"rabi": "2.0", "detuning": "0.0"},
    },
)

# doublet beats under single-photon excitation, packet centered between
# the lines; rows run through bandwidths 5, 0.5, 0.1 so the beat doublet
# resolves toward the bottom, both initial phases in every panel
for _name, _split, _bw in [
    ("fig6a", 1.0, 5.0),
    ("fig6b", 2.0, 5.0),
    ("fig6c", 1.0, 0.5),
    ("fig6d", 2.0, 0.5),
    ("fig6e", 1.0, 0.1),
    ("fig6f", 2.0, 0.1),
]:
    PRESETS[_name] = Preset(
        f"photon-excited doublet beats, splitting {_split:g}, "
        f"bandwidth {_bw:g}, both phases",
        _beat_photon_panel(_split, _bw),
    )

for _name, _split, _phase in [
    ("fig7a", 1.0, 0.0),
    ("fig7b", 2.0, 0.0),
    ("fig7c", 1.0, _PI),
    ("fig7d", 2.0, _PI),
]:
    _rel = "equal" if _phase == 0.0 else "opposite"
    PRESETS[_name] = Preset(
        f"laser-driven doublet partials plus sum, splitting {_split:g}, "
        f"{_rel} phase",
        _beat_laser_panel(_split, _phase),
    )


def preset_config(name: str) -> dict:
    """Deep copy of the named preset's config sections."""
    return copy.deepcopy(PRESETS[name].sections)


def list_scenarios(stream=None) -> None:
    """Print the preset catalog with one summary line per entry."""
    out = stream if stream is not None else sys.stdout
    width = max(len(name) for name in PRESETS)
    for name, preset in PRESETS.items():
        mode = preset.sections["scenario"]["mode"]
        print(f"{name:<{width}}  {mode:<16} {preset.summary}", file=out)
