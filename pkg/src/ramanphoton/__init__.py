"""Single-photon spectra and statistics for three-level Raman scattering."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DegenerateDressingWarning,
    EmptyDistribution,
    EmptySpectrum,
    GridMismatch,
    NormDrift,
    PacketTailWarning,
    PoleOnGrid,
    QuadratureFailure,
    RamanPhotonError,
    RecurrenceHorizon,
    ResolutionWarning,
)
from .kernel import (
    KernelMode,
    emission_amplitude,
    emission_density,
    kernel_u,
    quadrature_window,
)
from .cli import ScenarioConfig, build_config, main, run
from .presets import PRESETS, Preset, list_scenarios, preset_config
from .beats import (
    beat_dressed_pairs,
    beat_emission_density,
    beat_laser_density,
    beat_spectrum_laser,
    beat_spectrum_photon,
    beat_success_probability,
    beat_sum_spectrum,
    default_beat_laser_grid,
    default_beat_photon_grid,
)
from .laser_spectra import (
    DressedPair,
    INTERMEDIATE_HALF_WIDTH,
    StarkData,
    amplitude_N0,
    amplitude_N1,
    amplitude_N2,
    default_laser_grid,
    dressed_frequencies,
    dressed_line_density,
    partial_norm,
    partial_spectrum,
    s0_spectrum,
    stark_shift,
    success_probabilities,
)
from .measures import (
    DEFAULT_QUADRATURE,
    STRICT_QUADRATURE,
    Peak,
    QuadratureSpec,
    find_peaks,
    integrate,
    normalize,
    suessmann_linewidth,
)
from .model import (
    AtomDoublet,
    AtomThreeLevel,
    IncidentWavePacket,
    LaserDrive,
    PacketShape,
    SpectrumDensity,
    SuperpositionInit,
    adaptive_grid,
    uniform_grid,
    wavepacket_amplitude,
)
from .oracle import (
    ModeGrid,
    OracleState,
    default_mode_grid,
    dump_amplitudes,
    oracle_laser_n0,
    oracle_photon_scattering,
)
from .photon_spectra import (
    EmissionResult,
    default_output_grid,
    diffraction_function,
    emission_spectrum,
    incident_power_spectrum,
    lorentzian_line,
    spectrum_gauss,
    spectrum_lorentz,
    spectrum_rect,
    success_probability_lorentz,
    success_probability_numeric,
    unnormalized_emission,
)
from .temporal import (
    TimeDistribution,
    compound_arrival_stats,
    convolve,
    moments,
    raman_arrival_stats,
    simulate_raman_arrivals,
)

__all__ = [
    "AtomDoublet",
    "AtomThreeLevel",
    "ConfigError",
    "DEFAULT_QUADRATURE",
    "DegenerateDressingWarning",
    "DressedPair",
    "EmissionResult",
    "EmptyDistribution",
    "EmptySpectrum",
    "GridMismatch",
    "INTERMEDIATE_HALF_WIDTH",
    "IncidentWavePacket",
    "KernelMode",
    "LaserDrive",
    "ModeGrid",
    "NormDrift",
    "OracleState",
    "PRESETS",
    "PacketShape",
    "PacketTailWarning",
    "Peak",
    "PoleOnGrid",
    "Preset",
    "QuadratureFailure",
    "QuadratureSpec",
    "RamanPhotonError",
    "RecurrenceHorizon",
    "ResolutionWarning",
    "STRICT_QUADRATURE",
    "ScenarioConfig",
    "SpectrumDensity",
    "StarkData",
    "SuperpositionInit",
    "TimeDistribution",
    "adaptive_grid",
    "amplitude_N0",
    "amplitude_N1",
    "amplitude_N2",
    "beat_dressed_pairs",
    "beat_emission_density",
    "beat_laser_density",
    "beat_spectrum_laser",
    "beat_spectrum_photon",
    "beat_success_probability",
    "beat_sum_spectrum",
    "build_config",
    "compound_arrival_stats",
    "convolve",
    "default_beat_laser_grid",
    "default_beat_photon_grid",
    "default_laser_grid",
    "default_mode_grid",
    "default_output_grid",
    "diffraction_function",
    "dressed_frequencies",
    "dressed_line_density",
    "dump_amplitudes",
    "emission_amplitude",
    "emission_density",
    "emission_spectrum",
    "find_peaks",
    "incident_power_spectrum",
    "integrate",
    "kernel_u",
    "list_scenarios",
    "lorentzian_line",
    "main",
    "moments",
    "normalize",
    "oracle_laser_n0",
    "oracle_photon_scattering",
    "partial_norm",
    "partial_spectrum",
    "preset_config",
    "quadrature_window",
    "raman_arrival_stats",
    "run",
    "s0_spectrum",
    "simulate_raman_arrivals",
    "spectrum_gauss",
    "spectrum_lorentz",
    "spectrum_rect",
    "stark_shift",
    "success_probabilities",
    "success_probability_lorentz",
    "success_probability_numeric",
    "suessmann_linewidth",
    "uniform_grid",
    "unnormalized_emission",
    "wavepacket_amplitude",
    "__version__",
]
