"""Emission spectra for a scatterer prepared in a superposition of two
lower states.

Both lower states couple to the same excited state and the photon is
detected on a third decay channel, so the two absorption paths end in
the same final state and their amplitudes add coherently.  The line
pattern carries the level splitting and the relative phase of the
initial amplitudes.  Single-packet excitation keeps the coherent sum
in closed form; under laser drive each path carries its own dressed
resonances and the multi-scatter fractions follow the same
sliding-window cascade as the single-path module, applied to the
coherent path sums.
"""

from __future__ import annotations

import numpy as np

from ._quadrature import PanelPrefix
from .laser_spectra import (
    INTERMEDIATE_HALF_WIDTH,
    DressedPair,
    _pole_lines,
    dressed_frequencies,
    stark_shift,
    success_probabilities,
)
from .measures import DEFAULT_QUADRATURE, QuadratureSpec, integrate
from .model import (
    AtomDoublet,
    AtomThreeLevel,
    IncidentWavePacket,
    LaserDrive,
    PacketShape,
    SpectrumDensity,
    SuperpositionInit,
    _prune_close,
    adaptive_grid,
    wavepacket_amplitude,
)

__all__ = [
    "beat_dressed_pairs",
    "beat_emission_density",
    "beat_laser_density",
    "beat_spectrum_laser",
    "beat_spectrum_photon",
    "beat_success_probability",
    "beat_sum_spectrum",
    "default_beat_laser_grid",
    "default_beat_photon_grid",
]


def _single_path_atom(batom: AtomDoublet) -> AtomThreeLevel:
    """Single-path stand-in carrying the full linewidth of the doublet system."""
    return AtomThreeLevel(batom.gamma_1 + batom.gamma_2, batom.gamma_emit)


# ---------------------------------------------------------------------------
# Single-packet excitation.


def beat_emission_density(
    batom: AtomDoublet,
    init: SuperpositionInit,
    packet: IncidentWavePacket,
    detuning_out,
):
    """Long-time two-path emission density before area normalization.

    Each path is the asymptotic single-path amplitude with the full
    width in the excited-state propagator.  The second path sees the
    packet displaced by the splitting: the same output detuning is
    reached from an input detuning lower by the splitting.
    """
    d3 = np.asarray(detuning_out, dtype=float)
    gam = batom.gamma_total
    amp1 = np.sqrt(batom.gamma_1) * wavepacket_amplitude(packet, d3)
    amp2 = np.sqrt(batom.gamma_2) * wavepacket_amplitude(packet, d3 - batom.splitting)
    coherent = init.c1 * amp1 + init.c2 * amp2
    out = batom.gamma_emit * np.abs(coherent) ** 2 / (d3 * d3 + 0.25 * gam * gam)
    return float(out) if np.ndim(detuning_out) == 0 else out


def default_beat_photon_grid(batom: AtomDoublet, packet: IncidentWavePacket) -> np.ndarray:
    """Composite grid resolving the atomic line and both packet components."""
    gam = batom.gamma_total
    w = packet.bandwidth
    centers = (packet.carrier_detuning, packet.carrier_detuning + batom.splitting)
    lines = [(c, w) for c in centers]
    reach = max(abs(c) for c in centers) + 8.0 * w
    extent = reach if reach > 8.0 * gam else None
    grid = adaptive_grid(lines, core=8.0 * gam, extent=extent)
    if packet.shape is PacketShape.RECTANGULAR:
        # side lobes of a narrow squared sinc alias on the core spacing;
        # sample them around both components out to the core edge
        spacing = 0.125 * (np.pi / np.sqrt(3.0)) * w
        span = min(8.0 * gam, 3000.0 * spacing)
        osc = np.arange(0.0, span, spacing)
        extra = np.concatenate([c + s * osc for c in centers for s in (1.0, -1.0)])
        extra = extra[(extra >= grid[0]) & (extra <= grid[-1])]
        grid = _prune_close(np.unique(np.concatenate([grid, extra])))
    return grid


def beat_spectrum_photon(
    batom: AtomDoublet,
    init: SuperpositionInit,
    packet: IncidentWavePacket,
    grid=None,
) -> SpectrumDensity:
    """Area-normalized emission line for single-packet excitation.

    The path amplitudes are added before squaring, so the relative
    phase of the initial amplitudes sets constructive or destructive
    interference between the two spectral components.
    """
    if grid is None:
        grid = default_beat_photon_grid(batom, packet)
    grid = np.asarray(grid, dtype=float)
    meta = {
        "mode": "beats-photon",
        "shape": packet.shape.name.lower(),
        "carrier_detuning": packet.carrier_detuning,
        "bandwidth": packet.bandwidth,
        "splitting": batom.splitting,
        "phase_difference": float(np.angle(init.c1) - np.angle(init.c2)),
        "weight_1": float(abs(init.c1) ** 2),
        "weight_2": float(abs(init.c2) ** 2),
    }
    density = beat_emission_density(batom, init, packet, grid)
    return SpectrumDensity(grid, density, meta).normalized()


def beat_success_probability(
    batom: AtomDoublet,
    init: SuperpositionInit,
    packet: IncidentWavePacket,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Probability that the detected-channel photon is emitted at all."""
    gam = batom.gamma_total
    w = packet.bandwidth
    centers = (packet.carrier_detuning, packet.carrier_detuning + batom.splitting)
    half = 600.0 * max(w, gam)
    lo = min(min(centers) - half, -8.0 * gam)
    hi = max(max(centers) + half, 8.0 * gam)
    spec = QuadratureSpec(quad.abs_tol, quad.rel_tol, quad.max_subdivisions, (lo, hi))
    # bracket both components and the atomic line on both flanks
    pts = [c + s for c in centers for s in (-w, 0.0, w)]
    pts += [-0.5 * gam, 0.0, 0.5 * gam]
    return integrate(
        lambda x: beat_emission_density(batom, init, packet, x), spec, points=pts
    )


# ---------------------------------------------------------------------------
# Laser excitation.  Each path keeps its own dressed pair; the paths are
# summed at the amplitude level for every fixed set of intermediate
# frequencies, which is the literal reading of the coherent superposition,
# and the intermediate detunings are then integrated out.


def beat_dressed_pairs(batom: AtomDoublet, drive: LaserDrive) -> tuple[DressedPair, DressedPair]:
    """Dressed resonances of the two driven paths.

    The drive couples to both lower states with the same Rabi
    frequency; the path detunings differ by the splitting.
    """
    atom = _single_path_atom(batom)
    second = LaserDrive(drive.rabi, drive.detuning + batom.splitting)
    return dressed_frequencies(atom, drive), dressed_frequencies(atom, second)


def _phi(pair: DressedPair):
    def amp(y):
        y = np.asarray(y, dtype=float)
        return 1.0 / ((y - pair.omega_plus) * (y - pair.omega_minus))

    return amp


def _coherent_sums(batom, init, pairs):
    """Squared moduli of the two coherent propagator combinations.

    The initial sum weights the paths by the superposition amplitudes;
    the channel sum weights them by the intermediate decay couplings
    and governs every re-excitation block.
    """
    phi1, phi2 = _phi(pairs[0]), _phi(pairs[1])
    root1 = np.sqrt(batom.gamma_1 / (2.0 * np.pi))
    root2 = np.sqrt(batom.gamma_2 / (2.0 * np.pi))

    def initial_sq(y):
        return np.abs(init.c1 * phi1(y) + init.c2 * phi2(y)) ** 2

    def channel_sq(y):
        return np.abs(root1 * phi1(y) + root2 * phi2(y)) ** 2

    return initial_sq, channel_sq


def _beat_lines(batom, pairs):
    atom = _single_path_atom(batom)
    lines = []
    for pair in pairs:
        lines.extend(_pole_lines(atom, pair))
    return lines


def _beat_cascade(batom, init, grid, pairs):
    """Sliding-window integrals of the two-path intermediate cascade."""
    initial_sq, channel_sq = _coherent_sums(batom, init, pairs)
    half = INTERMEDIATE_HALF_WIDTH
    lo, hi = float(np.min(grid)), float(np.max(grid))
    lines = _beat_lines(batom, pairs)
    inner = PanelPrefix(initial_sq, lo - 2.0 * half - 1.0, hi + 2.0 * half + 1.0, lines)
    w1 = inner.window(grid, half)

    def nested(y):
        return channel_sq(y) * inner.window(y, half)

    edge_feats = [(c + s * half, w) for c, w in lines for s in (-1.0, 1.0)]
    outer = PanelPrefix(nested, lo - half - 1.0, hi + half + 1.0, lines + edge_feats)
    w2 = outer.window(grid, half)
    return w1, w2


def _beat_partial_density(batom, init, drive, grid, n_photons, pairs=None, cascade=None):
    if n_photons not in (0, 1, 2):
        raise ValueError("only 0, 1, or 2 intermediate scatters are supported")
    grid = np.asarray(grid, dtype=float)
    if drive.rabi == 0.0:
        # undriven system never emits; avoid 0 * inf at the bare poles
        return np.zeros_like(grid)
    if pairs is None:
        pairs = beat_dressed_pairs(batom, drive)
    initial_sq, channel_sq = _coherent_sums(batom, init, pairs)
    g3 = batom.gamma_emit / (2.0 * np.pi)
    k = 0.25 * drive.rabi**2
    if n_photons == 0:
        return k * g3 * initial_sq(grid)
    if cascade is None:
        cascade = _beat_cascade(batom, init, grid, pairs)
    w1, w2 = cascade
    if n_photons == 1:
        return k**2 * g3 * channel_sq(grid) * w1
    return k**3 * g3 * channel_sq(grid) * w2


def beat_laser_density(
    batom: AtomDoublet,
    init: SuperpositionInit,
    drive: LaserDrive,
    n_photons: int,
    grid,
):
    """Unnormalized partial emission density on the grid.

    Both the initial superposition and the intermediate decay channels
    are summed at the amplitude level before squaring; the intermediate
    detunings are integrated over +-INTERMEDIATE_HALF_WIDTH.
    """
    return _beat_partial_density(batom, init, drive, grid, int(n_photons))


def default_beat_laser_grid(batom: AtomDoublet, drive: LaserDrive) -> np.ndarray:
    """Composite grid resolving all four dressed resonances."""
    gam = batom.gamma_total
    lines = _beat_lines(batom, beat_dressed_pairs(batom, drive))
    reach = max(abs(c) + 8.0 * w for c, w in lines)
    extent = reach if reach > 8.0 * gam else None
    return adaptive_grid(lines, core=8.0 * gam, extent=extent)


def beat_spectrum_laser(
    batom: AtomDoublet,
    init: SuperpositionInit,
    drive: LaserDrive,
    n_photons: int,
    grid=None,
) -> SpectrumDensity:
    """Partial emission line for N intermediate scatters under laser drive.

    The dressed structure is computed per path rather than by
    diagonalizing the drive over all three levels at once, so each
    path's light shift is the single-path one at its own detuning.
    """
    if n_photons not in (0, 1, 2):
        raise ValueError("only 0, 1, or 2 intermediate scatters are supported")
    atom = _single_path_atom(batom)
    second = LaserDrive(drive.rabi, drive.detuning + batom.splitting)
    stark_1 = stark_shift(atom, drive)
    stark_2 = stark_shift(atom, second)
    if grid is None:
        grid = default_beat_laser_grid(batom, drive)
    grid = np.asarray(grid, dtype=float)
    meta = {
        "mode": "beats-laser",
        "scattered": int(n_photons),
        "drive_rabi": drive.rabi,
        "drive_detuning": drive.detuning,
        "splitting": batom.splitting,
        "phase_difference": float(np.angle(init.c1) - np.angle(init.c2)),
        "weight_1": float(abs(init.c1) ** 2),
        "weight_2": float(abs(init.c2) ** 2),
        "light_shift_1": stark_1.delta_s,
        "light_shift_2": stark_2.delta_s,
    }
    density = _beat_partial_density(batom, init, drive, grid, int(n_photons))
    return SpectrumDensity(grid, density, meta).normalized()


def beat_sum_spectrum(
    batom: AtomDoublet,
    init: SuperpositionInit,
    drive: LaserDrive,
    n_max: int,
    grid=None,
) -> SpectrumDensity:
    """Mixture over scatter numbers 0..n_max, renormalized on the grid.

    The mixture weights follow the branching ladder: every intermediate
    scatter costs one more branching back into either lower state.
    """
    n_max = int(n_max)
    if not 0 <= n_max <= 2:
        raise ValueError("only scatter orders up to 2 are implemented")
    if grid is None:
        grid = default_beat_laser_grid(batom, drive)
    grid = np.asarray(grid, dtype=float)
    atom = _single_path_atom(batom)
    pairs = beat_dressed_pairs(batom, drive)
    weights = success_probabilities(atom, n_max)
    needs_cascade = n_max >= 1 and drive.rabi != 0.0
    cascade = _beat_cascade(batom, init, grid, pairs) if needs_cascade else None
    # leading coefficient exactly one so a single-term sum is bitwise
    # identical to the partial spectrum
    total = np.zeros_like(grid)
    for n, weight in enumerate(weights):
        dens = _beat_partial_density(
            batom, init, drive, grid, n, pairs=pairs, cascade=cascade
        )
        total = total + (weight / weights[0]) * dens
    meta = {
        "mode": "beats-laser-sum",
        "n_max": n_max,
        "drive_rabi": drive.rabi,
        "drive_detuning": drive.detuning,
        "splitting": batom.splitting,
        "phase_difference": float(np.angle(init.c1) - np.angle(init.c2)),
        "weight_1": float(abs(init.c1) ** 2),
        "weight_2": float(abs(init.c2) ** 2),
        "truncated_mass": float(sum(weights)),
    }
    return SpectrumDensity(grid, total, meta).normalized()
