"""Brute-force validator: discretize the continua, integrate the dynamics.

Each emission channel is replaced by a finite comb of field modes and
the coupled amplitude equations are integrated with a fixed-step
fourth-order scheme.  Spectra come out of direct time evolution, with
no closed-form input, so agreement with the analytic routes elsewhere
in the package is evidence rather than tautology.  For the same reason
this module must stay independent: it imports only the shared domain
types and the propagator kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import rk4_laser_n0, rk4_photon
from .errors import NormDrift, RecurrenceHorizon
from .model import (
    AtomThreeLevel,
    EmissionResult,
    IncidentWavePacket,
    LaserDrive,
    SpectrumDensity,
    wavepacket_amplitude,
)

__all__ = [
    "ModeGrid",
    "OracleState",
    "RECURRENCE_FACTOR",
    "default_mode_grid",
    "dump_amplitudes",
    "oracle_laser_n0",
    "oracle_photon_scattering",
]

# simulated time must stay this far under the mode-comb revival 2*pi/spacing
RECURRENCE_FACTOR = 5.0

_PHOTON_DRIFT_TOL = 1e-5
_LASER_BUDGET_TOL = 1e-4


@dataclass(frozen=True)
class ModeGrid:
    """Symmetric comb of field modes around each atomic transition.

    ``span`` is the detuning half-width, ``spacing`` the mode distance;
    per-channel couplings follow from the density of states as
    sqrt(rate * spacing / 2 pi).
    """

    span: float = 40.0
    spacing: float = 0.02

    def __post_init__(self):
        if self.span <= 0 or self.spacing <= 0:
            raise ValueError("span and spacing must be positive")
        ratio = self.span / self.spacing
        if abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ValueError("span must be an integer multiple of the spacing")

    @property
    def n_modes(self) -> int:
        return 2 * int(round(self.span / self.spacing)) + 1

    @property
    def recurrence_time(self) -> float:
        return 2.0 * np.pi / self.spacing

    def detunings(self) -> np.ndarray:
        half = (self.n_modes - 1) // 2
        return self.spacing * (np.arange(self.n_modes) - half)

    def coupling(self, rate: float) -> float:
        return float(np.sqrt(rate * self.spacing / (2.0 * np.pi)))


@dataclass(frozen=True)
class OracleState:
    """Raw amplitudes at the end of a run.

    ``ground`` and ``loss`` are only populated by the laser variant; the
    photon run keeps the whole excitation in (excited, input, output).
    """

    excited: complex
    input_modes: np.ndarray
    output_modes: np.ndarray
    ground: complex = 0.0j
    loss: float = 0.0

    def norm(self) -> float:
        return float(
            abs(self.ground) ** 2
            + abs(self.excited) ** 2
            + np.vdot(self.input_modes, self.input_modes).real
            + np.vdot(self.output_modes, self.output_modes).real
        )


def default_mode_grid(atom: AtomThreeLevel) -> ModeGrid:
    """Forty linewidths of span at fifty modes per linewidth."""
    width = atom.gamma_total
    return ModeGrid(span=40.0 * width, spacing=0.02 * width)


def _check_run(grid: ModeGrid, width: float, t_end: float) -> None:
    if grid.spacing > width / 20.0 + 1e-12 * width:
        raise ValueError("mode spacing must resolve the linewidth (<= width/20)")
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if RECURRENCE_FACTOR * t_end > grid.recurrence_time:
        raise RecurrenceHorizon(
            f"t_end {t_end:g} within a factor {RECURRENCE_FACTOR:g} of the "
            f"mode-comb revival {grid.recurrence_time:g}"
        )


def _step_plan(grid: ModeGrid, width: float, t_end: float) -> tuple[float, int]:
    # phase advance per step: <= 0.002 on the atomic scale, <= 0.05 at the
    # fastest mode of the comb
    limit = min(0.002 / width, 0.05 / grid.span)
    steps = int(np.ceil(t_end / limit))
    return t_end / steps, steps


def oracle_photon_scattering(
    atom: AtomThreeLevel,
    packet: IncidentWavePacket,
    grid: ModeGrid | None = None,
    t_end: float = 60.0,
    return_state: bool = False,
):
    """Scatter a discretized single-photon packet off the atom.

    The input channel starts in the sampled packet amplitudes (delay
    phases included) normalized to one excitation; the returned density
    is |output amplitude|^2 per unit detuning rescaled by the packet
    mass inside the window, and the success probability is its total.
    Pass ``return_state`` to also get the raw final amplitudes.
    """
    if grid is None:
        grid = default_mode_grid(atom)
    width = atom.gamma_total
    _check_run(grid, width, t_end)
    if t_end < 50.0 / width + packet.arrival_time:
        raise ValueError("t_end must cover the packet delay plus 50 lifetimes")

    det = grid.detunings()
    sampled = np.sqrt(grid.spacing) * np.asarray(
        wavepacket_amplitude(packet, det), dtype=complex
    )
    input_mass = float(np.vdot(sampled, sampled).real)
    if input_mass <= 1e-12:
        raise ValueError("packet carries no weight inside the mode window")
    a_init = sampled / np.sqrt(input_mass)

    dt, steps = _step_plan(grid, width, t_end)
    excited, a_out, b_out, drift = rk4_photon(
        det,
        grid.coupling(atom.gamma_absorb),
        grid.coupling(atom.gamma_emit),
        a_init,
        dt,
        steps,
    )
    if drift > _PHOTON_DRIFT_TOL:
        raise NormDrift(f"norm drifted by {drift:.3e} (tolerance {_PHOTON_DRIFT_TOL:g})")

    emitted = float(np.vdot(b_out, b_out).real)
    density = input_mass * np.abs(b_out) ** 2 / grid.spacing
    meta = {
        "mode": "oracle-photon",
        "span": grid.span,
        "spacing": grid.spacing,
        "t_end": t_end,
        "dt": dt,
        "steps": steps,
        "input_mass": input_mass,
        "norm_drift": drift,
        "residual_excited": abs(excited) ** 2,
    }
    result = EmissionResult(
        SpectrumDensity(det, density, meta), input_mass * emitted
    )
    if return_state:
        scale = np.sqrt(input_mass)
        state = OracleState(
            excited=scale * excited,
            input_modes=scale * a_out,
            output_modes=scale * b_out,
        )
        return result, state
    return result


def oracle_laser_n0(
    atom: AtomThreeLevel,
    drive: LaserDrive,
    grid: ModeGrid | None = None,
    t_end: float = 60.0,
    return_state: bool = False,
):
    """Spectrum of the first emitted photon under laser drive.

    Decay back to the starting state is modeled as plain loss on the
    excited level, which truncates re-excitation and isolates the
    zero-rescatter process.  The budget norm + accumulated loss must
    stay at one; its worst deviation is checked and reported.
    """
    if grid is None:
        grid = default_mode_grid(atom)
    width = atom.gamma_total
    _check_run(grid, width, t_end)
    if t_end < 50.0 / width:
        raise ValueError("t_end must cover 50 lifetimes")

    det = grid.detunings()
    dt, steps = _step_plan(grid, width, t_end)
    ground, excited, b_out, loss, budget_err = rk4_laser_n0(
        det - drive.detuning,
        grid.coupling(atom.gamma_emit),
        0.5 * drive.rabi,
        drive.detuning,
        atom.gamma_absorb,
        dt,
        steps,
    )
    if budget_err > _LASER_BUDGET_TOL:
        raise NormDrift(
            f"norm plus loss deviated by {budget_err:.3e} "
            f"(tolerance {_LASER_BUDGET_TOL:g})"
        )

    emitted = float(np.vdot(b_out, b_out).real)
    meta = {
        "mode": "oracle-laser-n0",
        "span": grid.span,
        "spacing": grid.spacing,
        "t_end": t_end,
        "dt": dt,
        "steps": steps,
        "emitted_mass": emitted,
        "loss_integral": loss,
        "budget_error": budget_err,
        "survivor_norm": abs(ground) ** 2 + abs(excited) ** 2,
    }
    spectrum = SpectrumDensity(det, np.abs(b_out) ** 2 / grid.spacing, meta)
    normalized = spectrum.normalized()
    if return_state:
        state = OracleState(
            excited=excited,
            input_modes=np.zeros(0, dtype=complex),
            output_modes=b_out,
            ground=ground,
            loss=loss,
        )
        return normalized, state
    return normalized


def dump_amplitudes(grid: ModeGrid, state: OracleState, destination) -> None:
    """Write the raw mode amplitudes as delimited text for inspection.

    Columns: detuning, input real/imag, output real/imag.  The scalar
    amplitudes go into the header.  ``destination`` is a path or a
    writable text handle, as accepted by numpy.savetxt.
    """
    det = grid.detunings()
    n = det.size
    if state.output_modes.shape != (n,):
        raise ValueError("state does not match the mode grid")
    inputs = state.input_modes
    if inputs.size == 0:
        inputs = np.zeros(n, dtype=complex)
    if inputs.shape != (n,):
        raise ValueError("state does not match the mode grid")
    table = np.column_stack(
        [det, inputs.real, inputs.imag, state.output_modes.real, state.output_modes.imag]
    )
    header = (
        "columns: detuning re_input im_input re_output im_output\n"
        f"excited = {state.excited.real:.12e} {state.excited.imag:+.12e}j\n"
        f"ground = {state.ground.real:.12e} {state.ground.imag:+.12e}j\n"
        f"loss = {state.loss:.12e}"
    )
    np.savetxt(destination, table, fmt="%.12e", header=header)
