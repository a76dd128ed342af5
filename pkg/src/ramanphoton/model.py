"""Problem definition: atoms, wave packets, drives, sampled spectra.

Conventions used throughout the package:

* Everything is expressed in angular-frequency units; pick any consistent
  scale (the bundled presets set the total decay rate of the scatterer
  to 1 and measure detunings in the same unit).
* ``detuning`` always means frequency minus the relevant atomic transition
  frequency.  Incident packets are described by their amplitude spectrum
  over the detuning of the absorbed photon; emitted spectra are densities
  over the detuning of the scattered photon.
* A packet's ``arrival_time`` is when its envelope reaches the scatterer:
  a Lorentzian packet switches on at that instant, a rectangular packet
  occupies ``[arrival_time, arrival_time + duration]``, a Gaussian is
  centered on it.
* Amplitude spectra carry the envelope phase ``exp(i*(detuning - carrier)
  * arrival_time)``; a carrier-frequency global phase is dropped since no
  observable in this package depends on it.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySpectrum, ResolutionWarning

_SQRT3 = np.sqrt(3.0)


class PacketShape(enum.Enum):
    LORENTZIAN = "lorentzian"
    GAUSSIAN = "gaussian"
    RECTANGULAR = "rectangular"

    @classmethod
    def from_name(cls, name: str) -> "PacketShape":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown packet shape {name!r}; expected one of "
                f"{[s.value for s in cls]}"
            ) from None


@dataclass(frozen=True)
class AtomThreeLevel:
    """Lambda scatterer: one absorbing transition, one emitting transition.

    ``gamma_absorb`` and ``gamma_emit`` are the partial decay rates of the
    shared excited state into the incoming and outgoing channel; their sum
    is the total linewidth.
    """

    gamma_absorb: float
    gamma_emit: float

    def __post_init__(self):
        # gamma_absorb = 0 is a legal degenerate atom (nothing ever scatters)
        if self.gamma_absorb < 0 or self.gamma_emit <= 0:
            raise ValueError("need gamma_absorb >= 0 and gamma_emit > 0")

    @property
    def gamma_total(self) -> float:
        return self.gamma_absorb + self.gamma_emit

    @property
    def branching_emit(self) -> float:
        return self.gamma_emit / self.gamma_total


@dataclass(frozen=True)
class AtomDoublet:
    """Scatterer whose lower level is split into two states.

    Both doublet states couple to the same excited state (rates ``gamma_1``
    and ``gamma_2``, transition frequencies ``splitting`` apart) and the
    photon is detected on a third channel with rate ``gamma_emit``.
    """

    gamma_1: float
    gamma_2: float
    gamma_emit: float
    splitting: float

    def __post_init__(self):
        if self.gamma_1 < 0 or self.gamma_2 < 0:
            raise ValueError("doublet rates must be non-negative")
        if self.gamma_1 + self.gamma_2 <= 0:
            raise ValueError("at least one doublet channel must couple")
        if self.gamma_emit <= 0:
            raise ValueError("emission rate must be positive")

    @property
    def gamma_total(self) -> float:
        return self.gamma_1 + self.gamma_2 + self.gamma_emit


@dataclass(frozen=True)
class LaserDrive:
    """Classical drive on the absorbing transition."""

    rabi: float
    detuning: float = 0.0

    def __post_init__(self):
        if self.rabi < 0:
            raise ValueError("Rabi frequency must be non-negative")


@dataclass(frozen=True)
class SuperpositionInit:
    """Initial amplitudes on the two doublet states."""

    c1: complex
    c2: complex

    def __post_init__(self):
        norm = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"initial amplitudes not normalized: |c1|^2+|c2|^2 = {norm}")


@dataclass(frozen=True)
class IncidentWavePacket:
    """Single-photon packet incident on the absorbing transition.

    ``bandwidth`` is the shape parameter of the amplitude spectrum: the
    FWHM of the Lorentzian intensity spectrum, the 1/e half-width of the
    Gaussian amplitude, and ``2*sqrt(3)/duration`` for the rectangular
    pulse (so equal ``bandwidth`` means equal temporal spread).
    """

    shape: PacketShape
    bandwidth: float
    carrier_detuning: float = 0.0
    arrival_time: float = 0.0

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        if self.arrival_time < 0:
            raise ValueError("arrival_time must be nonnegative")

    @classmethod
    def lorentzian(cls, bandwidth, carrier_detuning=0.0, arrival_time=0.0):
        return cls(PacketShape.LORENTZIAN, bandwidth, carrier_detuning, arrival_time)

    @classmethod
    def gaussian(cls, bandwidth, carrier_detuning=0.0, arrival_time=0.0):
        return cls(PacketShape.GAUSSIAN, bandwidth, carrier_detuning, arrival_time)

    @classmethod
    def rectangular(cls, duration=None, bandwidth=None, carrier_detuning=0.0, arrival_time=0.0):
        if (duration is None) == (bandwidth is None):
            raise ValueError("give exactly one of duration, bandwidth")
        if duration is not None:
            if duration <= 0:
                raise ValueError("duration must be positive")
            bandwidth = 2.0 * _SQRT3 / duration
        return cls(PacketShape.RECTANGULAR, bandwidth, carrier_detuning, arrival_time)

    @property
    def duration(self):
        """Temporal support of the rectangular pulse; None for other shapes."""
        if self.shape is PacketShape.RECTANGULAR:
            return 2.0 * _SQRT3 / self.bandwidth
        return None


def wavepacket_amplitude(packet: IncidentWavePacket, detuning) -> np.ndarray:
    """Amplitude spectrum of the packet, normalized to unit integral of its square.

    Evaluated at absolute detuning; the packet is centered on its
    ``carrier_detuning`` and carries the envelope arrival phase.
    """
    x = np.asarray(detuning, dtype=float) - packet.carrier_detuning
    tau = packet.arrival_time
    w = packet.bandwidth
    if packet.shape is PacketShape.LORENTZIAN:
        amp = np.sqrt(w / (2.0 * np.pi)) * np.exp(1j * x * tau) / (x + 0.5j * w)
    elif packet.shape is PacketShape.GAUSSIAN:
        amp = (2.0 / (np.pi * w**2)) ** 0.25 * np.exp(-(x / w) ** 2) * np.exp(1j * x * tau)
    else:
        T = 2.0 * _SQRT3 / w
        # envelope phase referenced to the pulse midpoint tau + T/2
        amp = (
            np.sqrt(T / (2.0 * np.pi))
            * np.exp(1j * x * (tau + 0.5 * T))
            * np.sinc(x * T / (2.0 * np.pi))
        )
    return amp


@dataclass
class SpectrumDensity:
    """Spectral density sampled on a (possibly non-uniform) detuning grid."""

    detuning: np.ndarray
    density: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.detuning = np.asarray(self.detuning, dtype=float)
        self.density = np.asarray(self.density, dtype=float)
        if self.detuning.shape != self.density.shape:
            raise ValueError("detuning and density must have equal shape")
        if self.detuning.ndim != 1 or self.detuning.size < 2:
            raise ValueError("need a 1-d grid with at least two points")
        if np.any(np.diff(self.detuning) <= 0):
            raise ValueError("detuning grid must be strictly increasing")

    def mass(self) -> float:
        return float(np.trapezoid(self.density, self.detuning))

    def normalized(self) -> "SpectrumDensity":
        m = self.mass()
        if m < 1e-12:
            raise EmptySpectrum(f"spectrum mass {m:.3e} too small to normalize")
        self._warn_if_unresolved()
        return SpectrumDensity(self.detuning, self.density / m, dict(self.meta))

    def _warn_if_unresolved(self):
        k = int(np.argmax(self.density))
        top = self.density[k]
        if top <= 0:
            return
        above = self.density >= 0.5 * top
        i = k
        while i > 0 and above[i - 1]:
            i -= 1
        j = k
        while j < above.size - 1 and above[j + 1]:
            j += 1
        if j - i + 1 < 5:
            warnings.warn(
                "tallest spectral feature spans fewer than 5 grid points; "
                "refine the output grid near it",
                ResolutionWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class EmissionResult:
    """Emission spectrum paired with the probability of emission at all."""

    spectrum: SpectrumDensity
    success_probability: float

    def __post_init__(self):
        p = self.success_probability
        if not np.isfinite(p) or p < -1e-9 or p > 1.0 + 1e-9:
            raise ValueError(f"success probability {p!r} outside [0, 1]")
        # tolerate quadrature overshoot at the last few ulps, nothing more
        object.__setattr__(self, "success_probability", min(max(float(p), 0.0), 1.0))


def uniform_grid(lo: float, hi: float, n: int = 4001) -> np.ndarray:
    if not hi > lo:
        raise ValueError("need hi > lo")
    if n < 2:
        raise ValueError("need at least two points")
    return np.linspace(lo, hi, n)


def _prune_close(grid: np.ndarray) -> np.ndarray:
    """Drop points within float rounding of their left neighbor.

    Clusters built around different centers can land on almost the same
    value through different arithmetic; such pairs carry no resolution
    and break three-point peak detection downstream.
    """
    keep = np.empty(grid.shape, dtype=bool)
    keep[0] = True
    np.greater(np.diff(grid), 1e-9 * np.maximum(1.0, np.abs(grid[1:])), out=keep[1:])
    return grid[keep]


def adaptive_grid(lines, core: float = 8.0, extent: float | None = None, n_core: int = 1201) -> np.ndarray:
    """Output grid that resolves narrow lines without an enormous point count.

    ``lines`` is an iterable of ``(center, width)`` pairs.  The grid is a
    uniform core of half-width ``core`` plus, per line, a wide and a tight
    cluster scaled to the line width, plus geometric wings out to
    ``extent`` when that exceeds the core.
    """
    parts = [np.linspace(-core, core, n_core)]
    lo, hi = -core, core
    for center, width in lines:
        if width <= 0:
            raise ValueError("line width must be positive")
        parts.append(center + np.linspace(-8.0, 8.0, 161) * width)
        parts.append(center + np.linspace(-1.5, 1.5, 161) * width)
        lo = min(lo, center - 8.0 * width)
        hi = max(hi, center + 8.0 * width)
    if extent is not None and extent > core:
        wing = core * (extent / core) ** np.linspace(0.0, 1.0, 81)
        parts.append(wing)
        parts.append(-wing)
        lo = min(lo, -extent)
        hi = max(hi, extent)
    grid = np.unique(np.concatenate(parts))
    return _prune_close(grid[(grid >= lo) & (grid <= hi)])
