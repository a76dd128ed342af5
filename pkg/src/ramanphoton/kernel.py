"""Monochromatic scattering amplitude and wave-packet emission density.

One photon passing through the absorb-then-emit cascade is described by a
single complex amplitude per pair of incoming and outgoing detunings.  At
finite observation time it is a three-way interference between the two
free oscillations and the decaying intermediate level; in the long-time
limit only the energy-conserving part survives.

The emission density for an incident wave packet is the squared modulus
of the packet-weighted amplitude integral over the incoming detuning.
The default evaluation path splits that integral into a line part, an
intermediate-level part, and an oscillatory part, each of which closes
into contour expressions per packet shape: rational spectra (Lorentzian,
rectangular) by residues, Gaussian spectra through the Faddeeva function.
No quadrature is involved, so the cost is flat in the observation time.

``strategy="quadrature"`` instead integrates the raw product of packet
amplitude and kernel with an oscillation-resolving mesh.  Its cost grows
linearly with the observation time; it exists as an independent
cross-check of the contour algebra and for arbitrary future packet
shapes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import wofz

from ._quadrature import adaptive_gk
from .errors import PacketTailWarning, PoleOnGrid
from .measures import DEFAULT_QUADRATURE, QuadratureSpec
from .model import (
    AtomThreeLevel,
    IncidentWavePacket,
    PacketShape,
    wavepacket_amplitude,
)

# incoming-detuning quadrature window half-width, in units of
# max(packet bandwidth, total linewidth)
WINDOW_FACTOR = 60.0

# below bandwidth*delay of this, a Gaussian envelope has weight in t < 0
# beyond what the long-time product form can represent
_CAUSAL_BANDWIDTH_DELAY_MIN = 8.0


@dataclass(frozen=True)
class KernelMode:
    """Evaluation mode: a finite observation time, or the long-time limit."""

    time: float | None = None

    def __post_init__(self):
        if self.time is not None:
            t = float(self.time)
            if not np.isfinite(t) or t < 0:
                raise ValueError("observation time must be finite and >= 0")
            object.__setattr__(self, "time", t)

    @classmethod
    def finite_time(cls, time):
        return cls(float(time))

    @classmethod
    def asymptotic(cls):
        return cls(None)

    @property
    def is_asymptotic(self) -> bool:
        return self.time is None


def _e1(z):
    """(exp(z) - 1)/z, series-stabilized near z = 0. Entire in z."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 1e-5
    zs = z[small]
    out[small] = 1.0 + zs / 2.0 + zs**2 / 6.0 + zs**3 / 24.0
    zb = z[~small]
    out[~small] = (np.exp(zb) - 1.0) / zb
    return out


def _prefactor(atom: AtomThreeLevel) -> float:
    return np.sqrt(atom.gamma_absorb * atom.gamma_emit) / (2.0 * np.pi)


def kernel_u(mode, atom, detuning_in, detuning_out):
    """Scattering amplitude from one monochromatic in-detuning to one out.

    Finite-time mode returns the full three-term interference; it is
    entire in both detunings (the line pole is removable and handled by
    a stabilized difference).  The long-time mode keeps only the
    energy-conserving factor and therefore has a genuine pole at equal
    detunings, which raises PoleOnGrid when hit exactly; integrals over
    it belong to the contour machinery of the density routines, not to
    pointwise evaluation.
    """
    d1 = np.asarray(detuning_in, dtype=float)
    d2 = np.asarray(detuning_out, dtype=float)
    gam = atom.gamma_total
    pref = _prefactor(atom)
    if mode.is_asymptotic:
        diff = d2 - d1
        if np.any(diff == 0.0):
            raise PoleOnGrid(
                "long-time kernel evaluated exactly at equal detunings"
            )
        return pref / ((d2 + 0.5j * gam) * diff)
    t = mode.time
    big_d1 = d1 + 0.5j * gam
    big_d2 = d2 + 0.5j * gam
    diff = d2 - d1
    osc = np.exp(-1j * d1 * t) * (-1j * t) * _e1(-1j * diff * t) / big_d2
    dec = (np.exp(-0.5 * gam * t) - np.exp(-1j * d1 * t)) / (big_d1 * big_d2)
    return pref * (osc + dec)


def quadrature_window(packet: IncidentWavePacket, atom: AtomThreeLevel):
    """Incoming-detuning integration window around the packet carrier."""
    half = WINDOW_FACTOR * max(packet.bandwidth, atom.gamma_total)
    return packet.carrier_detuning - half, packet.carrier_detuning + half


def _pv_gauss(width, s, beta):
    """PV of exp(-u^2/width^2 + i*u*s)/(beta - u) over the real line.

    Contour-shifted onto the saddle line; the half residue of the real
    pole is restored explicitly.  ``beta`` may be an array.
    """
    beta = np.asarray(beta, dtype=float)
    gs = np.exp(-0.25 * width**2 * s**2)
    on_pole = np.exp(-(beta / width) ** 2 + 1j * beta * s)
    if s >= 0.0:
        return 1j * np.pi * (gs * wofz(-beta / width + 0.5j * width * s) - on_pole)
    return 1j * np.pi * (-gs * wofz(beta / width - 0.5j * width * s) + on_pole)


def _pole_gauss(width, s, c):
    """exp(-u^2/width^2 + i*u*s)/(u - c) integrated over the real line.

    Requires Im c < 0.  When the saddle line at Im u = width^2 s/2 dips
    below the pole, the sweep picks up the full residue; the exponent of
    that residue term is assembled in one piece so it never overflows.
    """
    z = c / width - 0.5j * width * s
    gs = np.exp(-0.25 * width**2 * s**2)
    if z.imag > 0.0:
        residue = -2j * np.pi * np.exp(-((c / width) ** 2) + 1j * c * s)
        return 1j * np.pi * gs * wofz(z) + residue
    return -1j * np.pi * gs * wofz(-z)


def _finite_lorentzian(packet, atom, d2, t):
    w = packet.bandwidth
    dc = packet.carrier_detuning
    tau = packet.arrival_time
    gam = atom.gamma_total
    if t <= tau:
        # the packet is strictly one-sided in time: nothing has arrived
        return np.zeros_like(d2, dtype=complex)
    s = tau - t
    amp_c = np.sqrt(w / (2.0 * np.pi)) * np.exp(-1j * dc * tau)
    p = dc - 0.5j * w
    a = -0.5j * gam
    big_d2 = d2 + 0.5j * gam
    line = np.exp(1j * d2 * s) / ((d2 - p) * big_d2)
    # divided difference of exp(i z s)/(z - d2) across the two lower poles;
    # confluent at packet width == linewidth with carrier on resonance
    if abs(p - a) > 1e-6 * max(1.0, gam):
        dg = (np.exp(1j * p * s) / (p - d2) - np.exp(1j * a * s) / (a - d2)) / (p - a)
    else:
        mid = 0.5 * (p + a)
        dg = np.exp(1j * mid * s) * (1j * s / (mid - d2) - 1.0 / (mid - d2) ** 2)
    return -2j * np.pi * _prefactor(atom) * amp_c * (line + dg)


def _finite_rectangular(packet, atom, d2, t):
    dur = packet.duration
    dc = packet.carrier_detuning
    tau = packet.arrival_time
    gam = atom.gamma_total
    beta = d2 - dc
    big_d2 = d2 + 0.5j * gam
    b_amp = -1j / np.sqrt(2.0 * np.pi * dur)
    pole_c = -dc - 0.5j * gam

    def piece_real(phi):
        # PV of exp(i x phi)/(x (x - beta)): sign from the closing half-plane
        return 1j * np.pi * np.sign(phi) * (1j * phi) * _e1(1j * beta * phi)

    def piece_cplx(phi):
        # exp(i x phi)/(x - pole_c) with the pole below the axis
        if phi < 0.0:
            return -2j * np.pi * np.exp(1j * pole_c * phi)
        if phi == 0.0:
            return -1j * np.pi
        return 0.0

    phi_lead = tau + dur - t
    phi_trail = tau - t
    line_pv = piece_real(phi_lead) - piece_real(phi_trail)
    atom_pole = (
        piece_cplx(phi_lead)
        - 1j * np.pi * np.sign(phi_lead)
        - piece_cplx(phi_trail)
        + 1j * np.pi * np.sign(phi_trail)
    )
    osc = b_amp * np.exp(-1j * dc * t) * (line_pv - atom_pole / pole_c)
    line = -1j * np.pi * wavepacket_amplitude(packet, d2) * np.exp(-1j * d2 * t)
    return _prefactor(atom) * (line + osc) / big_d2


def _finite_gaussian(packet, atom, d2, t):
    w = packet.bandwidth
    dc = packet.carrier_detuning
    tau = packet.arrival_time
    gam = atom.gamma_total
    beta = d2 - dc
    big_d2 = d2 + 0.5j * gam
    pole_c = complex(-dc, -0.5 * gam)
    norm = (2.0 / (np.pi * w**2)) ** 0.25
    s = tau - t
    line = np.exp(-1j * d2 * t) * _pv_gauss(w, tau, beta)
    atom_pole = np.exp(-0.5 * gam * t) * _pole_gauss(w, tau, pole_c)
    osc = np.exp(-1j * dc * t) * (-_pv_gauss(w, s, beta) - _pole_gauss(w, s, pole_c))
    return _prefactor(atom) * norm * (line + atom_pole + osc) / big_d2


def _quadrature_amplitude(packet, atom, d2, t, quad: QuadratureSpec):
    lo, hi = quadrature_window(packet, atom)
    dur = packet.duration or 0.0
    freq = t + packet.arrival_time + dur
    step = min((hi - lo) / 64.0, np.pi / (2.0 * max(freq, 1e-9)))
    n = int(np.ceil((hi - lo) / step)) + 1
    mesh = np.linspace(lo, hi, n)
    w = packet.bandwidth
    dc = packet.carrier_detuning
    gam = atom.gamma_total
    extra = [dc - 7 * w, dc - w, dc, dc + w, dc + 7 * w, -gam, 0.0, gam]
    mode = KernelMode.finite_time(t)
    out = np.empty(d2.shape, dtype=complex)
    for j, d2j in enumerate(d2):
        breaks = np.unique(np.clip(np.concatenate([mesh, extra, [d2j]]), lo, hi))

        def f(x):
            return wavepacket_amplitude(packet, x) * kernel_u(mode, atom, x, d2j)

        val, _ = adaptive_gk(
            f,
            breaks,
            abs_tol=quad.abs_tol,
            rel_tol=quad.rel_tol,
            max_panels=2 * breaks.size + quad.max_subdivisions,
        )
        out[j] = val
    return out


def emission_amplitude(
    packet,
    atom,
    detuning_out,
    time,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    strategy: str = "analytic",
):
    """Packet-weighted scattering amplitude at the given output detunings."""
    if time < 0:
        raise ValueError("observation time must be >= 0")
    d2 = np.asarray(detuning_out, dtype=float)
    scalar = d2.ndim == 0
    d2 = np.atleast_1d(d2)
    if time == 0:
        out = np.zeros_like(d2, dtype=complex)
    elif strategy == "analytic":
        if packet.shape is PacketShape.LORENTZIAN:
            out = _finite_lorentzian(packet, atom, d2, time)
        elif packet.shape is PacketShape.RECTANGULAR:
            out = _finite_rectangular(packet, atom, d2, time)
        elif packet.shape is PacketShape.GAUSSIAN:
            out = _finite_gaussian(packet, atom, d2, time)
        else:
            raise ValueError(f"unknown packet shape: {packet.shape}")
    elif strategy == "quadrature":
        out = _quadrature_amplitude(packet, atom, d2, time, quad)
    else:
        raise ValueError(f"unknown strategy: {strategy!r}")
    return out[0] if scalar else out


def emission_density(
    packet,
    atom,
    detuning_out,
    mode,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    strategy: str = "analytic",
):
    """Probability density of the emitted photon over output detuning.

    Long-time mode returns the closed product of the emission line and
    the packet power spectrum; it treats the packet as arriving entirely
    after the interaction starts, which for Gaussian envelopes with
    small bandwidth*delay truncates a real tail (PacketTailWarning).
    Finite-time mode squares the emission amplitude.
    """
    d2 = np.asarray(detuning_out, dtype=float)
    if mode.is_asymptotic:
        if (
            packet.shape is PacketShape.GAUSSIAN
            and packet.bandwidth * packet.arrival_time < _CAUSAL_BANDWIDTH_DELAY_MIN
        ):
            warnings.warn(
                "Gaussian envelope has non-negligible weight before the "
                "interaction starts; the long-time product form ignores "
                "it. Use arrival_time >= {:.1f}/bandwidth.".format(
                    _CAUSAL_BANDWIDTH_DELAY_MIN
                ),
                PacketTailWarning,
                stacklevel=2,
            )
        psi = wavepacket_amplitude(packet, d2)
        gam = atom.gamma_total
        return (
            atom.gamma_absorb
            * atom.gamma_emit
            * np.abs(psi) ** 2
            / (d2**2 + 0.25 * gam**2)
        )
    amp = emission_amplitude(packet, atom, d2, mode.time, quad, strategy)
    return np.abs(amp) ** 2
