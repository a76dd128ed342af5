"""Coherent two-path emission: reductions, interference identities, symmetries."""

import numpy as np
import pytest

from ramanphoton import (
    AtomDoublet,
    AtomThreeLevel,
    DegenerateDressingWarning,
    EmptySpectrum,
    IncidentWavePacket,
    LaserDrive,
    SpectrumDensity,
    SuperpositionInit,
    beat_dressed_pairs,
    beat_emission_density,
    beat_laser_density,
    beat_spectrum_laser,
    beat_spectrum_photon,
    beat_success_probability,
    beat_sum_spectrum,
    default_beat_laser_grid,
    default_beat_photon_grid,
    dressed_frequencies,
    find_peaks,
    partial_spectrum,
    success_probability_lorentz,
    unnormalized_emission,
)

# branching values of the worked example: weak doublet channels, strong
# detection channel, splitting twice the linewidth
DOUBLET = AtomDoublet(0.03, 0.03, 0.94, 2.0)
EQUAL = SuperpositionInit(1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0))
OPPOSITE = SuperpositionInit(1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0))


def l1_distance(a: SpectrumDensity, b: SpectrumDensity) -> float:
    assert np.array_equal(a.detuning, b.detuning)
    return float(np.trapezoid(np.abs(a.density - b.density), a.detuning))


def complex_pair():
    c1 = 0.6 + 0.3j
    c2 = np.sqrt(1.0 - abs(c1) ** 2) * np.exp(0.7j)
    return c1, c2


class TestPhotonExcitation:
    def test_single_path_reductions(self):
        bat = AtomDoublet(0.2, 0.3, 0.5, 1.7)
        pk = IncidentWavePacket.lorentzian(0.4, carrier_detuning=0.6, arrival_time=0.3)
        grid = np.linspace(-9.0, 9.0, 4001)

        # c2 = 0: same line as a single-path system of the full width,
        # scaled by the detection branching of the remainder
        d_beat = beat_emission_density(bat, SuperpositionInit(1.0, 0.0), pk, grid)
        d_one = unnormalized_emission(AtomThreeLevel(0.2, 0.8), pk, grid)
        ratio = d_beat / d_one
        assert np.allclose(ratio, 0.5 / 0.8, rtol=1e-12)
        s_beat = beat_spectrum_photon(bat, SuperpositionInit(1.0, 0.0), pk, grid)
        s_one = SpectrumDensity(grid, d_one).normalized()
        assert np.allclose(s_beat.density, s_one.density, rtol=1e-10)

        # c1 = 0: the second path sees the packet displaced by the splitting
        d_beat = beat_emission_density(bat, SuperpositionInit(0.0, 1.0), pk, grid)
        pk_up = IncidentWavePacket.lorentzian(
            0.4, carrier_detuning=0.6 + bat.splitting, arrival_time=0.3
        )
        d_two = unnormalized_emission(AtomThreeLevel(0.3, 0.7), pk_up, grid)
        assert np.allclose(d_beat / d_two, 0.5 / 0.7, rtol=1e-12)

    def test_interference_identity(self):
        bat = AtomDoublet(0.2, 0.3, 0.5, 1.7)
        pk = IncidentWavePacket.lorentzian(0.4, carrier_detuning=0.6)
        grid = np.linspace(-9.0, 9.0, 4001)
        c1, c2 = complex_pair()
        plus = beat_emission_density(bat, SuperpositionInit(c1, c2), pk, grid)
        minus = beat_emission_density(bat, SuperpositionInit(c1, -c2), pk, grid)
        one = beat_emission_density(bat, SuperpositionInit(1.0, 0.0), pk, grid)
        two = beat_emission_density(bat, SuperpositionInit(0.0, 1.0), pk, grid)
        incoherent = 2.0 * (abs(c1) ** 2 * one + abs(c2) ** 2 * two)
        assert np.max(np.abs(plus + minus - incoherent)) < 1e-10 * incoherent.max()

    def test_global_phase_invariance(self):
        pk = IncidentWavePacket.lorentzian(0.1, carrier_detuning=-1.0)
        c1, c2 = complex_pair()
        turn = np.exp(1.3j)
        sa = beat_spectrum_photon(DOUBLET, SuperpositionInit(c1, c2), pk)
        sb = beat_spectrum_photon(DOUBLET, SuperpositionInit(turn * c1, turn * c2), pk)
        assert np.max(np.abs(sa.density - sb.density)) < 1e-12 * sa.density.max()

    def test_resolved_components_and_phase_contrast(self):
        pk = IncidentWavePacket.lorentzian(0.1, carrier_detuning=-1.0)

        peaks = find_peaks(beat_spectrum_photon(DOUBLET, EQUAL, pk))
        assert len(peaks) == 2
        assert abs(peaks[0].position + peaks[1].position) < 1e-6
        assert peaks[1].position - peaks[0].position == pytest.approx(2.0, rel=0.05)

        # the opposite phase fills the midpoint with a genuine local maximum
        peaks_op = find_peaks(beat_spectrum_photon(DOUBLET, OPPOSITE, pk))
        assert len(peaks_op) == 3
        assert abs(peaks_op[1].position) < 0.05

        # a packet wider than the splitting merges everything into one line
        broad = IncidentWavePacket.lorentzian(3.0, carrier_detuning=-1.0)
        assert len(find_peaks(beat_spectrum_photon(DOUBLET, EQUAL, broad))) == 1

    def test_midpoint_symmetry(self):
        # midpoint tuning with equal weights is reflection-symmetric for
        # any relative phase and arrival time
        grid = np.linspace(-7.0, 7.0, 2801)
        init = SuperpositionInit(np.sqrt(0.5), np.sqrt(0.5) * np.exp(0.9j))
        pk = IncidentWavePacket.lorentzian(0.3, carrier_detuning=-1.0, arrival_time=0.7)
        d = beat_emission_density(DOUBLET, init, pk, grid)
        assert np.max(np.abs(d - d[::-1])) < 1e-12 * d.max()
        pk = IncidentWavePacket.rectangular(
            bandwidth=0.3, carrier_detuning=-1.0, arrival_time=0.7
        )
        d = beat_emission_density(DOUBLET, init, pk, grid)
        assert np.max(np.abs(d - d[::-1])) < 1e-12 * d.max()

    def test_exchange_symmetry(self):
        # equal doublet rates: swapping the amplitudes (conjugated) while
        # moving the carrier to the mirror position reflects the line
        bat = AtomDoublet(0.3, 0.3, 0.4, 1.3)
        grid = np.linspace(-7.0, 7.0, 2801)
        ca, cb = 0.8 * np.exp(0.4j), 0.6 * np.exp(-0.2j)
        pk = IncidentWavePacket.lorentzian(0.5, carrier_detuning=0.4, arrival_time=0.5)
        mirrored = IncidentWavePacket.lorentzian(
            0.5, carrier_detuning=-(0.4 + bat.splitting), arrival_time=0.5
        )
        d = beat_emission_density(bat, SuperpositionInit(ca, cb), pk, grid)
        d_x = beat_emission_density(
            bat, SuperpositionInit(np.conj(cb), np.conj(ca)), mirrored, grid
        )
        assert np.max(np.abs(d - d_x[::-1])) < 1e-12 * d.max()

    def test_success_probability(self):
        bat = AtomDoublet(0.2, 0.3, 0.5, 1.7)
        pk = IncidentWavePacket.lorentzian(0.4, carrier_detuning=0.6)
        got = beat_success_probability(bat, SuperpositionInit(1.0, 0.0), pk)
        ref = success_probability_lorentz(AtomThreeLevel(0.2, 0.8), pk) * 0.5 / 0.8
        assert got == pytest.approx(ref, rel=1e-8)

        c1, c2 = complex_pair()
        p_plus = beat_success_probability(bat, SuperpositionInit(c1, c2), pk)
        p_minus = beat_success_probability(bat, SuperpositionInit(c1, -c2), pk)
        p_one = beat_success_probability(bat, SuperpositionInit(1.0, 0.0), pk)
        p_two = beat_success_probability(bat, SuperpositionInit(0.0, 1.0), pk)
        incoherent = 2.0 * (abs(c1) ** 2 * p_one + abs(c2) ** 2 * p_two)
        assert p_plus + p_minus == pytest.approx(incoherent, rel=1e-8)

    def test_default_grid_covers_both_components(self):
        pk = IncidentWavePacket.lorentzian(0.1, carrier_detuning=-1.0)
        grid = default_beat_photon_grid(DOUBLET, pk)
        for center in (-1.0, 1.0):
            near = np.abs(grid - center) < 0.02
            assert near.sum() >= 3
        assert np.all(np.diff(grid) > 0)


class TestLaserExcitation:
    def test_single_path_reduction(self):
        # with one doublet channel switched off the partial spectra match
        # the single-path module for every scatter order
        bat = AtomDoublet(0.3, 0.0, 0.7, 5.0)
        atom = AtomThreeLevel(0.3, 0.7)
        drive = LaserDrive(1.2, 0.6)
        grid = np.linspace(-8.0, 8.0, 1201)
        init = SuperpositionInit(1.0, 0.0)
        for n in (0, 1, 2):
            got = beat_spectrum_laser(bat, init, drive, n, grid)
            ref = partial_spectrum(atom, drive, n, grid)
            assert np.allclose(got.density, ref.density, rtol=1e-10)

    def test_interference_identity(self):
        drive = LaserDrive(1.0, -1.0)
        grid = np.linspace(-8.0, 8.0, 1201)
        c1, c2 = complex_pair()
        for n in (0, 1, 2):
            plus = beat_laser_density(DOUBLET, SuperpositionInit(c1, c2), drive, n, grid)
            minus = beat_laser_density(DOUBLET, SuperpositionInit(c1, -c2), drive, n, grid)
            one = beat_laser_density(DOUBLET, SuperpositionInit(1.0, 0.0), drive, n, grid)
            two = beat_laser_density(DOUBLET, SuperpositionInit(0.0, 1.0), drive, n, grid)
            incoherent = 2.0 * (abs(c1) ** 2 * one + abs(c2) ** 2 * two)
            assert np.max(np.abs(plus + minus - incoherent)) < 1e-10 * incoherent.max()

    def test_doublet_separation_and_light_shift(self):
        drive = LaserDrive(1.0, -1.0)
        s0 = beat_spectrum_laser(DOUBLET, EQUAL, drive, 0)
        peaks = sorted(find_peaks(s0), key=lambda p: -p.height)[:2]
        lo, hi = sorted(p.position for p in peaks)
        assert abs(lo + hi) < 1e-6
        # each component is pushed outward by the single-path light shift
        assert hi - lo > DOUBLET.splitting
        assert hi - lo == pytest.approx(2.0 * 1.186072557850, rel=1e-3)
        assert s0.meta["light_shift_1"] == pytest.approx(-0.186072557850, abs=1e-9)
        assert s0.meta["light_shift_2"] == pytest.approx(0.186072557850, abs=1e-9)

    def test_phase_contrast_between_peaks(self):
        drive = LaserDrive(1.0, -1.0)
        s_eq = beat_spectrum_laser(DOUBLET, EQUAL, drive, 0)
        s_op = beat_spectrum_laser(DOUBLET, OPPOSITE, drive, 0)
        mid_eq = float(np.interp(0.0, s_eq.detuning, s_eq.density))
        mid_op = float(np.interp(0.0, s_op.detuning, s_op.density))
        assert mid_op > 2.5 * mid_eq
        # the opposite phase carries a genuine local maximum at the center
        centered = [p for p in find_peaks(s_op) if abs(p.position) < 0.05]
        assert len(centered) == 1

    def test_partial_spectra_collapse_or_differ_by_phase(self):
        drive = LaserDrive(1.0, -1.0)
        grid = default_beat_laser_grid(DOUBLET, drive)

        # equal doublet rates with in-phase amplitudes: the initial sum is
        # proportional to the channel sum, so all partials share one shape
        s0 = beat_spectrum_laser(DOUBLET, EQUAL, drive, 0, grid)
        s1 = beat_spectrum_laser(DOUBLET, EQUAL, drive, 1, grid)
        s2 = beat_spectrum_laser(DOUBLET, EQUAL, drive, 2, grid)
        assert l1_distance(s1, s0) < 1e-6
        assert l1_distance(s2, s1) < 1e-6

        # opposite phase: the zero-scatter line differs strongly while the
        # higher orders still share the channel-sum shape
        s0 = beat_spectrum_laser(DOUBLET, OPPOSITE, drive, 0, grid)
        s1 = beat_spectrum_laser(DOUBLET, OPPOSITE, drive, 1, grid)
        s2 = beat_spectrum_laser(DOUBLET, OPPOSITE, drive, 2, grid)
        assert l1_distance(s1, s0) > 1e-2
        assert l1_distance(s2, s1) < 1e-6

    def test_exchange_symmetry(self):
        bat = AtomDoublet(0.3, 0.3, 0.4, 1.3)
        grid = np.linspace(-7.0, 7.0, 2801)
        ca, cb = 0.8 * np.exp(0.4j), 0.6 * np.exp(-0.2j)
        fwd = LaserDrive(0.8, 0.4)
        rev = LaserDrive(0.8, -(0.4 + bat.splitting))
        for n in (0, 1):
            d = beat_laser_density(bat, SuperpositionInit(ca, cb), fwd, n, grid)
            d_x = beat_laser_density(
                bat, SuperpositionInit(np.conj(cb), np.conj(ca)), rev, n, grid
            )
            assert np.max(np.abs(d - d_x[::-1])) < 1e-10 * d.max()

    def test_sum_spectrum(self):
        drive = LaserDrive(1.0, -1.0)
        s0 = beat_spectrum_laser(DOUBLET, EQUAL, drive, 0)
        total0 = beat_sum_spectrum(DOUBLET, EQUAL, drive, 0)
        assert np.array_equal(total0.density, s0.density)

        total2 = beat_sum_spectrum(DOUBLET, EQUAL, drive, 2)
        assert total2.meta["truncated_mass"] == pytest.approx(0.999784, abs=1e-9)
        assert total2.meta["truncated_mass"] >= 0.9997
        assert l1_distance(total2, s0) < 1e-6

        with pytest.raises(ValueError):
            beat_sum_spectrum(DOUBLET, EQUAL, drive, 3)
        with pytest.raises(ValueError):
            beat_sum_spectrum(DOUBLET, EQUAL, drive, -1)

    def test_degenerate_warning_and_validation(self):
        # path 1 sits exactly on resonance with a weak drive
        with pytest.warns(DegenerateDressingWarning):
            beat_spectrum_laser(DOUBLET, EQUAL, LaserDrive(0.4, 0.0), 0)
        with pytest.raises(ValueError):
            beat_spectrum_laser(DOUBLET, EQUAL, LaserDrive(1.0, -1.0), 3)
        with pytest.raises(EmptySpectrum):
            beat_spectrum_laser(DOUBLET, EQUAL, LaserDrive(0.0, -1.0), 0)

    def test_dressed_pairs_and_grid(self):
        drive = LaserDrive(1.0, -1.0)
        p1, p2 = beat_dressed_pairs(DOUBLET, drive)
        atom = AtomThreeLevel(0.06, 0.94)
        assert p1 == dressed_frequencies(atom, drive)
        assert p2 == dressed_frequencies(atom, LaserDrive(1.0, 1.0))

        grid = default_beat_laser_grid(DOUBLET, drive)
        for pair in (p1, p2):
            for pole in (pair.omega_plus, pair.omega_minus):
                width = max(-2.0 * pole.imag, 1e-3)
                near = np.abs(grid - pole.real) < 0.2 * width
                assert near.sum() >= 3
