"""Dressed-state quantities and driven-emission spectra."""

import numpy as np
import pytest

from ramanphoton import (
    AtomThreeLevel,
    DegenerateDressingWarning,
    EmptySpectrum,
    LaserDrive,
    QuadratureSpec,
    SpectrumDensity,
    amplitude_N0,
    amplitude_N1,
    amplitude_N2,
    default_laser_grid,
    dressed_frequencies,
    dressed_line_density,
    find_peaks,
    integrate,
    partial_norm,
    partial_spectrum,
    s0_spectrum,
    stark_shift,
    success_probabilities,
    uniform_grid,
)
from ramanphoton.laser_spectra import _abs_phi_sq

ATOM = AtomThreeLevel(0.5, 0.5)


def kappa_form_density(atom, drive, x):
    """The shift/width parametrization of the zero-scatter line."""
    st = stark_shift(atom, drive)
    gam = atom.gamma_total
    f1 = x - drive.detuning - st.delta_s + 0.5j * st.kappa
    f2 = x + st.delta_s + 0.5j * (gam - st.kappa)
    return 0.25 * drive.rabi**2 * gam / (2.0 * np.pi) / np.abs(f1 * f2) ** 2


def test_dressed_frequency_values():
    bare = dressed_frequencies(ATOM, LaserDrive(rabi=0.0, detuning=0.0))
    assert {bare.omega_plus, bare.omega_minus} == {0.0, -0.5j}

    strong = dressed_frequencies(ATOM, LaserDrive(rabi=2.0, detuning=0.0))
    split = np.sqrt(15.0) / 4.0
    assert strong.omega_plus == pytest.approx(split - 0.25j, rel=1e-14)
    assert strong.omega_minus == pytest.approx(-split - 0.25j, rel=1e-14)

    rng = np.random.default_rng(7)
    for _ in range(50):
        drive = LaserDrive(rabi=float(rng.uniform(0.05, 6)), detuning=float(rng.uniform(-4, 4)))
        pair = dressed_frequencies(ATOM, drive)
        trace = pair.omega_plus + pair.omega_minus
        assert trace == pytest.approx(drive.detuning - 0.5j, rel=1e-13, abs=1e-13)
        assert pair.omega_plus.imag < 0
        assert pair.omega_minus.imag < 0


def test_stark_shift_values():
    gam = ATOM.gamma_total

    above = stark_shift(ATOM, LaserDrive(rabi=2.0, detuning=0.0))
    assert above.delta_s == pytest.approx(0.5 * np.sqrt(4.0 - 0.25), rel=1e-14)
    assert above.kappa == pytest.approx(0.5 * gam, rel=1e-14)

    assert stark_shift(ATOM, LaserDrive(rabi=0.0, detuning=2.0)).delta_s == 0.0
    assert abs(stark_shift(ATOM, LaserDrive(rabi=1e-6, detuning=2.0)).delta_s) < 1e-9

    frozen = stark_shift(ATOM, LaserDrive(rabi=1.0, detuning=1.0))
    pair = dressed_frequencies(ATOM, LaserDrive(rabi=1.0, detuning=1.0))
    assert pair.omega_plus == pytest.approx(1.186072557850 - 0.067803527382j, abs=1e-11)
    assert frozen.delta_s == pytest.approx(0.186072557850, abs=1e-11)
    assert frozen.kappa == pytest.approx(0.135607054765, abs=1e-11)
    assert frozen.effective_rabi == pytest.approx(np.sqrt(2.0), rel=1e-15)
    # the width parameter is exactly the upper dressed-pole width
    assert frozen.kappa == pytest.approx(-2.0 * pair.omega_plus.imag, abs=1e-12)

    mirrored = stark_shift(ATOM, LaserDrive(rabi=1.0, detuning=-1.0))
    assert mirrored.delta_s == pytest.approx(-frozen.delta_s, rel=1e-13)
    assert mirrored.kappa == pytest.approx(frozen.kappa, rel=1e-13)


def test_stark_shift_radical_matches_gap_form():
    rng = np.random.default_rng(21)
    for _ in range(60):
        det = float(rng.uniform(0.05, 4.0)) * float(rng.choice([-1.0, 1.0]))
        drive = LaserDrive(rabi=float(rng.uniform(0.05, 6.0)), detuning=det)
        pair = dressed_frequencies(ATOM, drive)
        sign = 1.0 if det >= 0 else -1.0
        via_gap = -0.5 * det + 0.5 * sign * pair.gap.real
        st = stark_shift(ATOM, drive)
        assert st.delta_s == pytest.approx(via_gap, abs=1e-10)
        assert 0.0 < st.kappa < ATOM.gamma_total


def test_degenerate_dressing_warning():
    with pytest.warns(DegenerateDressingWarning):
        stark_shift(ATOM, LaserDrive(rabi=0.4, detuning=0.0))
    with pytest.warns(DegenerateDressingWarning):
        s0_spectrum(ATOM, LaserDrive(rabi=0.4, detuning=0.0))
    with warnings_as_errors():
        stark_shift(ATOM, LaserDrive(rabi=0.6, detuning=0.0))
        stark_shift(ATOM, LaserDrive(rabi=0.4, detuning=1.0))


class warnings_as_errors:
    def __enter__(self):
        import warnings

        self._cm = warnings.catch_warnings()
        self._cm.__enter__()
        warnings.simplefilter("error", DegenerateDressingWarning)

    def __exit__(self, *exc):
        return self._cm.__exit__(*exc)


def test_s0_forms_agree_where_parametrization_holds():
    x = np.linspace(-9.0, 9.0, 801)
    cases = [(0.5, 0.7), (1.0, 1.0), (4.0, -2.0), (2.0, 0.0), (1.3, -0.4)]
    for rabi, det in cases:
        drive = LaserDrive(rabi=rabi, detuning=det)
        a = dressed_line_density(ATOM, drive, x)
        b = kappa_form_density(ATOM, drive, x)
        assert np.allclose(a, b, rtol=1e-10)


def test_s0_overdamped_uses_true_poles():
    # below threshold the equal-width parametrization is wrong; the
    # density must still match the pole product exactly
    drive = LaserDrive(rabi=0.3, detuning=0.0)
    pair = dressed_frequencies(ATOM, drive)
    x = np.linspace(-3.0, 3.0, 301)
    direct = 0.25 * drive.rabi**2 * ATOM.gamma_total / (2.0 * np.pi) * _abs_phi_sq(pair)(x)
    assert np.allclose(dressed_line_density(ATOM, drive, x), direct, rtol=1e-14)
    with pytest.warns(DegenerateDressingWarning):
        kap = kappa_form_density(ATOM, drive, x)
    assert np.max(np.abs(kap - direct)) > 0.1 * np.max(direct)


def test_s0_spectrum_mass_meta_and_empty():
    drive = LaserDrive(rabi=1.0, detuning=1.0)
    s = s0_spectrum(ATOM, drive)
    assert s.mass() == pytest.approx(1.0, abs=1e-12)
    assert s.meta["scattered"] == 0
    assert s.meta["drive_rabi"] == 1.0
    assert s.meta["light_shift"] == pytest.approx(0.186072557850, abs=1e-10)
    with pytest.raises(EmptySpectrum):
        s0_spectrum(ATOM, LaserDrive(rabi=0.0, detuning=1.0))


def test_s0_reflection_symmetry():
    grid = uniform_grid(-10.0, 10.0, 2001)
    plus = s0_spectrum(ATOM, LaserDrive(rabi=1.7, detuning=1.3), grid)
    minus = s0_spectrum(ATOM, LaserDrive(rabi=1.7, detuning=-1.3), grid)
    assert np.allclose(plus.density, minus.density[::-1], rtol=1e-12)


def test_autler_townes_doublet():
    drive = LaserDrive(rabi=4.0, detuning=0.0)
    peaks = find_peaks(s0_spectrum(ATOM, drive), min_height_frac=1e-3)
    assert len(peaks) == 2
    lo, hi = sorted(p.position for p in peaks)
    assert abs(lo + hi) < 1e-6
    expected = np.sqrt(16.0 - 0.25)
    assert hi - lo == pytest.approx(expected, rel=0.01)
    assert hi == pytest.approx(0.5 * expected, rel=0.01)


def test_low_drive_single_peak():
    with pytest.warns(DegenerateDressingWarning):
        s = s0_spectrum(ATOM, LaserDrive(rabi=0.3, detuning=0.0))
    peaks = find_peaks(s, min_height_frac=1e-3)
    assert len(peaks) == 1
    assert abs(peaks[0].position) < 1e-9


def test_factor_widths_sum_to_linewidth():
    drive = LaserDrive(rabi=1.0, detuning=1.0)
    st = stark_shift(ATOM, drive)
    gam = ATOM.gamma_total
    centers = (drive.detuning + st.delta_s, -st.delta_s)
    widths = (st.kappa, gam - st.kappa)
    extracted = []
    for c, w in zip(centers, widths):
        grid = np.linspace(c - 6.0 * w, c + 6.0 * w, 4001)
        dens = 1.0 / ((grid - c) ** 2 + 0.25 * w**2)
        peaks = find_peaks(SpectrumDensity(grid, dens, {}))
        assert len(peaks) == 1
        assert peaks[0].fwhm == pytest.approx(w, rel=0.01)
        extracted.append(peaks[0].fwhm)
    assert sum(widths) == gam
    assert sum(extracted) == pytest.approx(gam, rel=0.01)


def test_amplitude_n0_nullity_and_asymptote():
    drive = LaserDrive(rabi=2.0, detuning=0.0)
    x = np.linspace(-6.0, 6.0, 101)
    with pytest.raises(ValueError):
        amplitude_N0(-0.5, ATOM, drive, x)
    assert np.max(np.abs(amplitude_N0(0.0, ATOM, drive, x))) == 0.0
    assert amplitude_N0(0.0, ATOM, drive, 0.3) == 0.0

    # only the term oscillating at the outgoing detuning survives
    late = np.abs(amplitude_N0(150.0, ATOM, drive, x)) ** 2
    n0 = success_probabilities(ATOM, 0)[0]
    target = dressed_line_density(ATOM, drive, x)
    assert np.allclose(late / n0, target, rtol=1e-12)

    val = amplitude_N0(3.0, ATOM, drive, 1.5)
    assert isinstance(val, complex)


def test_amplitude_n0_confluent_branch():
    # rabi = gam/2 on resonance collapses the dressed pair to one point
    critical = LaserDrive(rabi=0.5, detuning=0.0)
    nearby = LaserDrive(rabi=0.5000001, detuning=0.0)
    x = np.linspace(-4.0, 4.0, 41)
    a = amplitude_N0(2.5, ATOM, critical, x)
    b = amplitude_N0(2.5, ATOM, nearby, x)
    assert np.all(np.isfinite(a))
    assert np.max(np.abs(a - b)) < 1e-5 * np.max(np.abs(b))


def test_amplitude_n1_asymptote_and_guards():
    drive = LaserDrive(rabi=2.0, detuning=0.0)
    pair = dressed_frequencies(ATOM, drive)
    phi2 = _abs_phi_sq(pair)
    x = np.linspace(-5.0, 5.0, 61)
    g1 = g2 = 0.5 / (2.0 * np.pi)
    dp = 0.7
    late = np.abs(amplitude_N1(150.0, ATOM, drive, x, dp)) ** 2
    target = (0.25 * drive.rabi**2) ** 2 * g1 * g2 * phi2(x + dp) * phi2(x)
    assert np.allclose(late, target, rtol=1e-12)

    with pytest.raises(ValueError):
        amplitude_N1(-1.0, ATOM, drive, x, dp)

    # removable singularities: finite, and matching a Richardson reference
    def two_point(p, h):
        return 0.5 * (
            amplitude_N1(3.0, ATOM, drive, 1.2, p + h)
            + amplitude_N1(3.0, ATOM, drive, 1.2, p - h)
        )

    for manifold in (0.0, pair.gap.real, -pair.gap.real):
        ref = (4.0 * two_point(manifold, 5e-4) - two_point(manifold, 1e-3)) / 3.0
        val = amplitude_N1(3.0, ATOM, drive, 1.2, manifold)
        assert np.isfinite(val)
        assert abs(val - ref) < 1e-6 * abs(ref)


def test_amplitude_n2_asymptote_and_corner_guards():
    drive = LaserDrive(rabi=2.0, detuning=0.0)
    pair = dressed_frequencies(ATOM, drive)
    phi2 = _abs_phi_sq(pair)
    x = np.linspace(-5.0, 5.0, 31)
    g1 = g2 = 0.5 / (2.0 * np.pi)
    dp, dq = 0.7, -1.3
    late = np.abs(amplitude_N2(150.0, ATOM, drive, x, dp, dq)) ** 2
    target = (
        (0.25 * drive.rabi**2) ** 3
        * g1**2
        * g2
        * phi2(x + dp + dq)
        * phi2(x + dq)
        * phi2(x)
    )
    assert np.allclose(late, target, rtol=1e-10)

    def four_corner(p, q, h):
        vals = [
            amplitude_N2(3.0, ATOM, drive, 1.2, p + sp * h, q + sq * h)
            for sp in (1, -1)
            for sq in (1, -1)
        ]
        return sum(vals) / 4.0

    gr = pair.gap.real
    corners = [(0.0, 0.0), (gr, 0.0), (0.0, gr), (gr, -gr), (gr, gr)]
    for p, q in corners:
        ref = (4.0 * four_corner(p, q, 5e-4) - four_corner(p, q, 1e-3)) / 3.0
        val = amplitude_N2(3.0, ATOM, drive, 1.2, p, q)
        assert np.isfinite(val)
        assert abs(val - ref) < 1e-3 * abs(ref)


def test_phi_squared_integral_closed_form():
    spec = QuadratureSpec(1e-13, 1e-11, 4000, (-1e4, 1e4))
    for atom, rabi, det in [
        (ATOM, 0.5, 0.0),
        (ATOM, 2.0, 2.0),
        (AtomThreeLevel(0.3, 1.1), 1.0, -1.0),
    ]:
        pair = dressed_frequencies(atom, LaserDrive(rabi=rabi, detuning=det))
        phi2 = _abs_phi_sq(pair)
        pts = []
        for w in (pair.omega_plus, pair.omega_minus):
            width = max(-2.0 * w.imag, 1e-3)
            pts += [w.real - width, w.real, w.real + width]
        got = integrate(phi2, spec, points=pts)
        expect = 8.0 * np.pi / (atom.gamma_total * rabi**2)
        assert got == pytest.approx(expect, rel=1e-8)


def test_partial_spectra_collapse_onto_s0():
    for rabi, det in [(1.0, 1.0), (2.0, 0.0), (0.5, -2.0)]:
        drive = LaserDrive(rabi=rabi, detuning=det)
        grid = default_laser_grid(ATOM, drive)
        s0 = s0_spectrum(ATOM, drive, grid)
        s1 = partial_spectrum(ATOM, drive, 1, grid)
        s2 = partial_spectrum(ATOM, drive, 2, grid)
        assert np.trapezoid(np.abs(s1.density - s0.density), grid) < 1e-3
        assert np.trapezoid(np.abs(s2.density - s0.density), grid) < 1e-3

    with pytest.raises(ValueError):
        partial_spectrum(ATOM, LaserDrive(rabi=1.0), 3)


def test_mixture_over_scatter_number_keeps_line_shape():
    drive = LaserDrive(rabi=1.0, detuning=1.0)
    grid = default_laser_grid(ATOM, drive)
    probs = success_probabilities(ATOM, 2)
    mix = sum(
        p * partial_spectrum(ATOM, drive, n, grid).density for n, p in enumerate(probs)
    )
    s0 = s0_spectrum(ATOM, drive, grid).density
    assert np.trapezoid(np.abs(mix - sum(probs) * s0), grid) < 1e-3


def test_partial_norms_match_geometric_law():
    for atom, drive in [
        (ATOM, LaserDrive(rabi=1.0, detuning=1.0)),
        (AtomThreeLevel(0.3, 1.1), LaserDrive(rabi=2.0, detuning=-1.0)),
    ]:
        exact = success_probabilities(atom, 2)
        for n in range(3):
            assert partial_norm(atom, drive, n) == pytest.approx(exact[n], abs=1e-6)


def test_success_probabilities_ladder():
    assert success_probabilities(ATOM, 2) == pytest.approx([0.5, 0.25, 0.125])
    assert sum(success_probabilities(ATOM, 60)) == pytest.approx(1.0, rel=1e-12)

    lopsided = AtomThreeLevel(0.0, 1.0)
    assert success_probabilities(lopsided, 2) == [1.0, 0.0, 0.0]

    skew = AtomThreeLevel(0.3, 1.1)
    got = success_probabilities(skew, 3)
    back = 0.3 / 1.4
    assert got == pytest.approx([(1.1 / 1.4) * back**n for n in range(4)], rel=1e-14)

    with pytest.raises(ValueError):
        success_probabilities(ATOM, -1)


def test_dressed_line_density_unit_mass():
    drive = LaserDrive(rabi=1.5, detuning=0.8)
    val = dressed_line_density(ATOM, drive, 0.0)
    assert isinstance(val, float)
    spec = QuadratureSpec(1e-13, 1e-11, 4000, (-1e4, 1e4))
    pair = dressed_frequencies(ATOM, drive)
    pts = [pair.omega_plus.real, pair.omega_minus.real, 0.0]
    mass = integrate(lambda x: dressed_line_density(ATOM, drive, x), spec, points=pts)
    assert mass == pytest.approx(1.0, rel=1e-8)


def test_default_laser_grid_resolves_both_poles():
    for rabi, det in [(1.0, 1.0), (8.0, 0.0), (0.5, -2.0)]:
        drive = LaserDrive(rabi=rabi, detuning=det)
        grid = default_laser_grid(ATOM, drive)
        pair = dressed_frequencies(ATOM, drive)
        for w in (pair.omega_plus, pair.omega_minus):
            width = max(-2.0 * w.imag, 1e-3)
            near = np.abs(grid - w.real) < 0.2 * width
            assert np.count_nonzero(near) >= 3
        assert grid[0] <= -8.0 and grid[-1] >= 8.0
