"""Pure numpy propagators for the discretized-continuum dynamics.

Reference implementation of the fixed-step fourth-order scheme; the
compiled module mirrors it loop for loop.  Summation order differs
between the two (pairwise here, sequential there), so results agree to
roundoff rather than bitwise.
"""

from __future__ import annotations

import numpy as np


def rk4_photon(detunings, g_in, g_out, a_init, dt, steps, check_every=400):
    """Propagate one excitation through two discretized channels.

    State: excited amplitude, input-channel mode amplitudes (initialized
    to ``a_init``), output-channel mode amplitudes (initially empty).
    Returns the final (excited, input, output) state and the largest
    norm deviation from the initial value seen at any checkpoint.
    """
    det = np.asarray(detunings, dtype=float)
    a = np.asarray(a_init, dtype=complex).copy()
    b = np.zeros_like(a)
    e = 0.0 + 0.0j

    def deriv(e_s, a_s, b_s):
        de = -1j * (g_in * a_s.sum() + g_out * b_s.sum())
        da = -1j * (det * a_s + g_in * e_s)
        db = -1j * (det * b_s + g_out * e_s)
        return de, da, db

    def norm(e_s, a_s, b_s):
        return abs(e_s) ** 2 + np.vdot(a_s, a_s).real + np.vdot(b_s, b_s).real

    norm0 = norm(e, a, b)
    drift = 0.0
    half = 0.5 * dt
    sixth = dt / 6.0
    for step in range(steps):
        ke1, ka1, kb1 = deriv(e, a, b)
        ke2, ka2, kb2 = deriv(e + half * ke1, a + half * ka1, b + half * kb1)
        ke3, ka3, kb3 = deriv(e + half * ke2, a + half * ka2, b + half * kb2)
        ke4, ka4, kb4 = deriv(e + dt * ke3, a + dt * ka3, b + dt * kb3)
        e = e + sixth * (ke1 + 2.0 * (ke2 + ke3) + ke4)
        a = a + sixth * (ka1 + 2.0 * (ka2 + ka3) + ka4)
        b = b + sixth * (kb1 + 2.0 * (kb2 + kb3) + kb4)
        if (step + 1) % check_every == 0 or step + 1 == steps:
            drift = max(drift, abs(norm(e, a, b) - norm0))
    return e, a, b, drift


def rk4_laser_n0(shifted_detunings, g_out, half_rabi, detuning, loss_rate,
                 dt, steps, check_every=400):
    """Propagate the driven ground/excited pair coupled to one continuum.

    The excited state loses amplitude at ``loss_rate`` (decay back to the
    start of the cycle, truncated) while emitting into the discretized
    output channel.  Returns the final (ground, excited, output modes,
    accumulated loss) and the largest deviation of norm + loss from one.
    """
    chi = np.asarray(shifted_detunings, dtype=float)
    b = np.zeros(chi.size, dtype=complex)
    c1 = 1.0 + 0.0j
    ce = 0.0 + 0.0j
    loss = 0.0

    def deriv(c1_s, ce_s, b_s):
        dc1 = -1j * half_rabi * ce_s
        dce = (1j * detuning - 0.5 * loss_rate) * ce_s \
            - 1j * (half_rabi * c1_s + g_out * b_s.sum())
        db = -1j * (chi * b_s + g_out * ce_s)
        dl = loss_rate * (ce_s.real ** 2 + ce_s.imag ** 2)
        return dc1, dce, db, dl

    def budget(c1_s, ce_s, b_s, loss_s):
        return abs(c1_s) ** 2 + abs(ce_s) ** 2 + np.vdot(b_s, b_s).real + loss_s

    worst = 0.0
    half = 0.5 * dt
    sixth = dt / 6.0
    for step in range(steps):
        k11, ke1, kb1, kl1 = deriv(c1, ce, b)
        k12, ke2, kb2, kl2 = deriv(c1 + half * k11, ce + half * ke1, b + half * kb1)
        k13, ke3, kb3, kl3 = deriv(c1 + half * k12, ce + half * ke2, b + half * kb2)
        k14, ke4, kb4, kl4 = deriv(c1 + dt * k13, ce + dt * ke3, b + dt * kb3)
        c1 = c1 + sixth * (k11 + 2.0 * (k12 + k13) + k14)
        ce = ce + sixth * (ke1 + 2.0 * (ke2 + ke3) + ke4)
        b = b + sixth * (kb1 + 2.0 * (kb2 + kb3) + kb4)
        loss = loss + sixth * (kl1 + 2.0 * (kl2 + kl3) + kl4)
        if (step + 1) % check_every == 0 or step + 1 == steps:
            worst = max(worst, abs(budget(c1, ce, b, loss) - 1.0))
    return c1, ce, b, loss, worst
