# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled propagators for the discretized-continuum dynamics.

Same fixed-step fourth-order scheme as the numpy fallback, with the
state packed into one flat complex vector and the loops written out.
"""

import numpy as np

cdef double complex J = 1j


cdef void _photon_deriv(double complex[::1] y, double complex[::1] out,
                        double[::1] det, double g_in, double g_out,
                        Py_ssize_t n) noexcept nogil:
    # layout: y[0] excited, y[1:1+n] input modes, y[1+n:1+2n] output modes
    cdef Py_ssize_t k
    cdef double complex sa = 0, sb = 0, e = y[0]
    for k in range(n):
        sa = sa + y[1 + k]
        sb = sb + y[1 + n + k]
    out[0] = -J * (g_in * sa + g_out * sb)
    for k in range(n):
        out[1 + k] = -J * (det[k] * y[1 + k] + g_in * e)
        out[1 + n + k] = -J * (det[k] * y[1 + n + k] + g_out * e)


cdef void _laser_deriv(double complex[::1] y, double complex[::1] out,
                       double[::1] chi, double g_out, double half_rabi,
                       double detuning, double loss_rate,
                       Py_ssize_t n) noexcept nogil:
    # layout: y[0] ground, y[1] excited, y[2:2+n] output modes, y[2+n] loss
    cdef Py_ssize_t k
    cdef double complex sb = 0, ce = y[1]
    for k in range(n):
        sb = sb + y[2 + k]
    out[0] = -J * half_rabi * ce
    out[1] = (J * detuning - 0.5 * loss_rate) * ce \
        - J * (half_rabi * y[0] + g_out * sb)
    for k in range(n):
        out[2 + k] = -J * (chi[k] * y[2 + k] + g_out * ce)
    out[2 + n] = loss_rate * (ce.real * ce.real + ce.imag * ce.imag)


cdef double _squared_norm(double complex[::1] y, Py_ssize_t count) noexcept nogil:
    cdef Py_ssize_t k
    cdef double total = 0
    for k in range(count):
        total += y[k].real * y[k].real + y[k].imag * y[k].imag
    return total


def rk4_photon(detunings, g_in, g_out, a_init, dt, steps, check_every=400):
    """Propagate one excitation through two discretized channels.

    Matches the fallback signature: returns the final (excited, input,
    output) state and the largest norm drift seen at any checkpoint.
    """
    cdef double[::1] det = np.ascontiguousarray(detunings, dtype=np.float64)
    cdef Py_ssize_t n = det.shape[0]
    cdef Py_ssize_t size = 1 + 2 * n
    y_arr = np.zeros(size, dtype=np.complex128)
    y_arr[1:1 + n] = np.asarray(a_init, dtype=np.complex128)
    cdef double complex[::1] y = y_arr
    cdef double complex[::1] k1 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] k2 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] k3 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] k4 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] yt = np.empty(size, dtype=np.complex128)

    cdef double c_dt = dt, half = 0.5 * dt, sixth = dt / 6.0
    cdef double gi = g_in, go = g_out
    cdef long n_steps = steps, stride = check_every
    cdef long step
    cdef Py_ssize_t j
    cdef double norm0, drift = 0.0, dev

    with nogil:
        norm0 = _squared_norm(y, size)
        for step in range(n_steps):
            _photon_deriv(y, k1, det, gi, go, n)
            for j in range(size):
                yt[j] = y[j] + half * k1[j]
            _photon_deriv(yt, k2, det, gi, go, n)
            for j in range(size):
                yt[j] = y[j] + half * k2[j]
            _photon_deriv(yt, k3, det, gi, go, n)
            for j in range(size):
                yt[j] = y[j] + c_dt * k3[j]
            _photon_deriv(yt, k4, det, gi, go, n)
            for j in range(size):
                y[j] = y[j] + sixth * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j])
            if (step + 1) % stride == 0 or step + 1 == n_steps:
                dev = _squared_norm(y, size) - norm0
                if dev < 0:
                    dev = -dev
                if dev > drift:
                    drift = dev
    return complex(y_arr[0]), y_arr[1:1 + n].copy(), y_arr[1 + n:].copy(), drift


def rk4_laser_n0(shifted_detunings, g_out, half_rabi, detuning, loss_rate,
                 dt, steps, check_every=400):
    """Propagate the driven pair coupled to one lossy continuum.

    Matches the fallback signature: returns the final (ground, excited,
    output modes, accumulated loss) and the worst norm + loss deviation.
    """
    cdef double[::1] chi = np.ascontiguousarray(shifted_detunings, dtype=np.float64)
    cdef Py_ssize_t n = chi.shape[0]
    cdef Py_ssize_t size = 3 + n
    y_arr = np.zeros(size, dtype=np.complex128)
    y_arr[0] = 1.0
    cdef double complex[::1] y = y_arr
    cdef double complex[::1] k1 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] k2 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] k3 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] k4 = np.empty(size, dtype=np.complex128)
    cdef double complex[::1] yt = np.empty(size, dtype=np.complex128)

    cdef double c_dt = dt, half = 0.5 * dt, sixth = dt / 6.0
    cdef double go = g_out, hr = half_rabi, d1 = detuning, lr = loss_rate
    cdef long n_steps = steps, stride = check_every
    cdef long step
    cdef Py_ssize_t j
    cdef double worst = 0.0, dev

    with nogil:
        for step in range(n_steps):
            _laser_deriv(y, k1, chi, go, hr, d1, lr, n)
            for j in range(size):
                yt[j] = y[j] + half * k1[j]
            _laser_deriv(yt, k2, chi, go, hr, d1, lr, n)
            for j in range(size):
                yt[j] = y[j] + half * k2[j]
            _laser_deriv(yt, k3, chi, go, hr, d1, lr, n)
            for j in range(size):
                yt[j] = y[j] + c_dt * k3[j]
            _laser_deriv(yt, k4, chi, go, hr, d1, lr, n)
            for j in range(size):
                y[j] = y[j] + sixth * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j])
            if (step + 1) % stride == 0 or step + 1 == n_steps:
                # budget: squared norm of the amplitudes plus the real loss
                dev = _squared_norm(y, size - 1) + y[size - 1].real - 1.0
                if dev < 0:
                    dev = -dev
                if dev > worst:
                    worst = dev
    return (complex(y_arr[0]), complex(y_arr[1]), y_arr[2:2 + n].copy(),
            float(y_arr[size - 1].real), worst)
