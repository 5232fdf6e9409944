# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integrator core: Dormand-Prince 5(4) for dz/dt = ca e^{i wa t}
+ cb z + cc e^{i wc t} z^2.  Twin of geophase._pycore; keep the arithmetic
in lockstep with that module."""

import numpy as np

from libc.math cimport cos, sin, fabs, fmax, fmin, pow

from .errors import IntegrationError

BACKEND_NAME = "cython"

DEF MAX_STEPS = 10000000

cdef double C2 = 1.0 / 5.0
cdef double C3 = 3.0 / 10.0
cdef double C4 = 4.0 / 5.0
cdef double C5 = 8.0 / 9.0
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0
cdef double A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0
cdef double A42 = -56.0 / 15.0
cdef double A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0
cdef double A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0
cdef double A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0
cdef double A62 = -355.0 / 33.0
cdef double A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0
cdef double A65 = -5103.0 / 18656.0
cdef double A71 = 35.0 / 384.0
cdef double A73 = 500.0 / 1113.0
cdef double A74 = 125.0 / 192.0
cdef double A75 = -2187.0 / 6784.0
cdef double A76 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0
cdef double E3 = -71.0 / 16695.0
cdef double E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0
cdef double E6 = 22.0 / 525.0
cdef double E7 = -1.0 / 40.0
cdef double D1 = -12715105075.0 / 11282082432.0
cdef double D3 = 87487479700.0 / 32700410799.0
cdef double D4 = -10690763975.0 / 1880347072.0
cdef double D5 = 701980252875.0 / 199316789632.0
cdef double D6 = -1453857185.0 / 822651844.0
cdef double D7 = 69997945.0 / 29380423.0


cdef inline double complex _f(double complex ca, double wa,
                              double complex cb,
                              double complex cc, double wc,
                              double t, double complex z) noexcept:
    cdef double complex ea, ec
    ea.real = cos(wa * t)
    ea.imag = sin(wa * t)
    ec.real = cos(wc * t)
    ec.imag = sin(wc * t)
    return ca * ea + cb * z + cc * (ec * z * z)


cdef inline double _cabs(double complex z) noexcept:
    return abs(z)


def integrate_complex(double complex ca, double wa, double complex cb,
                      double complex cc, double wc, double complex z0,
                      double t_end, double rtol, double atol,
                      bint unit_disk, double[::1] sample_ts):
    """See geophase._pycore.integrate_complex."""
    cdef Py_ssize_t n_samp = sample_ts.shape[0]
    zs_arr = np.empty(n_samp, dtype=np.complex128)
    zds_arr = np.empty(n_samp, dtype=np.complex128)
    cdef double complex[::1] zs = zs_arr
    cdef double complex[::1] zds = zds_arr

    cdef double t = 0.0
    cdef double complex z = z0
    cdef double complex k1 = _f(ca, wa, cb, cc, wc, t, z)
    cdef Py_ssize_t isamp = 0
    if isamp < n_samp and sample_ts[isamp] <= 0.0:
        zs[isamp] = z
        zds[isamp] = k1
        isamp += 1

    step_ts = [0.0]
    conts = []
    cdef long n_acc = 0
    cdef long n_rej = 0
    cdef double max_err = 0.0

    if t_end <= 0.0:
        return zs_arr[:isamp], zds_arr[:isamp], np.array(step_ts), \
            np.zeros((0, 5), dtype=np.complex128), 0, 0, 0.0

    cdef double sc = atol + rtol * _cabs(z)
    cdef double d0 = _cabs(z) / sc
    cdef double d1 = _cabs(k1) / sc
    cdef double h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * (d0 / d1)
    h0 = fmin(h0, t_end)
    cdef double complex f1 = _f(ca, wa, cb, cc, wc, t + h0, z + h0 * k1)
    cdef double d2 = _cabs(f1 - k1) / sc / h0
    cdef double h1
    if fmax(d1, d2) <= 1e-15:
        h1 = fmax(1e-6, h0 * 1e-3)
    else:
        h1 = pow(0.01 / fmax(d1, d2), 0.2)
    cdef double h = fmin(fmin(100.0 * h0, h1), t_end)

    cdef double complex k2, k3, k4, k5, k6, k7, znew, ydiff, bspl, c3_, c4_, c5_, zsamp
    cdef double err, err_norm, th

    while t < t_end:
        if n_acc + n_rej > MAX_STEPS:
            raise IntegrationError(f"step budget exhausted at t={t!r}")
        if h < 1e-14 * fmax(fabs(t), 1.0):
            raise IntegrationError(
                f"step size underflow at t={t!r} (h={h!r}); the requested "
                f"tolerance may be unattainable here")
        if t + h > t_end:
            h = t_end - t

        k2 = _f(ca, wa, cb, cc, wc, t + C2 * h, z + h * (A21 * k1))
        k3 = _f(ca, wa, cb, cc, wc, t + C3 * h, z + h * (A31 * k1 + A32 * k2))
        k4 = _f(ca, wa, cb, cc, wc, t + C4 * h, z + h * (A41 * k1 + A42 * k2 + A43 * k3))
        k5 = _f(ca, wa, cb, cc, wc, t + C5 * h, z + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
        k6 = _f(ca, wa, cb, cc, wc, t + h, z + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
        znew = z + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6)
        k7 = _f(ca, wa, cb, cc, wc, t + h, znew)
        err = _cabs(h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7))
        sc = atol + rtol * fmax(_cabs(z), _cabs(znew))
        err_norm = err / sc

        if err_norm > 1.0 or (unit_disk and _cabs(znew) >= 1.0):
            n_rej += 1
            if err_norm > 1.0:
                h *= fmax(0.2, 0.9 * pow(err_norm, -0.2))
            else:
                h *= 0.5
            continue

        ydiff = znew - z
        bspl = h * k1 - ydiff
        c3_ = bspl
        c4_ = ydiff - h * k7 - bspl
        c5_ = h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7)
        conts.append((z, ydiff, c3_, c4_, c5_))
        while isamp < n_samp and sample_ts[isamp] <= t + h:
            th = (sample_ts[isamp] - t) / h
            zsamp = z + th * (ydiff + (1.0 - th) * (c3_ + th * (c4_ + (1.0 - th) * c5_)))
            zs[isamp] = zsamp
            zds[isamp] = _f(ca, wa, cb, cc, wc, sample_ts[isamp], zsamp)
            isamp += 1

        n_acc += 1
        if err > max_err:
            max_err = err
        t += h
        step_ts.append(t)
        z = znew
        k1 = k7
        if err_norm == 0.0:
            h *= 10.0
        else:
            h *= fmin(10.0, fmax(0.2, 0.9 * pow(err_norm, -0.2)))

    return zs_arr[:isamp], zds_arr[:isamp], np.asarray(step_ts), \
        np.asarray(conts, dtype=np.complex128).reshape(-1, 5), n_acc, n_rej, max_err
