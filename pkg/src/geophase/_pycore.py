"""Pure-Python integrator core.

Twin of the compiled extension geophase._core: an adaptive Dormand-Prince
5(4) stepper for the one-complex-dimensional equation of motion

    dz/dt = ca e^{i wa t} + cb z + cc e^{i wc t} z^2

which covers all three manifold families once the drive parameters are
folded into the complex constants.  Dense output is evaluated on a caller
supplied sample grid through the standard quartic interpolant.  Keep the
arithmetic in the same order as the compiled version so the two backends
agree to rounding.
"""

from __future__ import annotations

from math import cos, sin

import numpy as np

from . import _tableau as tb
from .errors import IntegrationError

BACKEND_NAME = "python"

_MAX_STEPS = 10_000_000


def integrate_complex(ca, wa, cb, cc, wc, z0, t_end, rtol, atol,
                      unit_disk, sample_ts):
    """Integrate from t=0 to t_end, sampling at the given ascending times.

    Returns (z_samples, zdot_samples, step_ts, conts, n_accepted,
    n_rejected, max_err) where step_ts are the accepted-step left edges
    plus the final time and conts the dense-output coefficients per step.
    """

    def f(t, z):
        return (ca * complex(cos(wa * t), sin(wa * t)) + cb * z
                + cc * (complex(cos(wc * t), sin(wc * t)) * z * z))

    n_samp = len(sample_ts)
    zs = np.empty(n_samp, dtype=complex)
    zds = np.empty(n_samp, dtype=complex)

    t = 0.0
    z = complex(z0)
    k1 = f(t, z)
    isamp = 0
    if isamp < n_samp and sample_ts[isamp] <= 0.0:
        zs[isamp] = z
        zds[isamp] = k1
        isamp += 1

    step_ts = [0.0]
    conts = []
    n_acc = 0
    n_rej = 0
    max_err = 0.0

    if t_end <= 0.0:
        return zs[:isamp], zds[:isamp], np.array(step_ts), \
            np.zeros((0, 5), dtype=complex), 0, 0, 0.0

    # starting step size (standard two-probe heuristic)
    sc = atol + rtol * abs(z)
    d0 = abs(z) / sc
    d1 = abs(k1) / sc
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * (d0 / d1)
    h0 = min(h0, t_end)
    f1 = f(t + h0, z + h0 * k1)
    d2 = abs(f1 - k1) / sc / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    h = min(100.0 * h0, h1, t_end)

    while t < t_end:
        if n_acc + n_rej > _MAX_STEPS:
            raise IntegrationError(f"step budget exhausted at t={t!r}")
        if h < 1e-14 * max(abs(t), 1.0):
            raise IntegrationError(
                f"step size underflow at t={t!r} (h={h!r}); the requested "
                f"tolerance may be unattainable here")
        if t + h > t_end:
            h = t_end - t

        k2 = f(t + tb.C2 * h, z + h * (tb.A21 * k1))
        k3 = f(t + tb.C3 * h, z + h * (tb.A31 * k1 + tb.A32 * k2))
        k4 = f(t + tb.C4 * h, z + h * (tb.A41 * k1 + tb.A42 * k2 + tb.A43 * k3))
        k5 = f(t + tb.C5 * h, z + h * (tb.A51 * k1 + tb.A52 * k2 + tb.A53 * k3
                                       + tb.A54 * k4))
        k6 = f(t + h, z + h * (tb.A61 * k1 + tb.A62 * k2 + tb.A63 * k3
                               + tb.A64 * k4 + tb.A65 * k5))
        znew = z + h * (tb.A71 * k1 + tb.A73 * k3 + tb.A74 * k4
                        + tb.A75 * k5 + tb.A76 * k6)
        k7 = f(t + h, znew)
        err = abs(h * (tb.E1 * k1 + tb.E3 * k3 + tb.E4 * k4 + tb.E5 * k5
                       + tb.E6 * k6 + tb.E7 * k7))
        sc = atol + rtol * max(abs(z), abs(znew))
        err_norm = err / sc

        if err_norm > 1.0 or (unit_disk and abs(znew) >= 1.0):
            n_rej += 1
            if err_norm > 1.0:
                h *= max(0.2, 0.9 * err_norm ** -0.2)
            else:
                h *= 0.5
            continue

        # accepted: record dense-output coefficients for [t, t+h]
        ydiff = znew - z
        bspl = h * k1 - ydiff
        conts.append((z, ydiff, bspl, ydiff - h * k7 - bspl,
                      h * (tb.D1 * k1 + tb.D3 * k3 + tb.D4 * k4
                           + tb.D5 * k5 + tb.D6 * k6 + tb.D7 * k7)))
        while isamp < n_samp and sample_ts[isamp] <= t + h:
            th = (sample_ts[isamp] - t) / h
            c0, c1, c2, c3, c4 = conts[-1]
            zsamp = c0 + th * (c1 + (1.0 - th) * (c2 + th * (c3 + (1.0 - th) * c4)))
            zs[isamp] = zsamp
            zds[isamp] = f(sample_ts[isamp], zsamp)
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
            h *= min(10.0, max(0.2, 0.9 * err_norm ** -0.2))

    return zs[:isamp], zds[:isamp], np.asarray(step_ts), \
        np.asarray(conts, dtype=complex).reshape(-1, 5), n_acc, n_rej, max_err
