"""Variational equations of motion and their numerical integration.

The stationary-phase condition on the coherent-state action gives first
order equations i hbar g(z) dz/dt = dH/dz* on each manifold.  Clearing the
metric denominators leaves one polynomial equation per family,

    dz/dt = ca e^{i wa t} + cb z + cc e^{i wc t} z^2,

which is free of chart poles; integration always runs in this complex
chart (the angle forms below are derived views).  Angle-chart equations:

* sphere:        dtheta/dt = -(mu B0/hbar) sin(phi - w t)
                 dphi/dt   = -(mu/hbar) [B0 cot(theta) cos(phi - w t) + B]
* pseudosphere:  dtau/dt   = 4 kappa sin(phi + s w t)
                 dphi/dt   = 2 w0 + 4 kappa coth(tau) cos(phi + s w t)
                 (s = +1 rederived / -1 legacy, see geophase.drives)
* plane:         dr/dt = -E sin(theta_polar + w t)
                 r (dtheta_polar/dt + w0) = -E cos(theta_polar + w t)

Trajectories carry dense samples of (z, dz/dt) plus the integrator's
continuous extension, so downstream phase integrals can refine their
quadrature without re-integrating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_backend
from .drives import BosonDrive, DriveParams, SU2Drive, SU11Drive, check_compatible
from .errors import DomainError, ValidationError
from .manifolds import Family, ManifoldSpec, PhasePoint, chart_distance

DEFAULT_SAMPLES_PER_UNIT_TIME = None  # sampling is per trajectory, see integrate


def rhs_coefficients(manifold: ManifoldSpec, p: DriveParams):
    """Complex constants (ca, wa, cb, cc, wc) of the unified polynomial EOM."""
    check_compatible(manifold, p)
    if isinstance(p, SU2Drive):
        a = 0.5j * p.mu * p.b_rot / p.hbar
        return (a, -p.omega, 1j * p.mu * p.b_static / p.hbar, -a, p.omega)
    if isinstance(p, SU11Drive):
        s = p.rotation_sign
        c = -2j * p.kappa
        return (c, s * p.omega, -2j * p.omega0, c, -s * p.omega)
    return (-1j * p.amplitude, -p.omega, -1j * p.omega0, 0j, 0.0)


def eom_rhs(manifold: ManifoldSpec, point, t: float, p: DriveParams,
            chart: str = "z"):
    """Phase-space velocity at a point.

    ``chart="z"`` returns dz/dt (defined everywhere); ``chart="angles"``
    returns the pair of angle velocities and raises at a chart pole where
    the angle form is singular.
    """
    pt = point if isinstance(point, PhasePoint) else PhasePoint.from_z(manifold, point)
    ca, wa, cb, cc, wc = rhs_coefficients(manifold, p)
    z = pt.z
    zdot = (ca * complex(math.cos(wa * t), math.sin(wa * t)) + cb * z
            + cc * (complex(math.cos(wc * t), math.sin(wc * t)) * z * z))
    if chart == "z":
        return zdot
    if chart != "angles":
        raise ValidationError(f"chart must be 'z' or 'angles', got {chart!r}")
    a = pt.chart[0]
    r = abs(z)
    if manifold.family is Family.SPHERE:
        if r == 0.0 or math.sin(a) == 0.0:
            raise DomainError("angle-chart velocity is singular at a sphere pole")
        e = z / r
        radial = (zdot * e.conjugate()).real  # d|z|/dt = d tan(theta/2)/dt
        thetadot = radial * (1.0 + math.cos(a))
        phidot = -(zdot * e.conjugate()).imag / r
        return (thetadot, phidot)
    if manifold.family is Family.PSEUDOSPHERE:
        if r == 0.0:
            raise DomainError("angle-chart velocity is singular at tau = 0")
        e = z / r
        radial = (zdot * e.conjugate()).real  # d tanh(tau/2)/dt
        taudot = radial * 2.0 / (1.0 - r * r)
        phidot = -(zdot * e.conjugate()).imag / r
        return (taudot, phidot)
    if r == 0.0:
        raise DomainError("angle-chart velocity is singular at r = 0")
    e = z / r
    rdot = (zdot * e.conjugate()).real
    thetapdot = (zdot * e.conjugate()).imag / r
    return (rdot, thetapdot)


@dataclass(frozen=True)
class IntegratorStats:
    steps: int
    rejected: int
    max_local_error: float


@dataclass
class Trajectory:
    """Time-ordered dense samples of one integrated orbit.

    ``ts``/``zs``/``zdots`` are the dense sample arrays (ts[0] = 0); the
    continuous extension of the integrator is retained so that
    :meth:`eval` can resample between steps.  ``closed`` reports whether
    the chart distance between the states at t = 0 and t = period_T fell
    below ``closure_tol``.
    """

    manifold: ManifoldSpec
    params: DriveParams
    ts: np.ndarray
    zs: np.ndarray
    zdots: np.ndarray
    period_T: float
    closed: bool
    closure_error: float
    stats: IntegratorStats
    tol: float
    closure_tol: float
    _step_ts: np.ndarray = field(repr=False, default=None)
    _conts: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if len(self.ts) == 0 or self.ts[0] != 0.0:
            raise ValidationError("trajectory must start at t = 0")
        if np.any(np.diff(self.ts) <= 0) and len(self.ts) > 1:
            raise ValidationError("sample times must increase strictly")

    @property
    def t_final(self) -> float:
        return float(self.ts[-1])

    @property
    def samples(self):
        """The (t, PhasePoint) view of the dense sample arrays."""
        return [(float(t), PhasePoint.from_z(self.manifold, z))
                for t, z in zip(self.ts, self.zs)]

    def eval(self, t):
        """Evaluate the continuous extension at time(s) t in [0, t_final]."""
        if self._conts is None or len(self._conts) == 0:
            raise ValidationError("trajectory has no dense data")
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t < 0.0) or np.any(t > self._step_ts[-1] * (1 + 1e-12) + 1e-300):
            raise ValidationError("evaluation time outside trajectory span")
        idx = np.clip(np.searchsorted(self._step_ts, t, side="right") - 1, 0,
                      len(self._conts) - 1)
        t0 = self._step_ts[idx]
        h = self._step_ts[idx + 1] - t0
        th = np.where(h > 0, (t - t0) / np.where(h > 0, h, 1.0), 0.0)
        c = self._conts[idx]
        return c[:, 0] + th * (c[:, 1] + (1.0 - th)
                               * (c[:, 2] + th * (c[:, 3] + (1.0 - th) * c[:, 4])))

    def resampled(self, ts):
        """New (ts, zs, zdots) arrays on an arbitrary grid via dense output."""
        ts = np.asarray(ts, dtype=float)
        zs = self.eval(ts)
        ca, wa, cb, cc, wc = rhs_coefficients(self.manifold, self.params)
        zdots = (ca * np.exp(1j * wa * ts) + cb * zs
                 + cc * np.exp(1j * wc * ts) * zs * zs)
        return ts, zs, zdots


def integrate(manifold: ManifoldSpec, initial: PhasePoint, p: DriveParams,
              t_final: float, tol: float = 1e-10, *, atol: float | None = None,
              closure_tol: float = 1e-8, samples_per_period: int = 2048,
              period: float | None = None, backend: str | None = None) -> Trajectory:
    """Integrate the equations of motion from t = 0 to t_final.

    ``tol`` is the relative local error tolerance of the embedded 5(4)
    pair (``atol`` defaults to the same value).  The trajectory is sampled
    on a uniform grid of ``samples_per_period`` points per drive period
    (always including both endpoints).  On the pseudosphere any step that
    would leave the unit disk is rejected and retried smaller.
    """
    check_compatible(manifold, p)
    if tol <= 0:
        raise ValidationError("integration tolerance must be positive")
    if t_final < 0:
        raise ValidationError("t_final must be >= 0")
    if atol is None:
        atol = tol
    if period is None:
        period = 2.0 * math.pi / abs(p.omega) if p.omega != 0.0 else max(t_final, 1.0)
    z0 = initial.z if isinstance(initial, PhasePoint) else complex(initial)
    if manifold.family is Family.PSEUDOSPHERE and abs(z0) >= 1.0:
        raise DomainError("initial point must satisfy |z| < 1")

    n_samp = max(2, int(round(samples_per_period * t_final / period)) + 1) \
        if t_final > 0 else 1
    ts = np.linspace(0.0, t_final, n_samp)

    ca, wa, cb, cc, wc = rhs_coefficients(manifold, p)
    core = get_backend(backend)
    zs, zdots, step_ts, conts, n_acc, n_rej, max_err = core.integrate_complex(
        complex(ca), float(wa), complex(cb), complex(cc), float(wc),
        complex(z0), float(t_final), float(tol), float(atol),
        manifold.family is Family.PSEUDOSPHERE, ts)

    traj = Trajectory(
        manifold=manifold, params=p, ts=ts[:len(zs)], zs=zs, zdots=zdots,
        period_T=period, closed=False, closure_error=math.nan,
        stats=IntegratorStats(n_acc, n_rej, max_err), tol=tol,
        closure_tol=closure_tol, _step_ts=step_ts, _conts=conts)
    if t_final > 0:
        t_ref = period if t_final >= period * (1 - 1e-12) else t_final
        err = loop_closure(traj, min(t_ref, t_final))
        traj.closure_error = err
        traj.closed = err < closure_tol
    else:
        traj.closure_error = 0.0
        traj.closed = True
    return traj


def loop_closure(traj: Trajectory, T: float) -> float:
    """Chart distance between the trajectory states at t = 0 and t = T.

    Great-circle angle on the sphere, hyperbolic distance on the
    pseudosphere, |dz| on the plane.
    """
    if T < 0 or T > traj.t_final * (1 + 1e-12):
        raise ValidationError(f"t = {T} outside the trajectory span")
    if T == traj.t_final:
        z_T = traj.zs[-1]
    else:
        z_T = traj.eval(T)[0]
    return chart_distance(traj.manifold, traj.zs[0], z_T)


@dataclass(frozen=True)
class SpinVector:
    """Classical spin expectation vector, |S| = J."""

    s: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(float(c) for c in self.s))

    @property
    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.s))

    def as_array(self) -> np.ndarray:
        return np.array(self.s)


def effective_field(p: SU2Drive) -> tuple[float, float, float]:
    """Static field seen in the frame co-rotating with the drive:
    B'' = (B0, 0, B + hbar w / mu)."""
    if p.mu == 0.0:
        raise ValidationError("mu must be nonzero for the rotating frame")
    return (p.b_rot, 0.0, p.b_static + p.hbar * p.omega / p.mu)


def rotating_frame_solution(p: SU2Drive, s0: SpinVector, t: float):
    """Exact spin precession split into rotating and lab frames.

    In the co-rotating frame the spin obeys dS'/dt = (mu/hbar) S' x B''
    with the static effective field B'' of :func:`effective_field`; the
    lab-frame vector is S' rotated by w t about z.  Returns
    (S_lab, S_rot, B_eff).  A spin started parallel to B'' is a fixed
    point of the rotating frame.
    """
    bx, by, bz = effective_field(p)
    bmag = math.sqrt(bx * bx + by * by + bz * bz)
    s = np.array(s0.s, dtype=float)
    if bmag == 0.0:
        s_rot = s.copy()
    else:
        axis = np.array([bx, by, bz]) / bmag
        angle = -p.mu * bmag * t / p.hbar  # dS'/dt = (mu/hbar) S' x B''
        c, si = math.cos(angle), math.sin(angle)
        s_rot = (s * c + np.cross(axis, s) * si
                 + axis * np.dot(axis, s) * (1.0 - c))
    wt = p.omega * t
    cw, sw = math.cos(wt), math.sin(wt)
    s_lab = np.array([cw * s_rot[0] - sw * s_rot[1],
                      sw * s_rot[0] + cw * s_rot[1],
                      s_rot[2]])
    return (SpinVector(tuple(s_lab)), SpinVector(tuple(s_rot)), (bx, by, bz))
