"""Closed-form resonance orbits, invariant surfaces, zero-dynamical-phase
operating points.

A resonance orbit keeps the chart radius fixed while the chart angle is
locked to the drive:

* sphere:        theta = theta0,  phi = +w t,   cot(theta0) = -(B/B0 + hbar w/(mu B0))
* pseudosphere:  tau = tau0,      phi = -w t,   coth(tau0)  = -(w + 2 w0)/(4 kappa)
* plane:         r = |A|,  theta_polar = -w t (+pi if A < 0),  A = E/(w - w0)

The locus of drive parameters with a common radius is the "invariant
surface"; the geometric phase over one period depends only on the radius
and is therefore constant on the surface, while the dynamical phase is
not.  The plane also reports the widely quoted counter-rotating amplitude
|E/(w + w0)| (field ``r0_alt``) next to the exact steady-state response;
the two disagree and only the steady state solves the equation of motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .drives import BosonDrive, DriveParams, SU2Drive, SU11Drive, period
from .errors import (DegenerateDriveError, DivergentResponseError,
                     NegativeBranchError, NoResonanceError, RootNotFoundError,
                     ValidationError)
from .manifolds import Family, ManifoldSpec, PhasePoint


@dataclass(frozen=True)
class ResonanceResult:
    """A closed resonance orbit.

    ``radius`` is the fixed chart radius (theta0 | tau0 | r0) and
    ``phase_rate`` the locked angular velocity of the chart angle
    (dphi/dt, or dtheta_polar/dt on the plane).  ``orientation`` is the
    traversal sign measured by the angle whose conjugate momentum enters
    the geometric phase with a positive coefficient (phi on the sphere and
    pseudosphere, -theta_polar on the plane).  ``angle_offset`` is the
    chart angle at t = 0 (pi for a negative plane amplitude).
    ``on_surface_residual`` is the equation-of-motion residual of the
    orbit, evaluated at t = 0.
    """

    family: Family
    radius: float
    phase_rate: float
    period_T: float
    orientation: int
    angle_offset: float = 0.0
    on_surface_residual: float = 0.0

    @property
    def phase_law(self) -> str:
        name = "theta_polar" if self.family is Family.PLANE else "phi"
        rate = self.phase_rate
        off = f" + {self.angle_offset:.3f}" if self.angle_offset else ""
        return f"{name} = {rate:.17g} * t{off}"

    def angle_at(self, t: float) -> float:
        return self.phase_rate * t + self.angle_offset

    def initial_point(self, manifold: ManifoldSpec) -> PhasePoint:
        return self.point_at(manifold, 0.0)

    def point_at(self, manifold: ManifoldSpec, t: float) -> PhasePoint:
        a = self.angle_at(t)
        if self.family is Family.PLANE:
            z = self.radius * complex(math.cos(a), math.sin(a))
        else:
            r = math.tan(self.radius / 2.0) if self.family is Family.SPHERE \
                else math.tanh(self.radius / 2.0)
            z = r * complex(math.cos(a), -math.sin(a))
        return PhasePoint.from_z(manifold, z)


def _su2_residual(p: SU2Drive, theta0: float) -> float:
    # dphi/dt must reproduce w when the orbit angle locks to the drive
    phidot = -(p.mu / p.hbar) * (p.b_rot / math.tan(theta0) + p.b_static)
    scale = max(1.0, abs(p.omega))
    return abs(phidot - p.omega) / scale


def invariant_surface_su2(p: SU2Drive) -> float:
    """Fixed colatitude theta0 in (0, pi) of the spin resonance orbit."""
    if p.b_rot == 0.0:
        raise DegenerateDriveError(
            "b_rot = 0: the rotating drive is degenerate and no resonance "
            "orbit exists")
    c = -(p.b_static / p.b_rot + p.hbar * p.omega / (p.mu * p.b_rot))
    return math.atan2(1.0, c)  # arccot onto (0, pi)


def su2_resonance(manifold: ManifoldSpec, p: SU2Drive) -> ResonanceResult:
    theta0 = invariant_surface_su2(p)
    return ResonanceResult(
        family=Family.SPHERE, radius=theta0, phase_rate=p.omega,
        period_T=period(p), orientation=int(math.copysign(1, p.omega)),
        on_surface_residual=_su2_residual(p, theta0))


def invariant_surface_su11(p: SU11Drive) -> float:
    """Fixed hyperbolic radius tau0 > 0 of the pseudosphere resonance.

    Requires coth(tau0) = -(w + 2 w0)/(4 kappa) > 1 in the rederived
    convention (the legacy convention flips the sign of w, matching its
    flipped phase law); a right-hand side in [-1, 1] admits no orbit and
    one below -1 only the branch with the angle shifted by pi (reported
    as an error, never remapped silently).
    """
    if p.kappa == 0.0:
        raise DegenerateDriveError("kappa = 0: no pump, no resonance orbit")
    rhs = (-p.rotation_sign * p.omega - 2.0 * p.omega0) / (4.0 * p.kappa)
    if abs(rhs) <= 1.0:
        raise NoResonanceError(
            f"|{rhs:.6g}| <= 1: coth(tau0) has no solution, the drive lies "
            f"outside the resonance region")
    if rhs < -1.0:
        raise NegativeBranchError(
            f"coth(tau0) = {rhs:.6g} < -1: the orbit exists only with the "
            f"phase shifted by pi")
    return math.atanh(1.0 / rhs)  # arccoth(rhs) for rhs > 1


def su11_resonance(manifold: ManifoldSpec, p: SU11Drive) -> ResonanceResult:
    tau0 = invariant_surface_su11(p)
    s = p.rotation_sign
    # rederived convention locks phi = -w t; the legacy one phi = +w t
    phase_rate = -s * p.omega
    phidot = 2.0 * p.omega0 + 4.0 * p.kappa / math.tanh(tau0)
    residual = abs(phidot - phase_rate) / max(1.0, abs(p.omega))
    return ResonanceResult(
        family=Family.PSEUDOSPHERE, radius=tau0, phase_rate=phase_rate,
        period_T=period(p), orientation=int(math.copysign(1, phase_rate)),
        on_surface_residual=residual)


@dataclass(frozen=True)
class BosonSurface:
    """Steady state of the driven cavity mode.

    ``amplitude`` is the signed steady-state response A = E/(w - w0) of
    the linear equation of motion, so z(t) = A e^{-i w t}; ``r0_steady`` =
    |A|.  ``r0_alt`` is the counter-rotating closed form |E/(w + w0)|
    quoted for this model; it does not solve the equation of motion and is
    reported only for comparison.
    """

    amplitude: float
    r0_steady: float
    r0_alt: float
    phase_law: str


def invariant_surface_boson(p: BosonDrive) -> BosonSurface:
    if p.omega == p.omega0:
        raise DivergentResponseError(
            "omega = omega0: the steady-state amplitude diverges on the "
            "cavity resonance pole")
    amp = p.amplitude / (p.omega - p.omega0)
    r0_alt = abs(p.amplitude / (p.omega + p.omega0)) \
        if p.omega != -p.omega0 else math.inf
    law = "theta_polar = -w t" + (" + pi" if amp < 0 else "")
    return BosonSurface(amplitude=amp, r0_steady=abs(amp), r0_alt=r0_alt,
                        phase_law=law)


def boson_resonance(manifold: ManifoldSpec, p: BosonDrive) -> ResonanceResult:
    surf = invariant_surface_boson(p)
    offset = math.pi if surf.amplitude < 0 else 0.0
    # orientation is measured by -theta_polar, which advances as +w t
    return ResonanceResult(
        family=Family.PLANE, radius=surf.r0_steady, phase_rate=-p.omega,
        period_T=period(p), orientation=int(math.copysign(1, p.omega)),
        angle_offset=offset, on_surface_residual=0.0)


def resonance_orbit(manifold: ManifoldSpec, p: DriveParams) -> ResonanceResult:
    """Family dispatch to the closed-form resonance solution."""
    if isinstance(p, SU2Drive):
        return su2_resonance(manifold, p)
    if isinstance(p, SU11Drive):
        return su11_resonance(manifold, p)
    return boson_resonance(manifold, p)


@dataclass(frozen=True)
class ZeroDeltaSU2:
    """Spin operating point with vanishing dynamical phase.

    cot(theta0) = B0/B zeroes the orbit energy; combining with the
    invariant surface pins w = -mu (B0^2 + B^2)/(hbar B) and leaves
    Gamma = 2 pi J hbar (1 - B0/sqrt(B0^2 + B^2)).
    """

    theta0: float
    omega: float
    gamma: float
    drive: SU2Drive


def zero_delta_su2(b_static: float, b_rot: float, mu: float = 1.0,
                   hbar: float = 1.0, spin_j: float = 0.5) -> ZeroDeltaSU2:
    if b_static == 0.0:
        raise DegenerateDriveError("b_static = 0: zero-delta condition undefined")
    if b_rot == 0.0:
        raise DegenerateDriveError("b_rot = 0: degenerate drive")
    theta0 = math.atan2(1.0, b_rot / b_static)
    omega = -mu * (b_rot ** 2 + b_static ** 2) / (hbar * b_static)
    gamma = 2.0 * math.pi * spin_j * hbar * \
        (1.0 - b_rot / math.hypot(b_rot, b_static))
    return ZeroDeltaSU2(theta0=theta0, omega=omega, gamma=gamma,
                        drive=SU2Drive(b_static, b_rot, omega, mu, hbar))


@dataclass(frozen=True)
class ZeroDeltaSU11:
    """Pseudosphere operating point with vanishing dynamical phase.

    The orbit energy 2 hbar k [w0 cosh(tau0) + 2 kappa sinh(tau0)] counts
    the two conjugate pump sidebands, so it vanishes at coth(tau0) =
    -2 kappa/w0, giving w = 8 kappa^2/w0 - 2 w0 and Gamma = 2 pi k hbar
    (2|kappa|/sqrt(4 kappa^2 - w0^2) - 1).  The fields with suffix
    ``_alt`` hold the widely quoted single-sideband forms (coth(tau0) =
    -kappa/w0, w = 4 kappa^2/w0 - 2 w0, Gamma per the matching closed
    form); the dynamical phase on that alternative orbit does not vanish
    and is reported in ``delta_alt``.
    """

    tau0: float
    omega: float
    gamma: float
    drive: SU11Drive
    tau0_alt: float
    omega_alt: float
    gamma_alt: float
    delta_alt: float
    drive_alt: SU11Drive


def zero_delta_su11(omega0: float, kappa: float, k: float = 0.25,
                    hbar: float = 1.0) -> ZeroDeltaSU11:
    if omega0 == 0.0:
        raise DegenerateDriveError("omega0 = 0: zero-delta condition undefined")
    ratio = kappa / omega0
    if abs(ratio) <= 1.0:
        raise NoResonanceError(
            f"|kappa/omega0| = {abs(ratio):.6g} <= 1: no zero-delta point")
    if ratio > 1.0:
        raise NegativeBranchError(
            "kappa/omega0 > 1: the zero-delta orbit exists only on the "
            "branch with the phase shifted by pi")

    tau0 = math.atanh(-omega0 / (2.0 * kappa))  # coth(tau0) = -2 kappa/w0
    omega = 8.0 * kappa ** 2 / omega0 - 2.0 * omega0
    cosh0 = 2.0 * abs(kappa) / math.sqrt(4.0 * kappa ** 2 - omega0 ** 2)
    gamma = 2.0 * math.pi * k * hbar * (cosh0 - 1.0)

    tau0_alt = math.atanh(-omega0 / kappa)  # coth = -kappa/w0
    omega_alt = 4.0 * kappa ** 2 / omega0 - 2.0 * omega0
    cosh_alt = abs(kappa) / math.sqrt(kappa ** 2 - omega0 ** 2)
    gamma_alt = 2.0 * math.pi * k * hbar * (cosh_alt - 1.0)
    sinh_alt = math.copysign(math.sqrt(cosh_alt ** 2 - 1.0), tau0_alt)
    energy_alt = 2.0 * hbar * k * (omega0 * cosh_alt + 2.0 * kappa * sinh_alt)
    delta_alt = energy_alt * 2.0 * math.pi / abs(omega_alt)

    return ZeroDeltaSU11(
        tau0=tau0, omega=omega, gamma=gamma,
        drive=SU11Drive(omega0, kappa, omega, hbar),
        tau0_alt=tau0_alt, omega_alt=omega_alt, gamma_alt=gamma_alt,
        delta_alt=delta_alt, drive_alt=SU11Drive(omega0, kappa, omega_alt, hbar))


@dataclass(frozen=True)
class ZeroDeltaBoson:
    """Cavity operating point with vanishing dynamical phase.

    ``omega`` is found by bracketed root finding of the numerically
    integrated dynamical phase along the steady-state family (the root
    sits at w = w0/2 where the signed amplitude equals -2E/w0).  The
    ``_alt`` fields hold the widely quoted pair (w = -w0/2, Gamma =
    8 pi hbar E^2/w^2) for comparison.
    """

    omega: float
    r0: float
    gamma: float
    delta: float
    drive: BosonDrive
    omega_alt: float
    gamma_alt: float


def zero_delta_boson(omega0: float, amplitude: float, hbar: float = 1.0,
                     delta_of_omega=None, bracket=None) -> ZeroDeltaBoson:
    """Locate the drive frequency zeroing the dynamical phase.

    ``delta_of_omega`` computes the numeric dynamical phase of the
    steady-state orbit at a trial frequency; the default integrates the
    equation of motion over one period (see geophase.phases).  The search
    bracket defaults to (0.1 w0, 0.9 w0), between the w = 0 and w = w0
    poles.
    """
    from scipy.optimize import brentq

    if amplitude <= 0.0:
        raise ValidationError("zero-delta search needs a positive amplitude")
    if omega0 == 0.0:
        raise DegenerateDriveError("omega0 = 0: steady-state family degenerate")
    if delta_of_omega is None:
        from .phases import steady_state_delta

        def delta_of_omega(w):
            return steady_state_delta(BosonDrive(omega0, amplitude, w, hbar))

    if bracket is None:
        bracket = (0.1 * omega0, 0.9 * omega0)
    a, b = sorted(bracket)
    fa, fb = delta_of_omega(a), delta_of_omega(b)
    if fa * fb > 0.0:
        raise RootNotFoundError(
            f"dynamical phase does not change sign on [{a:.6g}, {b:.6g}] "
            f"(Delta = {fa:.3g}, {fb:.3g})")
    w_root = brentq(delta_of_omega, a, b, xtol=1e-14, rtol=1e-15)
    drive = BosonDrive(omega0, amplitude, w_root, hbar)
    r0 = invariant_surface_boson(drive).r0_steady
    gamma = 2.0 * math.pi * hbar * r0 ** 2
    omega_alt = -omega0 / 2.0
    gamma_alt = 8.0 * math.pi * hbar * amplitude ** 2 / omega_alt ** 2
    return ZeroDeltaBoson(omega=w_root, r0=r0, gamma=gamma,
                          delta=delta_of_omega(w_root), drive=drive,
                          omega_alt=omega_alt, gamma_alt=gamma_alt)


def surface_drive_su2(theta0: float, b_rot: float, omega: float,
                      mu: float = 1.0, hbar: float = 1.0) -> SU2Drive:
    """Drive on the spin invariant surface of colatitude theta0: the
    static field is solved from the surface relation."""
    if not 0.0 < theta0 < math.pi:
        raise ValidationError("theta0 must lie in (0, pi)")
    b_static = -b_rot / math.tan(theta0) - hbar * omega / mu
    return SU2Drive(b_static, b_rot, omega, mu, hbar)


def surface_drive_su11(tau0: float, omega0: float, kappa: float,
                       hbar: float = 1.0) -> SU11Drive:
    """Drive on the pseudosphere invariant surface of radius tau0: the
    pump frequency is solved from the surface relation."""
    if not tau0 > 0.0:
        raise ValidationError("tau0 must be positive")
    omega = -2.0 * omega0 - 4.0 * kappa / math.tanh(tau0)
    return SU11Drive(omega0, kappa, omega, hbar)


def surface_drive_boson(r0: float, omega0: float, omega: float,
                        hbar: float = 1.0) -> BosonDrive:
    """Drive on the plane invariant surface of radius r0: the amplitude
    is solved from the steady-state response."""
    if not r0 >= 0.0:
        raise ValidationError("r0 must be >= 0")
    if omega == omega0:
        raise DivergentResponseError("omega = omega0: pole of the response")
    return BosonDrive(omega0, r0 * abs(omega - omega0), omega, hbar)
