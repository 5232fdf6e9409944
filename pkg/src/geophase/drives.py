"""Resonant drive Hamiltonians and their coherent-state expectations.

One parameter set per family:

* sphere        -- spin mu B.J with B(t) = (B0 cos wt, B0 sin wt, B)
* pseudosphere  -- cavity mode with an oscillating two-photon pump
* plane         -- cavity mode with an oscillating linear (coherent) drive

All formulas carry hbar and mu explicitly; the defaults reproduce natural
units.  For the pseudosphere the sign of the rotating phase in the energy
expectation is not fixed by the angle-chart formulas alone, so the
operator expectation is taken as ground truth ("rederived", the default,
giving cos(phi + w t)); ``sign_convention="legacy"`` flips the rotation to
cos(phi - w t) to reproduce the older printed form of the same model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .manifolds import Family, ManifoldSpec, PhasePoint

SIGN_CONVENTIONS = ("rederived", "legacy")


def _require_finite(**kwargs):
    for name, value in kwargs.items():
        if not math.isfinite(value):
            raise ValidationError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class SU2Drive:
    """Rotating-field spin drive: H = -mu B(t) . J."""

    b_static: float
    b_rot: float
    omega: float
    mu: float = 1.0
    hbar: float = 1.0

    family = Family.SPHERE

    def __post_init__(self):
        _require_finite(b_static=self.b_static, b_rot=self.b_rot,
                        omega=self.omega, mu=self.mu, hbar=self.hbar)
        if self.hbar <= 0:
            raise ValidationError("hbar must be positive")


@dataclass(frozen=True)
class SU11Drive:
    """Two-photon pump drive: H = 2 hbar [w0 K0 + kappa(e^{iwt} K+ + e^{-iwt} K-)].

    kappa is a real pump strength; a complex pump is not supported.
    """

    omega0: float
    kappa: float
    omega: float
    hbar: float = 1.0
    sign_convention: str = "rederived"

    family = Family.PSEUDOSPHERE

    def __post_init__(self):
        _require_finite(omega0=self.omega0, kappa=self.kappa,
                        omega=self.omega, hbar=self.hbar)
        if self.hbar <= 0:
            raise ValidationError("hbar must be positive")
        if self.sign_convention not in SIGN_CONVENTIONS:
            raise ValidationError(
                f"sign_convention must be one of {SIGN_CONVENTIONS}, "
                f"got {self.sign_convention!r}")

    @property
    def rotation_sign(self) -> float:
        """+1 for the operator-derived convention, -1 for the legacy one."""
        return 1.0 if self.sign_convention == "rederived" else -1.0


@dataclass(frozen=True)
class BosonDrive:
    """Coherent linear drive: H = hbar w0 a+a + hbar (a+ E e^{-iwt} + a E e^{iwt}).

    The drive amplitude E is restricted to a non-negative constant.
    """

    omega0: float
    amplitude: float
    omega: float
    hbar: float = 1.0

    family = Family.PLANE

    def __post_init__(self):
        _require_finite(omega0=self.omega0, amplitude=self.amplitude,
                        omega=self.omega, hbar=self.hbar)
        if self.amplitude < 0:
            raise ValidationError("drive amplitude must be >= 0")
        if self.hbar <= 0:
            raise ValidationError("hbar must be positive")


DriveParams = SU2Drive | SU11Drive | BosonDrive


def check_compatible(manifold: ManifoldSpec, params: DriveParams) -> None:
    if manifold.family is not params.family:
        raise ValidationError(
            f"drive for {params.family.value} cannot act on a "
            f"{manifold.family.value} manifold")


def period(params: DriveParams) -> float:
    """One drive period 2 pi / |omega|."""
    if params.omega == 0.0:
        raise ValidationError("drive frequency omega must be nonzero")
    return 2.0 * math.pi / abs(params.omega)


def magnetic_field(t: float, p: SU2Drive) -> tuple[float, float, float]:
    """Lab-frame field (B0 cos wt, B0 sin wt, B)."""
    return (p.b_rot * math.cos(p.omega * t),
            p.b_rot * math.sin(p.omega * t),
            p.b_static)


def pseudo_field(t: float, p: SU11Drive) -> tuple[float, float, float]:
    """Pseudo-field coefficients (C0, C1, C2) = 2 hbar (w0, -2k cos wt, -2k sin wt)."""
    return (2.0 * p.hbar * p.omega0,
            -4.0 * p.hbar * p.kappa * math.cos(p.omega * t),
            -4.0 * p.hbar * p.kappa * math.sin(p.omega * t))


def energy_expectation(manifold: ManifoldSpec, point, t: float,
                       p: DriveParams) -> float:
    """Coherent-state energy <z|H(t)|z>.

    Evaluated in the pole-free complex chart.  Angle-chart equivalents:

    * sphere:       -mu J [B0 sin(theta) cos(phi - w t) - B cos(theta)]
    * pseudosphere:  2 hbar k [w0 cosh(tau) + 2 kappa sinh(tau) cos(phi + s w t)]
                     with s = +1 (rederived) or -1 (legacy)
    * plane:         hbar w0 r^2 + 2 hbar E r cos(theta_polar + w t)
    """
    check_compatible(manifold, p)
    z = point.z if isinstance(point, PhasePoint) else complex(point)
    x = abs(z) ** 2
    if manifold.family is Family.SPHERE:
        rot = p.b_rot * 2.0 * (z * complex(math.cos(p.omega * t), math.sin(p.omega * t))).real
        return -p.mu * manifold.j * (rot - p.b_static * (1.0 - x)) / (1.0 + x)
    if manifold.family is Family.PSEUDOSPHERE:
        if x >= 1.0:
            raise DomainError("pseudosphere point needs |z| < 1")
        # z e^{-i s w t} has angle -(phi + s w t) for z = u e^{-i phi}
        wt = -p.rotation_sign * p.omega * t
        rot = 2.0 * p.kappa * 2.0 * (z * complex(math.cos(wt), math.sin(wt))).real
        return 2.0 * p.hbar * manifold.k * (p.omega0 * (1.0 + x) + rot) / (1.0 - x)
    drive = 2.0 * p.amplitude * (z * complex(math.cos(p.omega * t), math.sin(p.omega * t))).real
    return p.hbar * (p.omega0 * x + drive)
