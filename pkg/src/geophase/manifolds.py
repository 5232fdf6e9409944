"""Coherent-state phase-space geometry for the three manifold families.

Each family carries a single complex coordinate z, a pair of chart angles,
an (unnormalized) self-overlap kernel F, and the induced Kaehler metric
g = d^2 log F / dz dz*.  The chart conventions are:

============  =======================  =====================  ==============
family        chart                    z convention           kernel F
============  =======================  =====================  ==============
sphere        theta in [0, pi],        z = tan(theta/2)       (1+|z|^2)^(2J)
              phi in [0, 2pi)              * exp(-i phi)
pseudosphere  tau >= 0,                z = tanh(tau/2)        (1-|z|^2)^(-2k)
              phi in [0, 2pi)              * exp(-i phi)
plane         r >= 0,                  z = r * exp(+i theta)  exp(|z|^2)
              theta_polar in [0, 2pi)
============  =======================  =====================  ==============

Note the deliberate asymmetry: the compact and hyperbolic families rotate
as exp(-i phi) while the flat family uses exp(+i theta_polar).  Both
conventions are kept verbatim because every closed-form result downstream
is quoted in them.

For the pseudosphere, z is related to the usual squeezing-operator
parameter zeta (of exp(zeta K+ - zeta* K-)) by z = tanh|zeta| *
exp(i arg zeta); only z appears in this package.

At the chart poles (theta = 0, tau = 0, r = 0) the angle phi is undefined
and is reported as 0 by convention.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DomainError

_TWO_PI = 2.0 * math.pi


class Family(enum.Enum):
    """The three coherent-state families."""

    SPHERE = "sphere"
    PSEUDOSPHERE = "pseudosphere"
    PLANE = "plane"


@dataclass(frozen=True)
class ManifoldSpec:
    """Which coherent-state family, plus its representation label.

    The spin J of the sphere is stored as the integer ``two_j`` so that
    Hilbert-space dimensions stay exact; the Bargmann index k of the
    pseudosphere is a positive real (1/4 and 3/4 select the even/odd
    photon sectors of the two-photon realization).
    """

    family: Family
    two_j: int | None = None
    k: float | None = None

    def __post_init__(self):
        if self.family is Family.SPHERE:
            if self.two_j is None or self.two_j < 1:
                raise DomainError("sphere needs a positive half-integer spin (two_j >= 1)")
            if self.k is not None:
                raise DomainError("sphere takes no Bargmann index")
        elif self.family is Family.PSEUDOSPHERE:
            if self.k is None or not (self.k > 0):
                raise DomainError("pseudosphere needs a Bargmann index k > 0")
            if self.two_j is not None:
                raise DomainError("pseudosphere takes no spin")
        else:
            if self.two_j is not None or self.k is not None:
                raise DomainError("plane takes no representation parameters")

    @classmethod
    def sphere(cls, j: float) -> "ManifoldSpec":
        two_j = round(2 * j)
        if abs(2 * j - two_j) > 1e-12 or two_j < 1:
            raise DomainError(f"spin must be a positive multiple of 1/2, got {j}")
        return cls(Family.SPHERE, two_j=two_j)

    @classmethod
    def pseudosphere(cls, k: float) -> "ManifoldSpec":
        return cls(Family.PSEUDOSPHERE, k=float(k))

    @classmethod
    def plane(cls) -> "ManifoldSpec":
        return cls(Family.PLANE)

    @property
    def j(self) -> float:
        if self.family is not Family.SPHERE:
            raise DomainError("spin is defined only for the sphere")
        return self.two_j / 2.0

    @property
    def weight(self) -> float:
        """Representation weight entering the metric and phase formulas:
        J for the sphere, k for the pseudosphere, 1/2 for the plane
        (so that 2*weight is the metric numerator in every family)."""
        if self.family is Family.SPHERE:
            return self.two_j / 2.0
        if self.family is Family.PSEUDOSPHERE:
            return self.k
        return 0.5


@dataclass(frozen=True)
class PhasePoint:
    """A point of the generalized phase space.

    Stores the complex coordinate together with the chart angles; the two
    representations are kept consistent by constructing only through
    :meth:`from_z` or :meth:`from_angles`.
    """

    family: Family
    z: complex
    chart: tuple[float, float]

    @classmethod
    def from_z(cls, manifold: ManifoldSpec, z: complex) -> "PhasePoint":
        z = complex(z)
        return cls(manifold.family, z, z_to_angles(manifold, z))

    @classmethod
    def from_angles(cls, manifold: ManifoldSpec, a: float, b: float) -> "PhasePoint":
        return cls(manifold.family, angles_to_z(manifold, (a, b)), (float(a), float(b)))


def _check_z(manifold: ManifoldSpec, z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    if manifold.family is Family.PSEUDOSPHERE and abs(z) >= 1.0:
        raise DomainError(f"pseudosphere coordinate needs |z| < 1, got |z| = {abs(z)}")
    return z


def angles_to_z(manifold: ManifoldSpec, chart: tuple[float, float]) -> complex:
    """Map chart angles to the complex coordinate (see module table)."""
    a, b = float(chart[0]), float(chart[1])
    if manifold.family is Family.SPHERE:
        if not 0.0 <= a <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {a}")
        if not 0.0 <= b < _TWO_PI:
            raise DomainError(f"phi must lie in [0, 2pi), got {b}")
        return math.tan(a / 2.0) * cmath.exp(-1j * b)
    if manifold.family is Family.PSEUDOSPHERE:
        if not (a >= 0.0 and math.isfinite(a)):
            raise DomainError(f"tau must be finite and >= 0, got {a}")
        if not 0.0 <= b < _TWO_PI:
            raise DomainError(f"phi must lie in [0, 2pi), got {b}")
        return math.tanh(a / 2.0) * cmath.exp(-1j * b)
    if not a >= 0.0:
        raise DomainError(f"r must be >= 0, got {a}")
    if not 0.0 <= b < _TWO_PI:
        raise DomainError(f"theta_polar must lie in [0, 2pi), got {b}")
    return a * cmath.exp(1j * b)


def z_to_angles(manifold: ManifoldSpec, z: complex) -> tuple[float, float]:
    """Invert :func:`angles_to_z`; phi is 0 by convention at the poles."""
    z = _check_z(manifold, z)
    r = abs(z)
    if manifold.family is Family.SPHERE:
        theta = 2.0 * math.atan(r)
        phi = (-cmath.phase(z)) % _TWO_PI if r > 0.0 else 0.0
        return (theta, phi)
    if manifold.family is Family.PSEUDOSPHERE:
        tau = 2.0 * math.atanh(r)
        phi = (-cmath.phase(z)) % _TWO_PI if r > 0.0 else 0.0
        return (tau, phi)
    theta_polar = cmath.phase(z) % _TWO_PI if r > 0.0 else 0.0
    return (r, theta_polar)


def kernel_F(manifold: ManifoldSpec, z: complex) -> float:
    """Unnormalized self-overlap kernel F(z, z*); F(0) = 1, F > 0."""
    z = _check_z(manifold, z)
    x = abs(z) ** 2
    if manifold.family is Family.SPHERE:
        return (1.0 + x) ** manifold.two_j
    if manifold.family is Family.PSEUDOSPHERE:
        return (1.0 - x) ** (-2.0 * manifold.k)
    return math.exp(x)


def log_kernel_F(manifold: ManifoldSpec, z: complex) -> float:
    """log F, overflow-safe form used by finite-difference checks."""
    z = _check_z(manifold, z)
    x = abs(z) ** 2
    if manifold.family is Family.SPHERE:
        return manifold.two_j * math.log1p(x)
    if manifold.family is Family.PSEUDOSPHERE:
        return -2.0 * manifold.k * math.log1p(-x)
    return x


def kahler_metric(manifold: ManifoldSpec, z: complex) -> float:
    """Metric g = d^2 log F / dz dz* of the generalized phase space.

    Closed forms: 2J/(1+|z|^2)^2 on the sphere, 2k/(1-|z|^2)^2 on the
    pseudosphere, 1 on the plane.
    """
    z = _check_z(manifold, z)
    x = abs(z) ** 2
    if manifold.family is Family.SPHERE:
        return manifold.two_j / (1.0 + x) ** 2
    if manifold.family is Family.PSEUDOSPHERE:
        return 2.0 * manifold.k / (1.0 - x) ** 2
    return 1.0


def dlogF_dz(manifold: ManifoldSpec, z: complex) -> complex:
    """Holomorphic gradient of log F (the connection potential)."""
    z = _check_z(manifold, z)
    x = abs(z) ** 2
    if manifold.family is Family.SPHERE:
        return manifold.two_j * z.conjugate() / (1.0 + x)
    if manifold.family is Family.PSEUDOSPHERE:
        return 2.0 * manifold.k * z.conjugate() / (1.0 - x)
    return z.conjugate()


def connection_value(manifold, point, velocity, hbar: float = 1.0) -> float:
    """Integrand of the geometric phase, in energy units.

    ``velocity`` selects the chart: a complex number is dz/dt and the
    connection is evaluated as -hbar * Im[(dlogF/dz) zdot]; a pair is an
    angle-chart velocity and the closed angle forms are used instead:

    * sphere:       J hbar (1 - cos theta) dphi/dt
    * pseudosphere: k hbar (cosh tau - 1) dphi/dt
    * plane:        -hbar r^2 dtheta_polar/dt

    Both evaluations agree away from the chart poles.
    """
    if isinstance(velocity, (tuple, list)):
        da, db = float(velocity[0]), float(velocity[1])
        a = float(point.chart[0])
        if manifold.family is Family.SPHERE:
            return manifold.j * hbar * (1.0 - math.cos(a)) * db
        if manifold.family is Family.PSEUDOSPHERE:
            return manifold.k * hbar * (math.cosh(a) - 1.0) * db
        return -hbar * a * a * db
    zdot = complex(velocity)
    z = point.z if isinstance(point, PhasePoint) else complex(point)
    return -hbar * (dlogF_dz(manifold, z) * zdot).imag


def cs_overlap(manifold: ManifoldSpec, z1: complex, z2: complex) -> complex:
    """Normalized coherent-state overlap <z1|z2>.

    Sphere:       (1 + z1* z2)^(2J) / [(1+|z1|^2)(1+|z2|^2)]^J
    Pseudosphere: [(1-|z1|^2)(1-|z2|^2)]^k / (1 - z1* z2)^(2k)
    Plane:        exp(z1* z2 - |z1|^2/2 - |z2|^2/2)

    |<z1|z2>| <= 1 with equality iff z1 = z2; the map is Hermitian,
    <z1|z2> = conj(<z2|z1>).
    """
    z1 = _check_z(manifold, z1)
    z2 = _check_z(manifold, z2)
    if manifold.family is Family.SPHERE:
        num = (1.0 + z1.conjugate() * z2) ** manifold.two_j
        den = ((1.0 + abs(z1) ** 2) * (1.0 + abs(z2) ** 2)) ** (manifold.two_j / 2.0)
        return num / den
    if manifold.family is Family.PSEUDOSPHERE:
        # principal power is safe: Re(1 - z1* z2) > 0 inside the disk
        num = ((1.0 - abs(z1) ** 2) * (1.0 - abs(z2) ** 2)) ** manifold.k
        return num * (1.0 - z1.conjugate() * z2) ** (-2.0 * manifold.k)
    w = z1.conjugate() * z2 - 0.5 * (abs(z1) ** 2 + abs(z2) ** 2)
    return cmath.exp(w)


def chart_distance(manifold: ManifoldSpec, za: complex, zb: complex) -> float:
    """Intrinsic distance between two points, used for loop closure.

    Great-circle angle on the sphere, hyperbolic (Poincare-disk) distance
    on the pseudosphere, Euclidean |za - zb| on the plane.
    """
    za = _check_z(manifold, za)
    zb = _check_z(manifold, zb)
    if manifold.family is Family.SPHERE:
        # chordal form of the great-circle angle, stable for close points
        num = abs(za - zb)
        den = math.sqrt((1.0 + abs(za) ** 2) * (1.0 + abs(zb) ** 2))
        s = min(1.0, num / den)
        return 2.0 * math.asin(s)
    if manifold.family is Family.PSEUDOSPHERE:
        m = abs(za - zb) / abs(1.0 - za.conjugate() * zb)
        return 2.0 * math.atanh(min(m, 1.0 - 1e-16))
    return abs(za - zb)
