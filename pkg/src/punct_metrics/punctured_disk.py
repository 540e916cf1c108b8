"""Hyperbolic quantities on the punctured unit disk and the distance D.

All densities and distances use the curvature -4 normalisation, i.e. the
half-plane metric ``|dz| / (2 Im z)``.

The distance ``D`` lives on the closed punctured disk
``E* = {0 < |z| <= 1/e}``::

    D(z1, z2) = 2 sin(theta/2) / max(tau1, tau2) + |log tau2 - log tau1|

with ``tau = log(1/|z|)`` and ``theta = |arg(z2/z1)|`` in ``[0, pi]``.
"""
import cmath
import math
from typing import NamedTuple

from . import kernels
from .errors import DomainError

INV_E = math.exp(-1.0)
# relative slack on the outer boundary |z| = 1/e, absorbs rounding of
# points produced by chart maps such as (w - a) / rho_tilde
BOUNDARY_RTOL = 1e-12


class AnnularPoint(NamedTuple):
    tau: float
    dir: complex

    def to_complex(self) -> complex:
        return self.dir * math.exp(-self.tau)


def _as_finite(z) -> complex:
    z = complex(z)
    if cmath.isinf(z) or cmath.isnan(z):
        raise DomainError(f"point {z!r} is not a finite complex number")
    return z


def _check_punctured_disk(z) -> complex:
    z = _as_finite(z)
    r = abs(z)
    if not 0.0 < r < 1.0:
        raise DomainError(f"point {z!r} is not in the punctured unit disk")
    return z


def _check_estar(z) -> complex:
    z = _as_finite(z)
    r = abs(z)
    if not 0.0 < r <= INV_E * (1.0 + BOUNDARY_RTOL):
        raise DomainError(f"point {z!r} is not in 0 < |z| <= 1/e")
    return z


def to_annular(z) -> AnnularPoint:
    z = _check_punctured_disk(z)
    r = abs(z)
    return AnnularPoint(-math.log(r), z / r)


def angle_between(z1: complex, z2: complex) -> float:
    """Principal ``|arg(z2/z1)|``, clamped to ``[0, pi]``."""
    c = z2 * z1.conjugate()
    theta = abs(math.atan2(c.imag, c.real))
    return min(theta, math.pi)


def metric_D(z1, z2) -> float:
    """The distance D on ``0 < |z| <= 1/e``."""
    return kernels.D(_check_estar(z1), _check_estar(z2))


def metric_D_prime(z1, z2) -> float:
    """D with ``2 sin(theta/2)`` replaced by ``theta``; defined on all of the
    punctured disk. On ``E*`` it sandwiches D: ``(2/pi) D' <= D <= D'``."""
    return kernels.D_prime(_check_punctured_disk(z1), _check_punctured_disk(z2))


def arth(x: float) -> float:
    """Inverse hyperbolic tangent for ``0 <= x < 1``."""
    if not 0.0 <= x < 1.0 - 1e-15:
        raise DomainError(f"arth argument {x!r} outside [0, 1 - 1e-15)")
    return 0.5 * math.log((1.0 + x) / (1.0 - x))


def hyp_dist_punctured_disk(z1, z2) -> float:
    """Exact hyperbolic distance of the punctured unit disk."""
    return kernels.hyp_dstar(_check_punctured_disk(z1), _check_punctured_disk(z2))


def hyp_density_punctured_disk(z) -> float:
    r = abs(_check_punctured_disk(z))
    return 1.0 / (2.0 * r * math.log(1.0 / r))


def geodesic_delta(eta1: float) -> float:
    """Height gain of a half-plane geodesic started at height ``eta1``.

    Uses ``1 / (4 (eta1 + sqrt(eta1^2 + 1/4)))``, the cancellation-free form
    of ``sqrt(eta1^2 + 1/4) - eta1``.
    """
    if not eta1 > 0.0:
        raise DomainError(f"eta1 must be positive, got {eta1!r}")
    return 1.0 / (4.0 * (eta1 + math.sqrt(eta1 * eta1 + 0.25)))


def geodesic_annulus(z1, z2) -> tuple[float, float]:
    """Annulus ``r_min <= |z| <= r_max`` containing the shortest geodesic of
    the punctured disk joining ``z1`` and ``z2``."""
    z1 = _check_punctured_disk(z1)
    z2 = _check_punctured_disk(z2)
    if abs(z1) > abs(z2):
        z1, z2 = z2, z1
    r1 = abs(z1)
    delta = geodesic_delta(-math.log(r1) / math.pi)
    return math.exp(-math.pi * delta) * r1, abs(z2)


def halfplane_lifts(z1, z2) -> tuple[complex, complex]:
    """Lifts under ``zeta -> exp(i pi zeta)`` whose half-plane distance equals
    the punctured-disk distance (the angular offset is taken in ``(-pi, pi]``)."""
    z1 = _check_punctured_disk(z1)
    z2 = _check_punctured_disk(z2)
    a1 = cmath.phase(z1)
    offset = cmath.phase(z2 / z1)
    zeta1 = complex(a1, -math.log(abs(z1))) / math.pi
    zeta2 = complex(a1 + offset, -math.log(abs(z2))) / math.pi
    return zeta1, zeta2
