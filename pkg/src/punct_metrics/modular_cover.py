"""The covering map Q of the punctured disk onto C minus {0, 1}.

``Q(exp(i pi tau))`` is the elliptic modular function ``lambda(tau)``::

    Q(z) = 16 z [ sum_{n>=0} z^{n(n+1)} / (1 + 2 sum_{n>=1} z^{n^2}) ]^4
         = 16 z prod_{n>=1} ((1 + z^{2n}) / (1 + z^{2n-1}))^8

This module also holds the constants derived from Q's growth: the
geodesic-avoidance constant ``K(rho)`` and Hempel's lower bound for the
density of the thrice-punctured sphere.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _dd as dd
from ._dd import two_sum
from .errors import DomainError, NumericError
from .punctured_disk import INV_E, geodesic_delta

E_HALF_PI = math.exp(math.pi / 2)
UNIVALENCE_RADIUS = math.exp(-math.pi / 2)
RHO_MAX = 4.0 * UNIVALENCE_RADIUS

#: Gamma(1/4)^4 / (4 pi^2) = 1 / (2 lambda(-1)).
C0 = math.gamma(0.25) ** 4 / (4.0 * math.pi ** 2)

MAX_TERMS = 100_000


def q_eval(z, tol: float = 1e-16) -> complex:
    """Evaluate Q through the theta-quotient representation."""
    z = complex(z)
    r = abs(z)
    if not r < 1.0:
        raise DomainError(f"Q is defined on |z| < 1, got {z!r}")
    if z == 0:
        return 0j
    if not tol > 0:
        raise DomainError("tol must be positive")
    cutoff = tol * (1.0 - r)
    # compensated sums and a double-double tail: Q/(Q - 1) near Q = 1 has
    # condition ~1e5, so plain rounding (~20 ulp) is not enough there
    nr, nre, ni, nie = 1.0, 0.0, 0.0, 0.0   # sum z^{n(n+1)}
    dr, dre, di, die = 1.0, 0.0, 0.0, 0.0   # 1 + 2 sum z^{n^2}
    tn = 1.0 + 0j           # z^{n(n+1)}, n = 0
    sq = 1.0 + 0j           # z^{n^2}, n = 0
    z2 = z * z
    step_n = z2             # z^{2n+2}
    step_s = z              # z^{2n+1}
    for _ in range(MAX_TERMS):
        sq = sq * step_s
        tn = tn * step_n
        if abs(sq) < cutoff and abs(tn) < cutoff:
            break
        dr, e = two_sum(dr, 2.0 * sq.real)
        dre += e
        di, e = two_sum(di, 2.0 * sq.imag)
        die += e
        nr, e = two_sum(nr, tn.real)
        nre += e
        ni, e = two_sum(ni, tn.imag)
        nie += e
        step_s = step_s * z2
        step_n = step_n * z2
    else:
        raise NumericError(f"theta series did not converge at z = {z!r}")
    a = dd.cdiv((nr, nre, ni, nie), (dr, dre, di, die))
    a2 = dd.cmul(a, a)
    return dd.to_complex(dd.cmul((16.0 * z.real, 0.0, 16.0 * z.imag, 0.0), dd.cmul(a2, a2)))


def q_product(z, tol: float = 1e-16) -> complex:
    """Evaluate Q through the infinite product; independent of ``q_eval``."""
    z = complex(z)
    r = abs(z)
    if not r < 1.0:
        raise DomainError(f"Q is defined on |z| < 1, got {z!r}")
    cutoff = tol * (1.0 - r)
    prod = 1.0 + 0j
    odd = z            # z^{2n-1}
    z2 = z * z
    for _ in range(MAX_TERMS):
        if abs(odd) < cutoff:
            break
        even = odd * z
        prod *= (1.0 + even) / (1.0 + odd)
        odd = odd * z2
    else:
        raise NumericError(f"product did not converge at z = {z!r}")
    return 16.0 * z * prod ** 8


def q_taylor_coefficients(count: int, radius: float = 0.05, nodes: int = 64) -> list[float]:
    """Coefficients of ``z^1 .. z^count`` of Q by the Cauchy integral on a
    small circle (trapezoidal rule, which is spectrally accurate here)."""
    if not 1 <= count <= 5:
        raise DomainError("count must be between 1 and 5")
    k = np.arange(nodes)
    roots = np.exp(2j * np.pi * k / nodes)
    values = np.array([q_eval(radius * w) for w in roots])
    coeffs = []
    for n in range(1, count + 1):
        a = np.mean(values * roots ** (-n)) / radius ** n
        coeffs.append(float(a.real))
    return coeffs


def _check_r(r: float):
    if not 0.0 < r < UNIVALENCE_RADIUS:
        raise DomainError(f"r must lie in (0, e^(-pi/2)), got {r!r}")


def q_growth_bounds(r: float) -> tuple[float, float]:
    """Bounds on |Q(z)| for |z| = r from the growth bounds of univalent maps."""
    _check_r(r)
    m = r * E_HALF_PI
    return 16.0 * r / (1.0 + m) ** 2, 16.0 * r / (1.0 - m) ** 2


def _check_rho(rho: float):
    if not 0.0 < rho < RHO_MAX:
        raise DomainError(f"rho must lie in (0, 4 e^(-pi/2)), got {rho!r}")


def mu_of_rho(rho: float) -> float:
    """Solve ``16 r / (1 + r e^{pi/2})^2 = rho`` for ``mu = r e^{pi/2}``.

    With ``x = rho e^{pi/2}`` and ``s = sqrt(4 - x)`` the closed form
    ``(8 - x - 4 s) / x`` equals ``x / (2 + s)^2``; the latter is used as it
    does not cancel for small rho.
    """
    _check_rho(rho)
    x = rho * E_HALF_PI
    return x / (2.0 + math.sqrt(4.0 - x)) ** 2


@dataclass(frozen=True)
class CoverConstants:
    rho: float
    r: float
    mu: float
    eta1: float
    delta: float
    K: float


def k_of_rho(rho: float) -> CoverConstants:
    mu = mu_of_rho(rho)
    r = mu / E_HALF_PI
    eta1 = -math.log(r) / math.pi
    delta = geodesic_delta(eta1)
    K = math.pi * delta + 2.0 * math.log((1.0 + mu * math.exp(-math.pi * delta)) / (1.0 - mu))
    return CoverConstants(rho=rho, r=r, mu=mu, eta1=eta1, delta=delta, K=K)


#: ``K(1/e)``
K0 = k_of_rho(INV_E).K


def hempel_density_lower(z) -> float:
    """Hempel's lower bound ``1 / (2|z| (C0 + |log|z||))`` for the density
    of C minus {0, 1}."""
    z = complex(z)
    if cmath.isinf(z) or cmath.isnan(z) or z == 0 or z == 1:
        raise DomainError(f"{z!r} is not a point of C minus {{0, 1}}")
    r = abs(z)
    return 1.0 / (2.0 * r * (C0 + abs(math.log(r))))


def geodesic_avoidance_radius(sigma: float, rho: float) -> float:
    """Radius of the disk about 0 that shortest geodesics between points of
    modulus at least sigma stay out of."""
    _check_rho(rho)
    if not 0.0 < sigma <= rho:
        raise DomainError(f"need 0 < sigma <= rho, got sigma={sigma!r}, rho={rho!r}")
    return sigma * math.exp(-k_of_rho(rho).K)
