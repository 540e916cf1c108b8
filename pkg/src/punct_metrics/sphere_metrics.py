"""Distances on an n-times punctured sphere built from the disk distance D.

A configuration is normalised so that ``a_1 = 0``, ``a_2 = 1`` and
``a_n = inf``. Indices are 0-based in code: puncture ``j`` is
``config.punctures[j]`` and the puncture at infinity is ``n - 1``.

Around every finite puncture ``a_j`` sits the closed punctured disk
``E*_j = {0 < |w - a_j| <= rho_j}``, around infinity ``E*_n = {|w| >= rho_n}``;
the rest of the sphere is the core ``W``. On ``E*_j`` the distance is a
rescaled copy of D, on ``W`` it is Euclidean, and mixed pairs are joined
through the boundary circles.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import kernels
from .errors import DegenerateGeometryError, DomainError
from .modular_cover import C0, K0
from .punctured_disk import metric_D

INF = complex(math.inf, 0.0)
E = math.e
#: 1 - 1/e - 1/e^2, the separation factor between distinct E_j
SEPARATION = 1.0 - 1.0 / E - 1.0 / E ** 2
N_STARTS = 16
ANGLE_TOL = 1e-10
BOUNDARY_RTOL = 1e-12

EUCLID = (0, 0j, 1.0, 1.0)


def is_infinite(w) -> bool:
    return cmath.isinf(complex(w))


@dataclass(frozen=True)
class MoebiusMap:
    """``w -> (a w + b) / (c w + d)`` on the Riemann sphere."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __call__(self, w) -> complex:
        w = complex(w)
        if is_infinite(w):
            return INF if self.c == 0 else self.a / self.c
        den = self.c * w + self.d
        if den == 0:
            return INF
        return (self.a * w + self.b) / den

    @property
    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


IDENTITY_MAP = MoebiusMap(1, 0, 0, 1)


class RegionTag(NamedTuple):
    kind: str            # "puncture" or "core"
    index: int | None    # puncture index for kind == "puncture"


@dataclass(frozen=True)
class PunctureConfiguration:
    punctures: tuple[complex, ...]
    rho_tilde: tuple[float, ...]
    rho: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.punctures)

    @classmethod
    def from_normalized(cls, points: Sequence[complex]) -> PunctureConfiguration:
        pts = tuple(complex(p) for p in points)
        if len(pts) < 3:
            raise DomainError("need at least three punctures")
        if pts[0] != 0 or not is_infinite(pts[-1]) or 1 not in pts:
            raise DomainError("normalised configuration needs a_1 = 0, a_n = inf and 1 among the punctures")
        finite = pts[:-1]
        if any(is_infinite(p) for p in finite) or len(set(finite)) != len(finite):
            raise DomainError("punctures must be pairwise distinct")
        rho_tilde, rho = _radii(finite)
        return cls(pts, rho_tilde, rho)

    def chart(self, j: int):
        if j == self.n - 1:
            return (2, 0j, self.rho_tilde[j], self.rho[j])
        return (1, self.punctures[j], self.rho_tilde[j], self.rho[j])

    def circle(self, j: int) -> tuple[complex, float]:
        if j == self.n - 1:
            return 0j, self.rho[j]
        return self.punctures[j], self.rho[j]


def _radii(finite: Sequence[complex]):
    m = len(finite)
    rho_tilde = [min(abs(finite[k] - finite[j]) for k in range(m) if k != j) for j in range(m)]
    rho_tilde.append(max(abs(a) for a in finite[1:]))
    rho = [r / E for r in rho_tilde[:-1]] + [E * rho_tilde[-1]]
    return tuple(rho_tilde), tuple(rho)


def radii(config: PunctureConfiguration) -> tuple[tuple[float, ...], tuple[float, ...]]:
    return config.rho_tilde, config.rho


def _lex(w: complex):
    return (w.real, w.imag)


def normalize(points: Sequence) -> tuple[PunctureConfiguration, MoebiusMap]:
    """Send three designated punctures to 0, 1, inf.

    Designation: inf if present, else the puncture of largest modulus, goes
    to inf; of the rest, the closest pair goes to 0 and 1 (lexicographically
    smaller point to 0; ties between pairs broken lexicographically). If
    0, 1 and inf are all punctures already, the identity is used. The
    output order is 0, 1, the remaining finite images in input order, inf.
    """
    pts = [complex(p) for p in points]
    if any(cmath.isnan(p) for p in pts):
        raise DomainError("punctures must not be NaN")
    pts = [INF if is_infinite(p) else p for p in pts]
    distinct = []
    for p in pts:
        if p not in distinct:
            distinct.append(p)
    if len(distinct) < 3:
        raise DomainError("need at least three distinct punctures")
    if len(distinct) != len(pts):
        raise DomainError("punctures must be pairwise distinct")

    if 0 in pts and 1 in pts and INF in pts:
        mob, a, b, p = IDENTITY_MAP, 0j, 1 + 0j, INF
    else:
        if INF in pts:
            p = INF
        else:
            p = max(pts, key=lambda w: (abs(w), [-v for v in _lex(w)]))
        rest = [w for w in pts if w != p]
        pairs = []
        for i, u in enumerate(rest):
            for v in rest[i + 1:]:
                u0, v0 = sorted((u, v), key=_lex)
                pairs.append((abs(u - v), _lex(u0) + _lex(v0), u0, v0))
        _, _, a, b = min(pairs, key=lambda t: (t[0], t[1]))
        if p == INF:
            mob = MoebiusMap(1, -a, 0, b - a)
        else:
            mob = MoebiusMap(b - p, -a * (b - p), b - a, -p * (b - a))

    others = [mob(w) for w in pts if w not in (a, b, p)]
    config = PunctureConfiguration.from_normalized([0j, 1 + 0j, *others, INF])
    return config, mob


def load_configuration(path) -> tuple[PunctureConfiguration, MoebiusMap]:
    """Read ``{"punctures": [[re, im], ..., "inf"]}`` and normalise it."""
    with open(path) as fh:
        data = json.load(fh)
    return normalize([parse_json_point(p) for p in data["punctures"]])


def parse_json_point(p) -> complex:
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity"):
            return INF
        raise ValueError(f"unrecognised point {p!r}")
    if isinstance(p, (int, float)):
        return complex(p)
    re, im = p
    return complex(float(re), float(im))


def _in_disk(w: complex, center: complex, r: float) -> bool:
    return abs(w - center) <= r * (1.0 + BOUNDARY_RTOL)


def classify(config: PunctureConfiguration, w) -> RegionTag:
    w = complex(w)
    n = config.n
    if is_infinite(w) or w in config.punctures:
        raise DomainError(f"{w!r} is a puncture")
    for j in range(n - 1):
        if abs(w - config.punctures[j]) <= config.rho[j]:
            return RegionTag("puncture", j)
    if abs(w) >= config.rho[n - 1]:
        return RegionTag("puncture", n - 1)
    return RegionTag("core", None)


def _in_estar(config, j, w) -> bool:
    if is_infinite(w) or w in config.punctures:
        return False
    if j == config.n - 1:
        return abs(w) >= config.rho[j] * (1.0 - BOUNDARY_RTOL)
    return _in_disk(w, config.punctures[j], config.rho[j])


def metric_Dj(config: PunctureConfiguration, j: int, w1, w2) -> float:
    """D pulled back to ``E*_j`` and scaled by ``rho_j``."""
    w1, w2 = complex(w1), complex(w2)
    if not 0 <= j < config.n:
        raise DomainError(f"no puncture with index {j}")
    if not (_in_estar(config, j, w1) and _in_estar(config, j, w2)):
        raise DomainError(f"points must lie in E*_{j}")
    rt, r = config.rho_tilde[j], config.rho[j]
    if j == config.n - 1:
        return r * metric_D(rt / w1, rt / w2)
    a = config.punctures[j]
    return r * metric_D((w1 - a) / rt, (w2 - a) / rt)


def segment_circle_crossing(w1, w2, center, radius: float) -> complex:
    """The point where the segment ``[w1, w2]`` crosses ``|w - center| = radius``.

    Exactly one endpoint must be inside the closed disk and the other
    outside (or on the circle, in which case that endpoint is returned).
    """
    w1, w2, center = complex(w1), complex(w2), complex(center)
    f0 = abs(w1 - center) ** 2 - radius * radius
    f1 = abs(w2 - center) ** 2 - radius * radius
    if f0 == 0:
        return w1
    if f1 == 0:
        return w2
    if (f0 < 0) == (f1 < 0):
        raise DegenerateGeometryError("segment endpoints are on the same side of the circle")
    d = w2 - w1
    u = w1 - center
    a = abs(d) ** 2
    b = 2.0 * (u.real * d.real + u.imag * d.imag)
    disc = b * b - 4.0 * a * f0
    if disc <= 1e-14 * b * b:
        raise DegenerateGeometryError("segment is tangent to the circle")
    sq = math.sqrt(disc)
    # stable roots of a t^2 + b t + f0
    q = -0.5 * (b + math.copysign(sq, b))
    roots = [q / a, f0 / q] if q != 0 else [(-b + sq) / (2 * a), (-b - sq) / (2 * a)]
    t = min(roots, key=lambda s: abs(s - min(max(s, 0.0), 1.0)))
    t = min(max(t, 0.0), 1.0)
    return w1 + t * d


def _crossing(config, j, w_in, w_out) -> complex:
    center, r = config.circle(j)
    return segment_circle_crossing(w_in, w_out, center, r)


def _angle(config, j, zeta) -> float:
    center, _ = config.circle(j)
    return cmath.phase(zeta - center)


def _ordered(config, w1, w2):
    """Fix a canonical order so both argument orders run the same computation."""
    t1, t2 = classify(config, w1), classify(config, w2)
    k1 = (t1.index if t1.index is not None else config.n, _lex(w1))
    k2 = (t2.index if t2.index is not None else config.n, _lex(w2))
    if k2 < k1:
        return w2, w1, t2, t1
    return w1, w2, t1, t2


def dist_dX(config: PunctureConfiguration, w1, w2, tol: float = 1e-10) -> float:
    """The distance d_X; boundary infima by multistart golden-section search."""
    w1, w2 = complex(w1), complex(w2)
    if w1 == w2:
        classify(config, w1)
        return 0.0
    w1, w2, t1, t2 = _ordered(config, w1, w2)
    atol = min(ANGLE_TOL, tol)
    if t1.kind == "core" and t2.kind == "core":
        return abs(w1 - w2)
    j = t1.index
    if t2.kind == "core":
        seed = _angle(config, j, _crossing(config, j, w1, w2))
        f, _ = kernels.min_one_circle(config.chart(j), w1, config.circle(j), EUCLID, w2,
                                      N_STARTS, atol, [seed])
        return f
    k = t2.index
    if j == k:
        return metric_Dj(config, j, w1, w2)
    s1 = _angle(config, j, _crossing(config, j, w1, w2))
    s2 = _angle(config, k, _crossing(config, k, w2, w1))
    f, _, _ = kernels.min_two_circles(config.chart(j), w1, config.circle(j), config.circle(k),
                                      config.chart(k), w2, N_STARTS, atol, [(s1, s2)])
    return f


def dist_eX(config: PunctureConfiguration, w1, w2) -> float:
    """Like d_X, with the boundary points fixed where the segment
    ``[w1, w2]`` crosses the circles."""
    w1, w2 = complex(w1), complex(w2)
    if w1 == w2:
        classify(config, w1)
        return 0.0
    w1, w2, t1, t2 = _ordered(config, w1, w2)
    if t1.kind == "core" and t2.kind == "core":
        return abs(w1 - w2)
    j = t1.index
    if t2.kind == "core":
        zeta = _crossing(config, j, w1, w2)
        return kernels.chart_dist(config.chart(j), w1, zeta) + abs(zeta - w2)
    k = t2.index
    if j == k:
        return metric_Dj(config, j, w1, w2)
    z1 = _crossing(config, j, w1, w2)
    z2 = _crossing(config, k, w2, w1)
    return (kernels.chart_dist(config.chart(j), w1, z1) + abs(z1 - z2)
            + kernels.chart_dist(config.chart(k), z2, w2))


# charts of C* = C minus {0}: D(w/e, .) inside the unit circle, D(1/(e w), .) outside
_CSTAR_IN = (1, 0j, E, 1.0)
_CSTAR_OUT = (2, 0j, 1.0 / E, 1.0)


def dist_cstar(w1, w2, tol: float = 1e-10) -> float:
    """The analogous distance on the twice-punctured sphere C minus {0}."""
    w1, w2 = complex(w1), complex(w2)
    for w in (w1, w2):
        if w == 0 or is_infinite(w) or cmath.isnan(w):
            raise DomainError(f"{w!r} is not a point of C minus {{0}}")
    if w1 == w2:
        return 0.0
    r1, r2 = abs(w1), abs(w2)
    if r1 <= 1.0 and r2 <= 1.0:
        return kernels.chart_dist(_CSTAR_IN, w1, w2)
    if r1 >= 1.0 and r2 >= 1.0:
        return kernels.chart_dist(_CSTAR_OUT, w1, w2)
    if r1 > 1.0:
        w1, w2 = w2, w1
    seed = cmath.phase(segment_circle_crossing(w1, w2, 0j, 1.0))
    f, _ = kernels.min_one_circle(_CSTAR_IN, w1, (0j, 1.0), _CSTAR_OUT, w2,
                                  N_STARTS, min(ANGLE_TOL, tol), [seed])
    return f


@dataclass(frozen=True)
class ComparabilityConstants:
    M1: float
    M2: float
    M0: float
    U1: float
    U2: float
    B1: float
    B2: float
    N1: float
    N2p: float
    N2pp: float
    N2: float


U2_FLOOR = 1e-12


def comparability_constants(config: PunctureConfiguration) -> ComparabilityConstants:
    """Explicit constants with ``N1 h_X <= d_X <= e_X <= N2 h_X``."""
    rho_n = config.rho[-1]
    rho_1 = config.rho[0]
    if rho_n < E * (1.0 - 1e-12):
        raise DomainError("normalised configurations have rho_n >= e")
    M1 = 2.0 * (C0 + K0 + 1.0)
    M2 = 2.0 * (C0 + 1.0)
    M0 = M1 + M2
    U1 = 2.0 * rho_n * math.exp(K0) * (C0 - K0 - 1.0 + math.log(rho_n / rho_1))
    U2 = max(6.0 * rho_n * (C0 + math.log(3.0) + math.log(rho_n)), U2_FLOOR)
    B2 = max(U1, U2)
    N1 = 2.0 * min(config.rho[:-1]) / math.pi
    B1 = M0 * rho_n * (1.0 + B2 / N1)
    N2p = B1 + B2
    N2pp = B2 + 2.0 * max(2.0 * M0 * rho_n, 4.0 * B2 / SEPARATION)
    return ComparabilityConstants(M1, M2, M0, U1, U2, B1, B2, N1, N2p, N2pp, max(N2p, N2pp))
