"""Numerical oracle for the hyperbolic metric of C minus {0, 1}.

Points of the thrice-punctured sphere are lifted to the upper half-plane
through the elliptic modular function ``lambda = Q(exp(i pi tau))``, and
distances are minimised over the orbit of the level-2 congruence group
Gamma(2). The orbit search is exhaustive inside a shrinking hyperbolic
ball, so its result is certified rather than heuristic.

Fundamental region of Gamma(2) used throughout::

    F = {-1 < Re tau <= 1, |tau + 1/2| >= 1/2, |tau - 1/2| > 1/2}

Its side pairings ``A: tau -> tau + 2`` and ``B: tau -> tau / (2 tau + 1)``
generate Gamma(2).
"""
from __future__ import annotations

import cmath
import math
import warnings
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, UncertifiedDistanceWarning
from .modular_cover import q_eval
from .punctured_disk import halfplane_lifts

AGM_MAX_ITER = 64
REDUCE_MAX_STEPS = 10_000
LIFT_ATOL = 1e-9
DENSITY_STEP = 1e-6
F_MARGIN = 1e-13


def _check_halfplane(z) -> complex:
    z = complex(z)
    if not (z.imag > 0 and math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{z!r} is not in the upper half-plane")
    return z


def _arth_ratio(num2: float, gap: float, den2: float) -> float:
    # arth sqrt(num2/den2) where gap = den2 - num2 is supplied exactly
    x = math.sqrt(num2 / den2)
    return math.log1p(x) - 0.5 * math.log(gap / den2)


def hyp_dist_halfplane(z1, z2) -> float:
    """``arth |(z1 - z2) / (z1 - conj z2)|``."""
    z1 = _check_halfplane(z1)
    z2 = _check_halfplane(z2)
    return _hdist(z1, z2)


def _hdist(z1: complex, z2: complex) -> float:
    num2 = abs(z1 - z2) ** 2
    den2 = abs(z1 - z2.conjugate()) ** 2
    return _arth_ratio(num2, 4.0 * z1.imag * z2.imag, den2)


def elliptic_K(k2, complement=None) -> complex:
    """Complete elliptic integral of the first kind as a function of the
    parameter ``m = k^2``, by the arithmetic-geometric mean.

    At each step the square root closer to the running arithmetic mean is
    taken, which gives the principal branch on C minus [1, inf).
    ``complement`` may supply ``1 - m`` when it is known more accurately
    than the difference (m close to 1).
    """
    m = complex(k2)
    if m.imag == 0 and m.real >= 1:
        raise DomainError(f"K(m) has a branch cut on [1, inf), got {m!r}")
    a = 1.0 + 0j
    b = cmath.sqrt(1.0 - m if complement is None else complex(complement))
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= 1e-15 * abs(a):
            return math.pi / (2.0 * a)
        a, b = 0.5 * (a + b), cmath.sqrt(a * b)
        if abs(a - b) > abs(a + b):
            b = -b
    raise NumericError(f"AGM did not converge for m = {m!r}")


@dataclass(frozen=True)
class GammaTwoElement:
    """Integer matrix ``[[a, b], [c, d]]`` acting as a Moebius map."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError("determinant must be 1")
        if self.a % 2 != 1 or self.d % 2 != 1 or self.b % 2 or self.c % 2:
            raise DomainError("matrix is not congruent to the identity mod 2")

    def __matmul__(self, other: GammaTwoElement) -> GammaTwoElement:
        return GammaTwoElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> GammaTwoElement:
        return GammaTwoElement(self.d, -self.b, -self.c, self.a)

    def apply(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def key(self) -> tuple[int, int, int, int]:
        """Representative modulo the sign of the matrix."""
        t = (self.a, self.b, self.c, self.d)
        if (self.c, self.d) < (0, 0):
            t = tuple(-v for v in t)
        return t


IDENTITY = GammaTwoElement(1, 0, 0, 1)
GEN_A = GammaTwoElement(1, 2, 0, 1)
GEN_B = GammaTwoElement(1, 0, 2, 1)
GENERATORS = (GEN_A, GEN_A.inverse(), GEN_B, GEN_B.inverse())


def modular_lambda(tau) -> complex:
    """``lambda(tau) = Q(exp(i pi tau))``.

    ``tau`` is first moved into ``|Re| <= 1/2, |tau| >= 1`` using
    ``lambda(tau + 1) = lambda / (lambda - 1)`` and
    ``lambda(-1/tau) = 1 - lambda``, so the series is summed at
    ``|q| <= exp(-pi sqrt(3)/2)``. The pair ``(lambda, 1 - lambda)`` is
    carried through the inverse steps, which then never cancel.
    """
    t = _check_halfplane(tau)
    ops = []
    for _ in range(REDUCE_MAX_STEPS):
        n = round(t.real)
        if n:
            t -= n
            if n % 2:
                ops.append("T")
        if abs(t) < 1.0:
            t = -1.0 / t
            ops.append("S")
        else:
            break
    else:
        raise NumericError(f"modular reduction did not terminate for {tau!r}")
    lam = q_eval(cmath.exp(1j * math.pi * t))
    comp = 1.0 - lam
    for op in reversed(ops):
        if op == "S":
            lam, comp = comp, lam
        else:
            lam, comp = -lam / comp, 1.0 / comp
    return lam


def reduce_fundamental(tau) -> tuple[complex, GammaTwoElement]:
    """Move ``tau`` into F; returns ``(tau', g)`` with ``g.apply(tau) == tau'``."""
    t = _check_halfplane(tau)
    g = IDENTITY
    for _ in range(REDUCE_MAX_STEPS):
        if not -1.0 < t.real <= 1.0:
            k = math.ceil((t.real - 1.0) / 2.0)
            t = t - 2 * k
            g = GammaTwoElement(1, -2 * k, 0, 1) @ g
            if not -1.0 < t.real <= 1.0:
                # t.real landed on -1 through rounding
                t = t + 2
                g = GEN_A @ g
        if abs(t - 0.5) <= 0.5:
            t = t / (1.0 - 2.0 * t)
            g = GEN_B.inverse() @ g
        elif abs(t + 0.5) < 0.5 - F_MARGIN:
            # margin: B and its inverse swap the two circles, so rounding on
            # the boundary would otherwise cycle
            t = t / (2.0 * t + 1.0)
            g = GEN_B @ g
        else:
            return t, g
    raise NumericError(f"reduction into the fundamental region did not terminate for {tau!r}")


def _check_c01(w) -> complex:
    w = complex(w)
    if cmath.isinf(w) or cmath.isnan(w) or w == 0 or w == 1:
        raise DomainError(f"{w!r} is not a point of C minus {{0, 1}}")
    return w


def _principal_lift(m: complex, complement: complex) -> complex:
    # complement = 1 - m, passed separately to avoid cancellation near m = 1
    return 1j * elliptic_K(complement, m) / elliptic_K(m, complement)


def _lift_candidates(w: complex):
    # principal branch, then routes through lambda(tau+1) = f(lambda),
    # f(x) = x/(x-1), and lambda(-1/tau) = 1 - lambda for inputs on the cuts
    yield lambda: _principal_lift(w, 1.0 - w)
    yield lambda: _principal_lift(w / (w - 1.0), -1.0 / (w - 1.0)) + 1.0
    yield lambda: -1.0 / _principal_lift(1.0 - w, w)
    yield lambda: -1.0 / (_principal_lift((w - 1.0) / w, 1.0 / w) + 1.0)


def lift(w) -> complex:
    """A point of F whose image under ``lambda`` is ``w``."""
    w = _check_c01(w)
    scale = max(1.0, abs(w))
    tried = []
    for make in _lift_candidates(w):
        try:
            tau0 = make()
        except (DomainError, ZeroDivisionError):
            continue
        for tau in (tau0, -tau0.conjugate(), tau0 + 2.0, tau0 - 2.0):
            if not tau.imag > 0:
                continue
            tau, _ = reduce_fundamental(tau)
            err = abs(modular_lambda(tau) - w)
            if err <= LIFT_ATOL * scale:
                return tau
            tried.append(err)
    raise NumericError(f"could not lift {w!r}; forward errors {tried}")


# The six Moebius self-maps of C minus {0, 1} (all hyperbolic isometries),
# as (map, inverse, derivative).
ANHARMONIC = (
    (lambda w: w, lambda w: w, lambda w: 1.0),
    (lambda w: 1.0 - w, lambda w: 1.0 - w, lambda w: -1.0),
    (lambda w: 1.0 / w, lambda w: 1.0 / w, lambda w: -1.0 / (w * w)),
    (lambda w: w / (w - 1.0), lambda w: w / (w - 1.0), lambda w: -1.0 / (w - 1.0) ** 2),
    (lambda w: 1.0 / (1.0 - w), lambda w: (w - 1.0) / w, lambda w: 1.0 / (1.0 - w) ** 2),
    (lambda w: (w - 1.0) / w, lambda w: 1.0 / (1.0 - w), lambda w: 1.0 / (w * w)),
)


def _best_chart(w: complex):
    """Anharmonic map index and lift maximising the height of the lift.

    The highest of the six lifts lies in the modular-group fundamental
    domain, where lambda has O(1) derivatives.
    """
    best = None
    for idx, (g, _, _) in enumerate(ANHARMONIC):
        tau = lift(g(w))
        if best is None or tau.imag > best[1].imag:
            best = (idx, tau)
    return best


def _side_distance_lower_bound(p: complex) -> float:
    """Lower bound on the distance from ``p`` to F (exact per violated side)."""
    x, y = p.real, p.imag
    lb = 0.0
    if x > 1.0:
        lb = max(lb, 0.5 * math.asinh((x - 1.0) / y))
    if x < -1.0:
        lb = max(lb, 0.5 * math.asinh((-1.0 - x) / y))
    for c in (-0.5, 0.5):
        s = (x - c) ** 2 + y * y
        if s < 0.25:
            lb = max(lb, 0.5 * math.asinh((0.25 - s) / y))
    return lb


@dataclass(frozen=True)
class OrbitResult:
    distance: float
    certified: bool
    gamma: GammaTwoElement
    tiles: int
    chart: int
    zeta1: complex
    zeta2: complex

    @property
    def target(self) -> complex:
        """The orbit point of ``zeta2`` nearest to ``zeta1``."""
        return self.gamma.apply(self.zeta2)


def thrice_punctured_distance(w1, w2, tol: float = 1e-12, max_tiles: int = 200_000) -> OrbitResult:
    """Hyperbolic distance of C minus {0, 1} with its certificate.

    Both points are moved by the anharmonic map that puts the lift of
    ``w1`` highest, then tiles ``gF`` are visited breadth-first from F; a
    tile is entered only if a lower bound on its distance from the lift of
    ``w1`` is below ``best - tol``. Exhausting the queue certifies the
    minimum to within ``tol``.
    """
    w1 = _check_c01(w1)
    w2 = _check_c01(w2)
    if not tol > 0:
        raise DomainError("tol must be positive")
    idx, zeta1 = _best_chart(w1)
    zeta2 = lift(ANHARMONIC[idx][0](w2))
    best, best_g = _hdist(zeta1, zeta2), IDENTITY
    seen = {IDENTITY.key()}
    queue = deque([IDENTITY])
    tiles = 1
    certified = True
    while queue:
        g = queue.popleft()
        for s in GENERATORS:
            h = g @ s
            k = h.key()
            if k in seen:
                continue
            seen.add(k)
            p = h.inverse().apply(zeta1)
            if _side_distance_lower_bound(p) > best - tol:
                continue
            tiles += 1
            d = _hdist(p, zeta2)
            if d < best:
                best, best_g = d, h
            queue.append(h)
        if tiles > max_tiles:
            certified = False
            break
    return OrbitResult(best, certified, best_g, tiles, idx, zeta1, zeta2)


def hyp_dist_thrice_punctured(w1, w2, tol: float = 1e-12) -> float:
    res = thrice_punctured_distance(w1, w2, tol)
    if not res.certified:
        warnings.warn(
            f"orbit search hit its tile cap; {res.distance!r} is an upper bound only",
            UncertifiedDistanceWarning,
            stacklevel=2,
        )
    return res.distance


def hyp_density_thrice_punctured(w) -> float:
    """Density from ``lambda_X(lambda(tau)) |lambda'(tau)| = 1 / (2 Im tau)``,
    with the derivative by central differences."""
    w = _check_c01(w)
    idx, tau = _best_chart(w)
    h = DENSITY_STEP
    deriv = (modular_lambda(tau + h) - modular_lambda(tau - h)) / (2.0 * h)
    rho = 1.0 / (2.0 * tau.imag * abs(deriv))
    return rho * abs(ANHARMONIC[idx][2](w))


def halfplane_geodesic(p, q, n: int = 200) -> np.ndarray:
    """``n + 1`` points along the half-plane geodesic from ``p`` to ``q``."""
    p = _check_halfplane(p)
    q = _check_halfplane(q)
    t = np.linspace(0.0, 1.0, n + 1)
    if abs(p.real - q.real) <= 1e-14 * max(1.0, abs(p), abs(q)):
        heights = p.imag * (q.imag / p.imag) ** t
        xs = p.real + (q.real - p.real) * t
        return xs + 1j * heights
    c = (abs(q) ** 2 - abs(p) ** 2) / (2.0 * (q.real - p.real))
    r = abs(p - c)
    a0 = cmath.phase(p - c)
    a1 = cmath.phase(q - c)
    return c + r * np.exp(1j * (a0 + (a1 - a0) * t))


def punctured_disk_geodesic(z1, z2, n: int = 200) -> np.ndarray:
    """Points along the shortest geodesic of the punctured unit disk."""
    zeta1, zeta2 = halfplane_lifts(z1, z2)
    return np.exp(1j * np.pi * halfplane_geodesic(zeta1, zeta2, n))


def thrice_punctured_geodesic(w1, w2, n: int = 200, tol: float = 1e-12) -> np.ndarray:
    """Points along a shortest geodesic of C minus {0, 1}."""
    res = thrice_punctured_distance(w1, w2, tol)
    inv = ANHARMONIC[res.chart][1]
    path = halfplane_geodesic(res.zeta1, res.target, n)
    return np.array([inv(modular_lambda(z)) for z in path])
