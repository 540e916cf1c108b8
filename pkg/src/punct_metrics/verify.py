"""Seeded property checks, grouped into suites, with a JSON report.

Every check reduces its samples to a *slack*: how far each sample is from
violating the property at the check's tolerance. A check passes iff the
worst (smallest) slack is non-negative. Reductions are min/argmin over a
fixed sample order, so thread scheduling cannot change a report.

Sample counts: checks scale with ``samples`` in three tiers, ``samples``
itself for closed-form kernels, ``samples // 10`` for the minimiser-backed
distance d_X and ``samples // 100`` for checks that call the orbit oracle
(each at least 1).
"""
from __future__ import annotations

import csv
import math
import os
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels
from .halfplane_oracle import (
    hyp_density_thrice_punctured,
    hyp_dist_thrice_punctured,
    punctured_disk_geodesic,
    thrice_punctured_geodesic,
)
from .modular_cover import (
    C0,
    K0,
    RHO_MAX,
    UNIVALENCE_RADIUS,
    hempel_density_lower,
    k_of_rho,
    q_eval,
    q_growth_bounds,
    q_product,
    q_taylor_coefficients,
)
from .punctured_disk import geodesic_annulus, hyp_dist_punctured_disk, metric_D
from .sampling import sample_config_points, sample_disk, sample_estar
from .sphere_metrics import (
    INF,
    SEPARATION,
    classify,
    comparability_constants,
    dist_cstar,
    dist_dX,
    dist_eX,
    metric_Dj,
    normalize,
    segment_circle_crossing,
)

SCHEMA = 1
CLOSED_FORM_TOL = 1e-12
ORACLE_TOL = 1e-6
ORACLE_DIST_TOL = 1e-8
DX_TOL = 1e-10
FOUR_PUNCTURES = (0, 1, complex(-1.0, 1.5), INF)

SUITE_NAMES = ("disk", "cover", "oracle", "sphere")


@dataclass
class CheckRecord:
    id: str
    anchor: str
    samples: int
    tolerance: float
    worst_slack: float
    passed: bool
    offenders: list = field(default_factory=list, repr=False)

    def as_json(self) -> dict:
        d = asdict(self)
        d.pop("offenders")
        return d


@dataclass
class VerificationReport:
    suite: str
    seed: int
    samples: int
    checks: list
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "tolerances": {
                "closed_form": CLOSED_FORM_TOL,
                "oracle": ORACLE_TOL,
                "oracle_distance": ORACLE_DIST_TOL,
                "minimizer": DX_TOL,
            },
            "passed": self.passed,
            "checks": [c.as_json() for c in self.checks],
            "wall_time": self.wall_time,
        }


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("PUNCT_METRICS_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items) -> list:
    items = list(items)
    workers = _workers()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _c(x) -> str:
    x = np.asarray(x)
    return repr(complex(x)) if x.ndim == 0 else repr([complex(v) for v in x])


def _record(cid, anchor, slacks, tol, describe=None) -> CheckRecord:
    slacks = np.asarray(slacks, dtype=float).reshape(-1)
    if slacks.size == 0:
        return CheckRecord(cid, anchor, 0, tol, math.inf, True)
    # NaN means the computation itself broke: count as a violation
    slacks = np.where(np.isnan(slacks), -math.inf, slacks)
    order = np.argsort(slacks, kind="stable")[:10]
    offenders = [(float(slacks[i]), describe(i) if describe else str(i)) for i in order]
    worst = float(slacks[order[0]])
    return CheckRecord(cid, anchor, int(slacks.size), tol, worst, worst >= 0.0, offenders)


_CHECKS: dict[str, list] = {name: [] for name in SUITE_NAMES}


def check(suite: str, cid: str, anchor: str, tier: int = 1):
    def register(fn):
        _CHECKS[suite].append((cid, anchor, tier, fn))
        return fn
    return register


def _rng(seed: int, cid: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(cid.encode())])


def _count(samples: int, tier: int) -> int:
    return max(1, samples // tier)


# ---------------------------------------------------------------- disk

@check("disk", "disk.D_metric_axioms", "D is a distance on 0<|z|<=1/e")
def _disk_axioms(rng, n, cid, anchor):
    a, b, c = (sample_estar(rng, n) for _ in range(3))
    ab = kernels.D_batch(a, b)
    ba = kernels.D_batch(b, a)
    ac = kernels.D_batch(a, c)
    cb = kernels.D_batch(c, b)
    aa = kernels.D_batch(a, a)
    tol = CLOSED_FORM_TOL
    slack = np.minimum.reduce([
        ac + cb - ab + tol,
        tol - np.abs(ab - ba),
        ab + tol,
        tol - np.abs(aa),
    ])
    return _record(cid, anchor, slack, tol, lambda i: f"a={_c(a[i])} b={_c(b[i])} c={_c(c[i])}")


@check("disk", "disk.D_sandwich", "(2/pi) D' <= D <= D' on E*")
def _disk_sandwich(rng, n, cid, anchor):
    a, b = sample_estar(rng, n), sample_estar(rng, n)
    d = kernels.D_batch(a, b)
    dp = kernels.D_prime_batch(a, b)
    tol = CLOSED_FORM_TOL
    slack = np.minimum(d - 2.0 / math.pi * dp + tol, dp - d + tol)
    return _record(cid, anchor, slack, tol, lambda i: f"a={_c(a[i])} b={_c(b[i])}")


@check("disk", "disk.lower_comparability", "(4/pi) h_D* <= D on E*")
def _disk_lower(rng, n, cid, anchor):
    a, b = sample_estar(rng, n), sample_estar(rng, n)
    slack = kernels.D_batch(a, b) - 4.0 / math.pi * kernels.hyp_dstar_batch(a, b) + CLOSED_FORM_TOL
    return _record(cid, anchor, slack, CLOSED_FORM_TOL, lambda i: f"a={_c(a[i])} b={_c(b[i])}")


@check("disk", "disk.strong_bound", "2 h_D* <= D' on E*")
def _disk_strong(rng, n, cid, anchor):
    a, b = sample_estar(rng, n), sample_estar(rng, n)
    slack = kernels.D_prime_batch(a, b) - 2.0 * kernels.hyp_dstar_batch(a, b) + CLOSED_FORM_TOL
    return _record(cid, anchor, slack, CLOSED_FORM_TOL, lambda i: f"a={_c(a[i])} b={_c(b[i])}")


def sharpness_ratio(tau: float) -> float:
    z = math.exp(-tau)
    return hyp_dist_punctured_disk(z, -z) / kernels.D(complex(z), complex(-z))


@check("disk", "disk.sharpness", "h_D*/D at (e^-t, -e^-t) increases to pi/4")
def _disk_sharp(rng, n, cid, anchor):
    taus = np.geomspace(1.0, 100.0, 200)
    ratios = np.array([sharpness_ratio(t) for t in taus])
    closed = np.array([t / 2 * math.atanh(math.pi / math.sqrt(math.pi ** 2 + 4 * t * t)) for t in taus])
    slack = np.concatenate([
        np.diff(ratios),
        CLOSED_FORM_TOL - np.abs(ratios - closed),
        [1e-4 - abs(sharpness_ratio(100.0) - math.pi / 4)],
    ])
    return _record(cid, anchor, slack, 1e-4)


@check("disk", "disk.geodesic_annulus", "geodesics of D* stay in e^(-pi delta)|z1| <= |z| <= |z2|", tier=10)
def _disk_geodesics(rng, n, cid, anchor):
    a = sample_estar(rng, n, (0.05, 6.0))
    b = sample_estar(rng, n, (0.05, 6.0))
    tol = 1e-9

    def one(i):
        lo, hi = geodesic_annulus(a[i], b[i])
        r = np.abs(punctured_disk_geodesic(a[i], b[i]))
        return min(np.min(r - lo), np.min(hi - r)) + tol

    return _record(cid, anchor, _pmap(one, range(n)), tol, lambda i: f"a={_c(a[i])} b={_c(b[i])}")


@check("disk", "disk.worked_values", "closed-form values of D, D', h_D*")
def _disk_values(rng, n, cid, anchor):
    e1 = math.exp(-1)
    pairs = [
        (metric_D(e1, -e1), 2.0),
        (metric_D(math.exp(-2), e1), math.log(2)),
        (metric_D(e1, e1 * 1j), math.e * abs(e1 - e1 * 1j)),
        (hyp_dist_punctured_disk(e1, math.exp(-2)), 0.5 * math.log(2)),
    ]
    return _record(cid, anchor, [CLOSED_FORM_TOL - abs(x - y) for x, y in pairs], CLOSED_FORM_TOL)


# ---------------------------------------------------------------- cover

@check("cover", "cover.q_special_value", "Q(ie^{-pi/2})=2")
def _cover_special(rng, n, cid, anchor):
    z = 1j * UNIVALENCE_RADIUS
    slack = [1e-9 - abs(q_eval(z) - 2.0), 1e-10 - abs(q_eval(z) - q_eval(-z))]
    return _record(cid, anchor, slack, 1e-9)


def _small_points(rng, n, rmax):
    r = rmax * np.sqrt(rng.uniform(0.0, 1.0, n))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))


@check("cover", "cover.representations", "theta quotient and product forms of Q agree", tier=100)
def _cover_repr(rng, n, cid, anchor):
    z = _small_points(rng, n, 0.5)
    slack = [1e-10 - abs(q_eval(x) - q_product(x)) for x in z]
    return _record(cid, anchor, slack, 1e-10, lambda i: f"z={_c(z[i])}")


@check("cover", "cover.functional_identity", "Q(-z)=Q(z)/(Q(z)-1)", tier=100)
def _cover_identity(rng, n, cid, anchor):
    z = _small_points(rng, n, 0.5)
    slack = []
    for x in z:
        # Q/(Q - 1) is ill-conditioned where Q is near 1: tolerance scales with |Q(-z)|
        q, lhs = q_eval(x), q_eval(-x)
        slack.append(1e-10 * max(1.0, abs(lhs)) - abs(lhs - q / (q - 1.0)))
    return _record(cid, anchor, slack, 1e-10, lambda i: f"z={_c(z[i])}")


@check("cover", "cover.taylor", "Q(z)=16(z-8z^2+44z^3-192z^4+718z^5-...)")
def _cover_taylor(rng, n, cid, anchor):
    expected = [16, -128, 704, -3072, 11488]
    got = q_taylor_coefficients(5)
    return _record(cid, anchor, [1e-6 - abs(g / e - 1) for g, e in zip(got, expected)], 1e-6)


@check("cover", "cover.univalence", "Q is univalent on |z|<e^{-pi/2}", tier=100)
def _cover_univalent(rng, n, cid, anchor):
    z1 = _small_points(rng, n, UNIVALENCE_RADIUS)
    z2 = _small_points(rng, n, UNIVALENCE_RADIUS)
    keep = np.abs(z1 - z2) > 1e-6
    slack = [abs(q_eval(a) - q_eval(b)) - 1e-12 for a, b in zip(z1[keep], z2[keep])]
    return _record(cid, anchor, slack, 1e-12)


@check("cover", "cover.growth_envelope", "16r/(1+re^{pi/2})^2 <= |Q| <= 16r/(1-re^{pi/2})^2", tier=10)
def _cover_growth(rng, n, cid, anchor):
    z = _small_points(rng, n, UNIVALENCE_RADIUS)
    slack = []
    for x in z:
        lo, hi = q_growth_bounds(abs(x))
        q = abs(q_eval(x))
        slack.append(min(q - lo, hi - q) + CLOSED_FORM_TOL * hi)
    return _record(cid, anchor, slack, CLOSED_FORM_TOL, lambda i: f"z={_c(z[i])}")


@check("cover", "cover.hempel_monotone", "Hempel bound decreases in |z|")
def _cover_hempel(rng, n, cid, anchor):
    r = np.geomspace(1e-6, 1e6, 2000)
    vals = np.array([hempel_density_lower(x) for x in r])
    return _record(cid, anchor, -np.diff(vals), 0.0)


@check("cover", "cover.K_monotone", "K(rho) increases in rho")
def _cover_k(rng, n, cid, anchor):
    rho = np.linspace(1e-4, RHO_MAX * (1 - 1e-6), 2000)
    vals = np.array([k_of_rho(x).K for x in rho])
    return _record(cid, anchor, np.concatenate([np.diff(vals), vals]), 0.0)


REFERENCE_CONSTANTS = {
    "K0": (0.846666, 1e-5),
    "eK0": (2.33186, 1e-4),
    "r0": (0.0301441, 1e-6),
    "mu0": (0.145007, 1e-5),
    "delta0": (0.107007, 1e-5),
    "eta0": (1.11465, 1e-4),
    "C0": (4.37688, 1e-5),
    "M0": (23.2008, 1e-3),
}


def computed_constants() -> dict:
    c = k_of_rho(math.exp(-1))
    return {
        "K0": c.K,
        "eK0": math.exp(c.K),
        "r0": c.r,
        "mu0": c.mu,
        "delta0": c.delta,
        "eta0": c.eta1,
        "C0": C0,
        "M0": 4 * C0 + 4 + 2 * K0,
    }


@check("cover", "cover.constants", "K0, e^K0, r0, mu0, delta0, eta0, C0, M0")
def _cover_constants(rng, n, cid, anchor):
    got = computed_constants()
    names = list(REFERENCE_CONSTANTS)
    slack = [REFERENCE_CONSTANTS[k][1] - abs(got[k] - REFERENCE_CONSTANTS[k][0]) for k in names]
    return _record(cid, anchor, slack, 0.0, lambda i: names[i])


# ---------------------------------------------------------------- oracle

_C01, _ = normalize([0, 1, INF])


@check("oracle", "oracle.metric_axioms", "h_C01 is a distance", tier=100)
def _oracle_axioms(rng, n, cid, anchor):
    pts = sample_config_points(rng, _C01, 3 * n).reshape(3, n)
    tol = 2 * ORACLE_DIST_TOL

    def one(i):
        a, b, c = pts[:, i]
        ab = hyp_dist_thrice_punctured(a, b, ORACLE_DIST_TOL)
        ba = hyp_dist_thrice_punctured(b, a, ORACLE_DIST_TOL)
        ac = hyp_dist_thrice_punctured(a, c, ORACLE_DIST_TOL)
        cb = hyp_dist_thrice_punctured(c, b, ORACLE_DIST_TOL)
        return min(ac + cb - ab + tol, tol - abs(ab - ba))

    return _record(cid, anchor, _pmap(one, range(n)), tol, lambda i: f"{_c(pts[:, i])}")


@check("oracle", "oracle.isometries", "w->1-w and w->1/w are isometries of C01", tier=100)
def _oracle_iso(rng, n, cid, anchor):
    pts = sample_config_points(rng, _C01, 2 * n).reshape(2, n)
    tol = ORACLE_DIST_TOL

    def one(i):
        a, b = pts[:, i]
        d = hyp_dist_thrice_punctured(a, b, tol)
        d1 = hyp_dist_thrice_punctured(1 - a, 1 - b, tol)
        d2 = hyp_dist_thrice_punctured(1 / a, 1 / b, tol)
        return tol - max(abs(d - d1), abs(d - d2))

    return _record(cid, anchor, _pmap(one, range(n)), tol, lambda i: f"{_c(pts[:, i])}")


@check("oracle", "oracle.density_hempel", "1/(2|z|(C0+|log|z||)) <= lambda(z)", tier=100)
def _oracle_hempel(rng, n, cid, anchor):
    w = sample_config_points(rng, _C01, n)
    slack = _pmap(lambda x: hyp_density_thrice_punctured(x) - hempel_density_lower(x) + 1e-8, w)
    return _record(cid, anchor, slack, 1e-8, lambda i: f"w={_c(w[i])}")


@check("oracle", "oracle.density_minus_one", "C0=1/2lambda(-1)")
def _oracle_minus_one(rng, n, cid, anchor):
    return _record(cid, anchor, [ORACLE_TOL - abs(hyp_density_thrice_punctured(-1) - 1 / (2 * C0))], ORACLE_TOL)


@check("oracle", "oracle.disk_monotonicity", "h_C01 <= h_D* on the punctured disk", tier=100)
def _oracle_mono(rng, n, cid, anchor):
    a = sample_estar(rng, n, (0.1, 6.0))
    b = sample_estar(rng, n, (0.1, 6.0))
    slack = _pmap(lambda i: hyp_dist_punctured_disk(a[i], b[i])
                  - hyp_dist_thrice_punctured(a[i], b[i], ORACLE_DIST_TOL) + ORACLE_DIST_TOL, range(n))
    return _record(cid, anchor, slack, ORACLE_DIST_TOL, lambda i: f"a={_c(a[i])} b={_c(b[i])}")


@check("oracle", "oracle.D_upper", "D <= M0 h_C01 on E*", tier=100)
def _oracle_upper(rng, n, cid, anchor):
    a, b = sample_estar(rng, n), sample_estar(rng, n)
    M0 = comparability_constants(_C01).M0
    slack = _pmap(lambda i: M0 * hyp_dist_thrice_punctured(a[i], b[i], ORACLE_DIST_TOL)
                  - metric_D(a[i], b[i]) + ORACLE_TOL, range(n))
    return _record(cid, anchor, slack, ORACLE_TOL, lambda i: f"a={_c(a[i])} b={_c(b[i])}")


def containment_slack(w1, w2, rho, tol=ORACLE_TOL) -> float:
    """Slack of min|w_i| e^{-K(rho)} <= |w| <= max|w_i| along a traced geodesic."""
    K = k_of_rho(rho).K
    r = np.abs(thrice_punctured_geodesic(w1, w2))
    lo = min(abs(w1), abs(w2)) * math.exp(-K)
    hi = max(abs(w1), abs(w2))
    return float(min(np.min(r - lo), np.min(hi - r)) + tol)


@check("oracle", "oracle.geodesic_annulus", "C01 geodesics between |w|<=rho stay in min|w_i|e^{-K} <= |w|", tier=100)
def _oracle_contain(rng, n, cid, anchor):
    rho = rng.uniform(0.05, RHO_MAX - 0.01, n)
    w1 = np.array([sample_disk(rng, 1, r)[0] for r in rho])
    w2 = np.array([sample_disk(rng, 1, r)[0] for r in rho])
    slack = _pmap(lambda i: containment_slack(w1[i], w2[i], rho[i]), range(n))
    return _record(cid, anchor, slack, ORACLE_TOL, lambda i: f"w1={_c(w1[i])} w2={_c(w2[i])} rho={float(rho[i])!r}")


@check("oracle", "oracle.disk_convexity", "punctured disks about 0 inside C01 are hyperbolically convex", tier=100)
def _oracle_convex(rng, n, cid, anchor):
    radius = rng.uniform(0.05, 1.0, n)
    w1 = np.array([sample_disk(rng, 1, r)[0] for r in radius])
    w2 = np.array([sample_disk(rng, 1, r)[0] for r in radius])

    def one(i):
        r = np.abs(thrice_punctured_geodesic(w1[i], w2[i]))
        return float(radius[i] - np.max(r) + ORACLE_TOL)

    return _record(cid, anchor, _pmap(one, range(n)), ORACLE_TOL, lambda i: f"w1={_c(w1[i])} w2={_c(w2[i])}")


# ---------------------------------------------------------------- sphere

_FOUR, _ = normalize(FOUR_PUNCTURES)
CONFIGS = {"C01": _C01, "four": _FOUR}


def _dx_triangle_slacks(rng, config, n):
    pts = sample_config_points(rng, config, 3 * n).reshape(3, n)
    tol = 3 * DX_TOL

    def one(i):
        a, b, c = pts[:, i]
        ab = dist_dX(config, a, b, DX_TOL)
        ba = dist_dX(config, b, a, DX_TOL)
        ac = dist_dX(config, a, c, DX_TOL)
        cb = dist_dX(config, c, b, DX_TOL)
        return ac + cb - ab + tol if ab == ba else -math.inf

    return pts, _pmap(one, range(n))


@check("sphere", "sphere.dX_metric_axioms", "d_X is a distance on X", tier=10)
def _sphere_triangle(rng, n, cid, anchor):
    slack, desc = [], []
    for name, config in CONFIGS.items():
        pts, s = _dx_triangle_slacks(rng, config, n)
        slack += s
        desc += [f"{name}: {_c(pts[:, i])}" for i in range(n)]
    return _record(cid, anchor, slack, 3 * DX_TOL, lambda i: desc[i])


@check("sphere", "sphere.comparability", "N1 h_X <= d_X <= e_X <= N2 h_X", tier=100)
def _sphere_sandwich(rng, n, cid, anchor):
    consts = comparability_constants(_C01)
    pts = sample_config_points(rng, _C01, 2 * n).reshape(2, n)
    tol = ORACLE_TOL + ORACLE_DIST_TOL

    def one(i):
        a, b = pts[:, i]
        h = hyp_dist_thrice_punctured(a, b, ORACLE_DIST_TOL)
        d = dist_dX(_C01, a, b, DX_TOL)
        e = dist_eX(_C01, a, b)
        return min(d - consts.N1 * h, e - d, consts.N2 * h - e) + tol

    return _record(cid, anchor, _pmap(one, range(n)), tol, lambda i: f"{_c(pts[:, i])}")


@check("sphere", "sphere.case_consistency", "d_X cases agree on the boundary of E_j", tier=10)
def _sphere_cases(rng, n, cid, anchor):
    slack, desc = [], []
    for config in CONFIGS.values():
        for i in range(n):
            j = int(rng.integers(0, config.n))
            if j == config.n - 1:
                w1 = config.rho_tilde[j] / sample_estar(rng, 1)[0]
            else:
                w1 = config.punctures[j] + config.rho_tilde[j] * sample_estar(rng, 1)[0]
            center, r = config.circle(j)
            phi = rng.uniform(0, 2 * math.pi)
            zeta = center + r * complex(math.cos(phi), math.sin(phi))
            base = metric_Dj(config, j, w1, zeta)
            for eps in (1e-3, 1e-5, 1e-7):
                w2 = center + r * (1 - eps if j == config.n - 1 else 1 + eps) * complex(math.cos(phi), math.sin(phi))
                if classify(config, w2).kind != "core":
                    continue
                gap = abs(w2 - zeta)
                slack.append(gap + DX_TOL - abs(dist_dX(config, w1, w2, DX_TOL) - base))
                desc.append(f"j={j} w1={_c(w1)} w2={_c(w2)}")
    return _record(cid, anchor, slack, DX_TOL, lambda i: desc[i])


@check("sphere", "sphere.chart_covariance", "d_X, e_X unchanged under re-normalising a shifted copy", tier=100)
def _sphere_cov(rng, n, cid, anchor):
    slack, desc = [], []
    for config in CONFIGS.values():
        shift = complex(*rng.normal(0, 3, 2))
        shifted = [p + shift for p in config.punctures[:-1]] + [INF]
        config2, mob = normalize(shifted)
        pts = sample_config_points(rng, config, 2 * n).reshape(2, n)
        for a, b in pts.T:
            a2, b2 = mob(a + shift), mob(b + shift)
            tol = 1e-9 * (1 + abs(a) + abs(b))
            diff = max(abs(dist_dX(config, a, b, DX_TOL) - dist_dX(config2, a2, b2, DX_TOL)),
                       abs(dist_eX(config, a, b) - dist_eX(config2, a2, b2)))
            slack.append(tol - diff)
            desc.append(f"shift={shift!r} a={_c(a)} b={_c(b)}")
    return _record(cid, anchor, slack, 1e-9, lambda i: desc[i])


@check("sphere", "sphere.eX_through_third_disk", "e_X finite when the segment meets another E_l", tier=10)
def _sphere_degenerate(rng, n, cid, anchor):
    # w1 near 0, w2 near infinity, segment aimed straight through the puncture 1
    config = _C01
    slack, desc = [], []
    for z in sample_estar(rng, n):
        w1 = complex(z)
        t = (config.rho[-1] * 1.5) / abs(1 - w1)
        w2 = w1 + t * (1 - w1)
        z1 = segment_circle_crossing(w1, w2, 0j, config.rho[0])
        z2 = segment_circle_crossing(w2, w1, 0j, config.rho[-1])
        expected = metric_Dj(config, 0, w1, z1) + abs(z1 - z2) + metric_Dj(config, 2, z2, w2)
        got = dist_eX(config, w1, w2)
        ok = math.isfinite(got)
        slack.append(CLOSED_FORM_TOL * (1 + expected) - abs(got - expected) if ok else -math.inf)
        desc.append(f"w1={w1!r} w2={w2!r}")
    return _record(cid, anchor, slack, CLOSED_FORM_TOL, lambda i: desc[i])


@check("sphere", "sphere.cstar_metric_axioms", "d_C* is a distance on C*", tier=10)
def _sphere_cstar(rng, n, cid, anchor):
    pts = np.exp(rng.uniform(-6, 6, (3, n)) + 2j * np.pi * rng.uniform(0, 1, (3, n)))
    tol = 3 * DX_TOL

    def one(i):
        a, b, c = pts[:, i]
        ab = dist_cstar(a, b, DX_TOL)
        return min(dist_cstar(a, c, DX_TOL) + dist_cstar(c, b, DX_TOL) - ab + tol,
                   tol - abs(ab - dist_cstar(b, a, DX_TOL)))

    return _record(cid, anchor, _pmap(one, range(n)), tol, lambda i: f"{_c(pts[:, i])}")


@check("sphere", "sphere.config_invariants", "E_j disjoint, dist(E_j,E_k) >= (1-1/e-1/e^2) rho_j")
def _sphere_invariants(rng, n, cid, anchor):
    slack, desc = [], []
    for name, config in CONFIGS.items():
        m = config.n - 1
        for j in range(m):
            for k in range(m):
                if j != k:
                    gap = abs(config.punctures[j] - config.punctures[k]) - config.rho[j] - config.rho[k]
                    slack.append(gap - SEPARATION * config.rho[j])
                    desc.append(f"{name}: E_{j} vs E_{k}")
            gap = config.rho[m] - abs(config.punctures[j]) - config.rho[j]
            slack.append(gap - SEPARATION * config.rho[j])
            desc.append(f"{name}: E_{j} vs E_inf")
        slack.append(config.rho[m] - math.e)
        desc.append(f"{name}: rho_n >= e")
    return _record(cid, anchor, slack, 0.0, lambda i: desc[i])


def run_suite(suite: str, seed: int = 0, samples: int = 1000) -> VerificationReport:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    names = SUITE_NAMES if suite == "all" else (suite,)
    if any(s not in _CHECKS for s in names):
        raise ValueError(f"unknown suite {suite!r}")
    start = time.perf_counter()
    records = []
    for name in names:
        for cid, anchor, tier, fn in _CHECKS[name]:
            records.append(fn(_rng(seed, cid), _count(samples, tier), cid, anchor))
    return VerificationReport(suite, seed, samples, records, time.perf_counter() - start)


def write_offenders_csv(report: VerificationReport, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["check", "rank", "slack", "detail"])
        for rec in report.checks:
            for rank, (slack, detail) in enumerate(rec.offenders):
                w.writerow([rec.id, rank, repr(slack), detail])
