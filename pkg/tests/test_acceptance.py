"""Acceptance criteria at their stated sizes and tolerances.

Each criterion prints one ``PASS``/``FAIL`` line (also outside pytest:
``python3 tests/test_acceptance.py``).
"""
import math
import sys
import time

import numpy as np
import pytest

from punct_metrics import kernels
from punct_metrics.halfplane_oracle import (
    hyp_density_thrice_punctured,
    hyp_dist_thrice_punctured,
    punctured_disk_geodesic,
    thrice_punctured_geodesic,
)
from punct_metrics.modular_cover import (
    C0,
    RHO_MAX,
    UNIVALENCE_RADIUS,
    hempel_density_lower,
    k_of_rho,
    q_eval,
    q_taylor_coefficients,
)
from punct_metrics.punctured_disk import geodesic_annulus, hyp_dist_punctured_disk, metric_D
from punct_metrics.sampling import sample_config_points, sample_disk, sample_estar
from punct_metrics.sphere_metrics import INF, comparability_constants, dist_dX, dist_eX, normalize

SEED = 20240611
DX_TOL = 1e-10
ORACLE_TOL = 1e-8


def _emit(number, title, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}]", flush=True)


@pytest.fixture
def emit(capsys):
    def _inner(*args):
        with capsys.disabled():
            print()
            _emit(*args)
    return _inner


def criterion_1():
    start = time.perf_counter()
    c = k_of_rho(math.exp(-1))
    M0 = 2 * (C0 + c.K + 1) + 2 * (C0 + 1)
    table = [
        ("K0", c.K, 0.846666, 1e-5),
        ("e^K0", math.exp(c.K), 2.33186, 1e-4),
        ("r0", c.r, 0.0301441, 1e-6),
        ("mu0", c.mu, 0.145007, 1e-5),
        ("delta0", c.delta, 0.107007, 1e-5),
        ("eta0", c.eta1, 1.11465, 1e-4),
        ("C0", C0, 4.37688, 1e-5),
        ("M0", M0, 23.2008, 1e-3),
    ]
    elapsed = time.perf_counter() - start
    bad = [name for name, got, want, tol in table if not abs(got - want) <= tol]
    ok = not bad and elapsed < 5
    return ok, f"{len(table) - len(bad)}/{len(table)} constants, {elapsed:.3f}s" + (f", off: {bad}" if bad else "")


def criterion_2():
    rng = np.random.default_rng([SEED, 2])
    special = abs(q_eval(1j * UNIVALENCE_RADIUS) - 2.0)
    z = 0.5 * np.sqrt(rng.uniform(size=1000)) * np.exp(2j * np.pi * rng.uniform(size=1000))
    worst = worst_abs = 0.0
    for x in z:
        q, lhs = q_eval(x), q_eval(-x)
        # mixed tolerance: Q/(Q-1) has condition ~1/|Q-1|^2 where Q(z) is near 1
        err = abs(lhs - q / (q - 1.0))
        worst = max(worst, err / max(1.0, abs(lhs)))
        worst_abs = max(worst_abs, err)
    coeffs = q_taylor_coefficients(5)
    rel = max(abs(g / w - 1) for g, w in zip(coeffs, [16, -128, 704, -3072, 11488]))
    ok = special <= 1e-9 and worst <= 1e-10 and rel <= 1e-4
    return ok, f"|Q(ie^-pi/2)-2|={special:.1e}, identity worst={worst:.1e} scaled ({worst_abs:.1e} absolute) on 1000 pts, taylor rel={rel:.1e}"


def _triangle_violations(config, rng, count):
    pts = sample_config_points(rng, config, 3 * count).reshape(3, count)
    worst = math.inf
    for a, b, c in pts.T:
        ab, ac, bc = dist_dX(config, a, b, DX_TOL), dist_dX(config, a, c, DX_TOL), dist_dX(config, b, c, DX_TOL)
        worst = min(worst, ac + bc - ab, ab + bc - ac, ab + ac - bc)
    return worst


def criterion_3():
    rng = np.random.default_rng([SEED, 3])
    a, b, c = (sample_estar(rng, 100_000) for _ in range(3))
    ab, ac, cb = kernels.D_batch(a, b), kernels.D_batch(a, c), kernels.D_batch(c, b)
    d_violations = int(np.sum(ab > ac + cb + 1e-12))
    start = time.perf_counter()
    worst = min(
        _triangle_violations(normalize([0, 1, INF])[0], rng, 10_000),
        _triangle_violations(normalize([0, 1, complex(-1.0, 1.5), INF])[0], rng, 10_000),
    )
    elapsed = time.perf_counter() - start
    ok = d_violations == 0 and worst >= -3 * DX_TOL and elapsed < 60
    return ok, (f"D violations={d_violations}/1e5, d_X worst slack={worst:.2e} on 2x1e4 triples, "
                f"{elapsed:.1f}s")


def criterion_4():
    rng = np.random.default_rng([SEED, 4])
    a, b = sample_estar(rng, 10_000), sample_estar(rng, 10_000)
    h = kernels.hyp_dstar_batch(a, b)
    lower = int(np.sum(4 / math.pi * h > kernels.D_batch(a, b)))
    strong = int(np.sum(2 * h > kernels.D_prime_batch(a, b)))
    z = math.exp(-100.0)
    sharp = abs(hyp_dist_punctured_disk(z, -z) / metric_D(z, -z) - math.pi / 4)
    ok = lower == 0 and strong == 0 and sharp <= 1e-4
    return ok, f"violations (4/pi)h<=D: {lower}, 2h<=D': {strong}, |ratio-pi/4| at tau=100: {sharp:.1e}"


def criterion_5():
    rng = np.random.default_rng([SEED, 5])
    config = normalize([0, 1, INF])[0]
    consts = comparability_constants(config)
    start = time.perf_counter()
    pts = sample_config_points(rng, config, 2000).reshape(2, 1000)
    worst = math.inf
    for w1, w2 in pts.T:
        h = hyp_dist_thrice_punctured(w1, w2, ORACLE_TOL)
        d = dist_dX(config, w1, w2, DX_TOL)
        e = dist_eX(config, w1, w2)
        worst = min(worst, d - consts.N1 * h, e - d, consts.N2 * h - e)
    a, b = sample_estar(rng, 1000), sample_estar(rng, 1000)
    upper = min(consts.M0 * hyp_dist_thrice_punctured(x, y, ORACLE_TOL) - metric_D(x, y) for x, y in zip(a, b))
    elapsed = time.perf_counter() - start
    ok = worst >= -1e-6 and upper >= -1e-6 and elapsed < 300
    return ok, f"sandwich worst slack={worst:.2e}, D<=M0 h worst slack={upper:.2e}, {elapsed:.1f}s"


def criterion_6():
    rng = np.random.default_rng([SEED, 6])
    config = normalize([0, 1, INF])[0]
    w = sample_config_points(rng, config, 1000)
    worst = min(hyp_density_thrice_punctured(x) - hempel_density_lower(x) for x in w)
    at_minus_one = abs(hyp_density_thrice_punctured(-1) - 1 / (2 * C0))
    ok = worst >= 0 and at_minus_one <= 1e-6
    return ok, f"hempel worst slack={worst:.2e} on 1000 pts, |density(-1)-1/(2C0)|={at_minus_one:.1e}"


def criterion_7():
    rng = np.random.default_rng([SEED, 7])
    tol = 1e-6
    a = sample_estar(rng, 100, (0.01, 8.0))
    b = sample_estar(rng, 100, (0.01, 8.0))
    disk_worst = math.inf
    for z1, z2 in zip(a, b):
        lo, hi = geodesic_annulus(z1, z2)
        r = np.abs(punctured_disk_geodesic(z1, z2))
        disk_worst = min(disk_worst, np.min(r - lo), np.min(hi - r))
    rho = np.concatenate([rng.uniform(0.05, RHO_MAX - 0.01, 90), np.full(10, RHO_MAX - 0.01)])
    c01_worst = math.inf
    for p in rho:
        w1, w2 = sample_disk(rng, 2, p)
        K = k_of_rho(p).K
        r = np.abs(thrice_punctured_geodesic(w1, w2))
        lo = min(abs(w1), abs(w2)) * math.exp(-K)
        hi = max(abs(w1), abs(w2))
        c01_worst = min(c01_worst, np.min(r - lo), np.min(hi - r))
    ok = disk_worst >= -tol and c01_worst >= -tol
    return ok, f"punctured disk worst slack={disk_worst:.2e}, C01 worst slack={c01_worst:.2e} (100 pairs each)"


CRITERIA = [
    (1, "constant reproduction", criterion_1),
    (2, "Q identities", criterion_2),
    (3, "metric axioms", criterion_3),
    (4, "comparability on E*", criterion_4),
    (5, "oracle-backed comparability", criterion_5),
    (6, "density checks", criterion_6),
    (7, "geodesic containment", criterion_7),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, emit):
    ok, detail = fn()
    emit(number, title, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        _emit(number, title, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
