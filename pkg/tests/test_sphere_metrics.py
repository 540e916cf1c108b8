import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from punct_metrics import DegenerateGeometryError, DomainError
from punct_metrics import kernels
from punct_metrics.sampling import sample_config_points
from punct_metrics.sphere_metrics import (
    INF,
    MoebiusMap,
    PunctureConfiguration,
    RegionTag,
    classify,
    comparability_constants,
    dist_cstar,
    dist_dX,
    dist_eX,
    load_configuration,
    metric_Dj,
    normalize,
    segment_circle_crossing,
)

E = math.e
INV_E = 1 / E


def _zoom_min(f, lo, hi, m, levels=12):
    """Grid search on [lo, hi] (vectorised f), then repeatedly regrid around the best cell."""
    best = (math.inf, None)
    for _ in range(levels):
        x = np.linspace(lo, hi, m)
        vals = f(x)
        i = int(np.argmin(vals))
        best = min(best, (float(vals[i]), x[i]))
        step = (hi - lo) / (m - 1)
        lo, hi = x[i] - 2 * step, x[i] + 2 * step
    return best


def grid_dX(config, w1, w2, m=2000):
    """Brute-force d_X: dense angle grid refined by zooming (product grid for
    two circles, zooming on one angle at a time)."""
    t1, t2 = classify(config, w1), classify(config, w2)
    if t1.kind == "core" and t2.kind == "core":
        return abs(w1 - w2)
    if t1.kind == "core":
        w1, w2, t1, t2 = w2, w1, t2, t1
    c1, r1 = config.circle(t1.index)
    chart1 = config.chart(t1.index)

    def leg1(phi):
        z = c1 + r1 * np.exp(1j * np.atleast_1d(phi))
        return z, np.array([kernels.chart_dist(chart1, w1, x) for x in z])

    if t2.kind == "core":
        def f(phi):
            z, d = leg1(phi)
            return d + np.abs(z - w2)
        return min(_zoom_min(f, -math.pi + s, math.pi + s, m)[0] for s in (0.0, 0.1))

    c2, r2 = config.circle(t2.index)
    chart2 = config.chart(t2.index)

    def leg2(phi):
        z = c2 + r2 * np.exp(1j * np.atleast_1d(phi))
        return z, np.array([kernels.chart_dist(chart2, x, w2) for x in z])

    # coarse product grid, then coordinate-wise zooming from the best cell
    phis = np.linspace(-math.pi, math.pi, 600, endpoint=False)
    z1, d1 = leg1(phis)
    z2, d2 = leg2(phis)
    total = d1[:, None] + np.abs(z1[:, None] - z2[None, :]) + d2[None, :]
    i, j = np.unravel_index(np.argmin(total), total.shape)
    p1, p2 = phis[i], phis[j]
    best = float(total[i, j])
    width = 4 * math.pi / 600
    for _ in range(30):
        za, da = leg2(p2)
        v1, p1 = _zoom_min(lambda x: leg1(x)[1] + np.abs(leg1(x)[0] - za[0]) + da[0], p1 - width, p1 + width, 41, 4)
        za, da = leg1(p1)
        v2, p2 = _zoom_min(lambda x: da[0] + np.abs(za[0] - leg2(x)[0]) + leg2(x)[1], p2 - width, p2 + width, 41, 4)
        best = min(best, v1, v2)
        width *= 0.7
    return best


def config_points(config):
    return st.integers(0, 2 ** 32 - 1).map(
        lambda s: complex(sample_config_points(np.random.default_rng(s), config, 1)[0]))


class TestNormalize:
    def test_three_points_with_infinity(self):
        config, mob = normalize([1, 2, INF])
        assert config.punctures == (0, 1, INF)
        assert mob(1) == 0 and mob(2) == 1 and math.isinf(mob(INF).real)
        assert mob(5) == pytest.approx(4)

    def test_identity_when_already_normalized(self):
        config, mob = normalize([0, 1j, 1, INF])
        assert mob.is_identity
        assert config.punctures == (0, 1, 1j, INF)

    def test_largest_modulus_goes_to_infinity(self):
        config, mob = normalize([2, 3, 5j, 7])
        assert math.isinf(mob(7).real)
        assert mob(2) == pytest.approx(0) and mob(3) == pytest.approx(1)
        assert config.punctures[2] == pytest.approx(mob(5j))
        assert config.n == 4

    def test_tie_broken_lexicographically(self):
        _, mob = normalize([1, 0, 2, INF])
        # pairs (0,1) and (1,2) tie; the pair with the smaller point wins and 0 is sent to 0
        assert mob(0) == pytest.approx(0) and mob(1) == pytest.approx(1)

    def test_moebius_maps_infinity(self):
        m = MoebiusMap(1, 0, 1, 1)
        assert m(INF) == 1
        assert math.isinf(m(-1).real)

    @pytest.mark.parametrize("pts", [[0, 1], [0, 0, 1], [0, 1, INF, INF], [0, 1, complex("nan")]])
    def test_rejects_bad_input(self, pts):
        with pytest.raises(DomainError):
            normalize(pts)

    def test_load_configuration(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"punctures": [[0, 0], [1, 0], [-1, 1.5], "inf"]}))
        config, mob = load_configuration(path)
        assert mob.is_identity
        assert config.punctures == (0, 1, complex(-1, 1.5), INF)


class TestRadii:
    def test_c01(self, c01):
        assert c01.rho_tilde == pytest.approx((1, 1, 1))
        assert c01.rho == pytest.approx((INV_E, INV_E, E))

    def test_separation(self, four):
        m = four.n - 1
        sep = 1 - INV_E - INV_E ** 2
        for j in range(m):
            for k in range(m):
                if j != k:
                    gap = abs(four.punctures[j] - four.punctures[k]) - four.rho[j] - four.rho[k]
                    assert gap >= sep * four.rho[j] - 1e-15
            assert E * four.rho[j] <= abs(four.punctures[j]) + four.rho_tilde[j] + 1e-12
        assert four.rho[-1] >= E


class TestClassify:
    def test_regions(self, c01):
        assert classify(c01, math.exp(-2)) == RegionTag("puncture", 0)
        assert classify(c01, 0.5) == RegionTag("core", None)
        assert classify(c01, 3) == RegionTag("puncture", 2)
        assert classify(c01, 1 + 0.1j) == RegionTag("puncture", 1)

    def test_boundary_is_puncture(self, c01):
        assert classify(c01, INV_E).kind == "puncture"

    @pytest.mark.parametrize("w", [0, 1, INF])
    def test_puncture_rejected(self, c01, w):
        with pytest.raises(DomainError):
            classify(c01, w)


class TestDistances:
    def test_metric_Dj_example(self, c01):
        assert metric_Dj(c01, 0, math.exp(-2), math.exp(-3)) == pytest.approx(math.log(1.5) / E, abs=1e-15)

    def test_metric_Dj_boundary_is_euclidean(self, c01):
        z1, z2 = 1 + INV_E * 1j, 1 + INV_E * np.exp(2j)
        assert metric_Dj(c01, 1, z1, z2) == pytest.approx(abs(z1 - z2), abs=1e-15)

    def test_metric_Dj_outside(self, c01):
        with pytest.raises(DomainError):
            metric_Dj(c01, 0, 0.5, 0.1)

    def test_radial_example(self, c01):
        want = math.log(2) / E + 0.5 - INV_E
        assert dist_dX(c01, math.exp(-2), 0.5) == pytest.approx(want, abs=1e-12)
        assert dist_eX(c01, math.exp(-2), 0.5) == pytest.approx(want, abs=1e-12)

    def test_core_pair_is_euclidean(self, c01):
        assert dist_dX(c01, 0.5 + 0.5j, -1) == pytest.approx(abs(1.5 + 0.5j))

    def test_same_region_uses_chart(self, c01):
        assert dist_dX(c01, 10, -10j) == metric_Dj(c01, 2, 10, -10j)

    def test_brute_force_one_circle(self, four, rng):
        for w1, w2 in sample_config_points(rng, four, 60).reshape(30, 2):
            t1, t2 = classify(four, w1), classify(four, w2)
            if (t1.kind == "core") == (t2.kind == "core"):
                continue
            # angular tolerance 1e-10 at a kink of slope <= |circle| leaves ~1e-9
            assert dist_dX(four, w1, w2) == pytest.approx(grid_dX(four, w1, w2), abs=1e-8)

    def test_brute_force_two_circles(self, four, rng):
        done = 0
        while done < 6:
            w1, w2 = sample_config_points(rng, four, 2)
            t1, t2 = classify(four, w1), classify(four, w2)
            if "core" in (t1.kind, t2.kind) or t1.index == t2.index:
                continue
            grid = grid_dX(four, w1, w2)
            assert dist_dX(four, w1, w2) == pytest.approx(grid, abs=1e-8)
            done += 1

    @given(st.data())
    def test_axioms(self, data):
        config = data.draw(st.sampled_from(["c01", "four"]))
        config = normalize([0, 1, INF] if config == "c01" else [0, 1, complex(-1, 1.5), INF])[0]
        a, b, c = (data.draw(config_points(config)) for _ in range(3))
        ab = dist_dX(config, a, b)
        assert ab == dist_dX(config, b, a)
        assert ab <= dist_dX(config, a, c) + dist_dX(config, c, b) + 3e-10
        assert ab <= dist_eX(config, a, b) + 1e-12

    def test_eX_through_puncture(self, c01):
        # the segment from 0.1 to 10 runs straight through the puncture at 1
        v = dist_eX(c01, 0.1, 10)
        want = metric_Dj(c01, 0, 0.1, INV_E) + (E - INV_E) + metric_Dj(c01, 2, E, 10)
        assert v == pytest.approx(want, abs=1e-12)

    def test_segment_crossing(self):
        assert segment_circle_crossing(0, 2, 0, 1) == pytest.approx(1)
        assert segment_circle_crossing(2, 0, 0, 1) == pytest.approx(1)
        assert segment_circle_crossing(1, 3, 0, 1) == 1
        with pytest.raises(DegenerateGeometryError):
            segment_circle_crossing(2, 3, 0, 1)


class TestCStar:
    def test_inside_chart(self):
        assert dist_cstar(0.5, 0.25) == pytest.approx(math.log((1 + math.log(4)) / (1 + math.log(2))))

    @given(st.floats(-5, 5), st.floats(-math.pi, math.pi), st.floats(-5, 5), st.floats(-math.pi, math.pi))
    def test_inversion_symmetry(self, l1, a1, l2, a2):
        w1, w2 = complex(math.exp(l1) * math.cos(a1), math.exp(l1) * math.sin(a1)), \
            complex(math.exp(l2) * math.cos(a2), math.exp(l2) * math.sin(a2))
        assert dist_cstar(1 / w1, 1 / w2) == pytest.approx(dist_cstar(w1, w2), abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            dist_cstar(0, 1)


class TestComparabilityConstants:
    def test_c01(self, c01):
        c = comparability_constants(c01)
        assert c.N1 == pytest.approx(0.234199326097276643, rel=1e-14)
        assert c.U1 == pytest.approx(57.4308924430195, rel=1e-12)
        assert c.U2 == pytest.approx(105.613265560605, rel=1e-12)
        assert c.B1 == pytest.approx(28503.1714841817, rel=1e-12)
        assert c.N2p == pytest.approx(28608.7847497423, rel=1e-12)
        assert c.N2pp == pytest.approx(1806.36038105852, rel=1e-12)
        assert c.N2 == max(c.N2p, c.N2pp)
        assert c.M0 == pytest.approx(23.2008493446, abs=1e-9)

    def test_rejects_small_outer_radius(self):
        config = PunctureConfiguration((0, 1, INF), (1.0, 1.0, 0.5), (INV_E, INV_E, 0.5 * E))
        with pytest.raises(DomainError):
            comparability_constants(config)
