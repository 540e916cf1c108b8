"""Pure-Python implementation of the hot kernels.

Mirrors ``_kernels.pyx`` function for function. Nothing here validates
its inputs; the public modules do that before calling in.

A *chart* is a tuple ``(kind, center, rt, scale)``:

* ``kind == 0``: Euclidean distance, the other fields are ignored.
* ``kind == 1``: ``scale * D((a - center)/rt, (b - center)/rt)``.
* ``kind == 2``: ``scale * D(rt/a, rt/b)`` (neighbourhood of infinity).

A *circle* is a tuple ``(center, radius)``, parameterised by angle.
"""
import math

import numpy as np

BACKEND = "python"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_TWO_PI = 2.0 * math.pi


def D(z1, z2):
    t1 = -math.log(abs(z1))
    t2 = -math.log(abs(z2))
    c = z2 * z1.conjugate()
    theta = abs(math.atan2(c.imag, c.real))
    return 2.0 * math.sin(0.5 * theta) / max(t1, t2) + abs(math.log(t2) - math.log(t1))


def D_prime(z1, z2):
    t1 = -math.log(abs(z1))
    t2 = -math.log(abs(z2))
    c = z2 * z1.conjugate()
    theta = abs(math.atan2(c.imag, c.real))
    return theta / max(t1, t2) + abs(math.log(t2) - math.log(t1))


def hyp_dstar(z1, z2):
    t1 = -math.log(abs(z1))
    t2 = -math.log(abs(z2))
    c = z2 * z1.conjugate()
    theta = abs(math.atan2(c.imag, c.real))
    den = theta * theta + (t1 + t2) ** 2
    x = math.sqrt((theta * theta + (t1 - t2) ** 2) / den)
    # arth x = log(1+x) - log(1-x^2)/2, with 1-x^2 = 4 t1 t2 / den exactly
    return math.log1p(x) - 0.5 * math.log(4.0 * t1 * t2 / den)


def _polar(z1, z2):
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    z1, z2 = np.broadcast_arrays(z1, z2)
    t1 = -np.log(np.abs(z1))
    t2 = -np.log(np.abs(z2))
    theta = np.abs(np.angle(z2 * np.conj(z1)))
    return t1, t2, theta


def D_batch(z1, z2):
    t1, t2, theta = _polar(z1, z2)
    return 2.0 * np.sin(0.5 * theta) / np.maximum(t1, t2) + np.abs(np.log(t2) - np.log(t1))


def D_prime_batch(z1, z2):
    t1, t2, theta = _polar(z1, z2)
    return theta / np.maximum(t1, t2) + np.abs(np.log(t2) - np.log(t1))


def hyp_dstar_batch(z1, z2):
    t1, t2, theta = _polar(z1, z2)
    den = theta * theta + (t1 + t2) ** 2
    x = np.sqrt((theta * theta + (t1 - t2) ** 2) / den)
    return np.log1p(x) - 0.5 * np.log(4.0 * t1 * t2 / den)


def chart_dist(chart, a, b):
    kind, center, rt, scale = chart
    if kind == 0:
        return abs(a - b)
    if kind == 1:
        return scale * D((a - center) / rt, (b - center) / rt)
    return scale * D(rt / a, rt / b)


def _golden(g, lo, hi, atol):
    """Golden-section search of ``g`` on [lo, hi]; returns (t, g(t))."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = g(c), g(d)
    best_t, best_f = (c, fc) if fc <= fd else (d, fd)
    while b - a > atol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = g(c)
            if fc < best_f:
                best_t, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = g(d)
            if fd < best_f:
                best_t, best_f = d, fd
    return best_t, best_f


def min_one_circle(chart_a, wa, circle, chart_b, wb, nstarts, atol, seeds):
    """Minimise chart_a(wa, zeta) + chart_b(zeta, wb) over zeta on a circle.

    Returns ``(fmin, phi)``.
    """
    center, radius = circle

    def f(phi):
        zeta = center + radius * complex(math.cos(phi), math.sin(phi))
        return chart_dist(chart_a, wa, zeta) + chart_dist(chart_b, zeta, wb)

    step = _TWO_PI / nstarts
    grid = [f(k * step) for k in range(nstarts)]
    best_phi, best_f = 0.0, grid[0]
    starts = []
    for k in range(nstarts):
        if grid[k] < best_f:
            best_phi, best_f = k * step, grid[k]
        if grid[k] <= grid[k - 1] and grid[k] <= grid[(k + 1) % nstarts]:
            starts.append(k * step)
    for s in seeds:
        fs = f(s)
        if fs < best_f:
            best_phi, best_f = s, fs
        starts.append(s)
    for s in starts:
        phi, fv = _golden(f, s - step, s + step, atol)
        if fv < best_f:
            best_phi, best_f = phi, fv
    return best_f, math.remainder(best_phi, _TWO_PI)


_DIRECTIONS = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0))


def min_two_circles(chart_a, w1, circle1, circle2, chart_b, w2, nstarts, atol, seeds):
    """Minimise chart_a(w1, z1) + |z1 - z2| + chart_b(z2, w2) over two circles.

    Returns ``(fmin, phi1, phi2)``.
    """
    c1, r1 = circle1
    c2, r2 = circle2

    def f(p1, p2):
        z1 = c1 + r1 * complex(math.cos(p1), math.sin(p1))
        z2 = c2 + r2 * complex(math.cos(p2), math.sin(p2))
        return chart_dist(chart_a, w1, z1) + abs(z1 - z2) + chart_dist(chart_b, z2, w2)

    step = _TWO_PI / nstarts
    grid = [[f(i * step, j * step) for j in range(nstarts)] for i in range(nstarts)]
    cands = []
    for i in range(nstarts):
        for j in range(nstarts):
            v = grid[i][j]
            if all(
                v <= grid[(i + di) % nstarts][(j + dj) % nstarts]
                for di in (-1, 0, 1)
                for dj in (-1, 0, 1)
            ):
                cands.append((v, i * step, j * step))
    cands.sort()
    cands = cands[:4]
    for p1, p2 in seeds:
        cands.append((f(p1, p2), p1, p2))

    best = min(cands)
    for f0, p1, p2 in cands:
        fv, p1, p2 = _descend(f, f0, p1, p2, step, atol)
        if fv < best[0]:
            best = (fv, p1, p2)
    return best[0], math.remainder(best[1], _TWO_PI), math.remainder(best[2], _TWO_PI)


def _descend(f, fv, p1, p2, scale, atol):
    # line searches along the axes and both diagonals; the diagonals
    # provide the joint refinement that plain coordinate descent lacks
    for _ in range(200):
        moved = 0.0
        for d1, d2 in _DIRECTIONS:
            t, ft = _golden(lambda t: f(p1 + t * d1, p2 + t * d2), -scale, scale, atol)
            if ft < fv:
                p1 += t * d1
                p2 += t * d2
                fv = ft
                moved = max(moved, abs(t))
        if moved <= atol:
            break
        scale = min(scale, max(8.0 * moved, 64.0 * atol))
    return fv, p1, p2
