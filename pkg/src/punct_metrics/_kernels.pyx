# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same contract as ``_kernels_py``."""
from libc.math cimport atan2, cos, fabs, fmax, fmin, hypot, log, log1p, remainder, sin, sqrt

import numpy as np

BACKEND = "cython"

cdef double _INV_PHI = (sqrt(5.0) - 1.0) / 2.0
cdef double _TWO_PI = 6.283185307179586


cdef inline double _tau(double x, double y) nogil:
    # -log|z|; the squared form avoids hypot unless x*x + y*y would underflow
    cdef double s = x * x + y * y
    if s > 1e-300:
        return -0.5 * log(s)
    return -log(hypot(x, y))


cdef inline double _theta(double x1, double y1, double x2, double y2) nogil:
    return fabs(atan2(y2 * x1 - x2 * y1, x2 * x1 + y2 * y1))


cdef inline double _D(double x1, double y1, double x2, double y2) nogil:
    cdef double t1 = _tau(x1, y1)
    cdef double t2 = _tau(x2, y2)
    return 2.0 * sin(0.5 * _theta(x1, y1, x2, y2)) / fmax(t1, t2) + log(fmax(t1, t2) / fmin(t1, t2))


cdef inline double _Dp(double x1, double y1, double x2, double y2) nogil:
    cdef double t1 = _tau(x1, y1)
    cdef double t2 = _tau(x2, y2)
    return _theta(x1, y1, x2, y2) / fmax(t1, t2) + log(fmax(t1, t2) / fmin(t1, t2))


cdef inline double _hdstar(double x1, double y1, double x2, double y2) nogil:
    cdef double t1 = _tau(x1, y1)
    cdef double t2 = _tau(x2, y2)
    cdef double theta = _theta(x1, y1, x2, y2)
    cdef double den = theta * theta + (t1 + t2) * (t1 + t2)
    cdef double x = sqrt((theta * theta + (t1 - t2) * (t1 - t2)) / den)
    return log1p(x) - 0.5 * log(4.0 * t1 * t2 / den)


def D(z1, z2):
    return _D(z1.real, z1.imag, z2.real, z2.imag)


def D_prime(z1, z2):
    return _Dp(z1.real, z1.imag, z2.real, z2.imag)


def hyp_dstar(z1, z2):
    return _hdstar(z1.real, z1.imag, z2.real, z2.imag)


ctypedef double (*pairfn)(double, double, double, double) nogil


cdef _batch(pairfn fn, z1, z2):
    a, b = np.broadcast_arrays(np.asarray(z1, dtype=np.complex128),
                               np.asarray(z2, dtype=np.complex128))
    shape = a.shape
    cdef double complex[::1] av = np.ascontiguousarray(a).reshape(-1)
    cdef double complex[::1] bv = np.ascontiguousarray(b).reshape(-1)
    out = np.empty(av.shape[0])
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(av.shape[0]):
            ov[i] = fn(av[i].real, av[i].imag, bv[i].real, bv[i].imag)
    return out.reshape(shape)


def D_batch(z1, z2):
    return _batch(_D, z1, z2)


def D_prime_batch(z1, z2):
    return _batch(_Dp, z1, z2)


def hyp_dstar_batch(z1, z2):
    return _batch(_hdstar, z1, z2)


cdef struct Chart:
    int kind
    double cx, cy, rt, scale


cdef Chart _chart(tuple chart):
    cdef Chart c
    c.kind = chart[0]
    c.cx = chart[1].real
    c.cy = chart[1].imag
    c.rt = chart[2]
    c.scale = chart[3]
    return c


cdef inline double _chart_dist(Chart* c, double ax, double ay, double bx, double by) nogil:
    cdef double m
    if c.kind == 0:
        return hypot(ax - bx, ay - by)
    if c.kind == 1:
        return c.scale * _D((ax - c.cx) / c.rt, (ay - c.cy) / c.rt,
                            (bx - c.cx) / c.rt, (by - c.cy) / c.rt)
    # rt / w = rt * conj(w) / |w|^2
    m = c.rt / (ax * ax + ay * ay)
    ax, ay = ax * m, -ay * m
    m = c.rt / (bx * bx + by * by)
    bx, by = bx * m, -by * m
    return c.scale * _D(ax, ay, bx, by)


def chart_dist(chart, a, b):
    cdef Chart c = _chart(chart)
    return _chart_dist(&c, a.real, a.imag, b.real, b.imag)


cdef struct Problem:
    Chart ca, cb
    double ax, ay, bx, by
    double c1x, c1y, r1, c2x, c2y, r2
    # line search state for the two-circle objective
    double p1, p2, d1, d2


cdef inline double _f1(Problem* p, double phi) nogil:
    cdef double zx = p.c1x + p.r1 * cos(phi)
    cdef double zy = p.c1y + p.r1 * sin(phi)
    return _chart_dist(&p.ca, p.ax, p.ay, zx, zy) + _chart_dist(&p.cb, zx, zy, p.bx, p.by)


cdef inline double _f2(Problem* p, double q1, double q2) nogil:
    cdef double z1x = p.c1x + p.r1 * cos(q1)
    cdef double z1y = p.c1y + p.r1 * sin(q1)
    cdef double z2x = p.c2x + p.r2 * cos(q2)
    cdef double z2y = p.c2y + p.r2 * sin(q2)
    return (_chart_dist(&p.ca, p.ax, p.ay, z1x, z1y) + hypot(z1x - z2x, z1y - z2y)
            + _chart_dist(&p.cb, z2x, z2y, p.bx, p.by))


cdef inline double _g(Problem* p, int mode, double t) nogil:
    if mode == 1:
        return _f1(p, t)
    return _f2(p, p.p1 + t * p.d1, p.p2 + t * p.d2)


cdef double _golden(Problem* p, int mode, double lo, double hi, double atol,
                    double* fbest) nogil:
    cdef double a = lo, b = hi
    cdef double c = b - _INV_PHI * (b - a)
    cdef double d = a + _INV_PHI * (b - a)
    cdef double fc = _g(p, mode, c)
    cdef double fd = _g(p, mode, d)
    cdef double bt, bf
    if fc <= fd:
        bt, bf = c, fc
    else:
        bt, bf = d, fd
    while b - a > atol:
        if fc <= fd:
            b = d
            d = c
            fd = fc
            c = b - _INV_PHI * (b - a)
            fc = _g(p, mode, c)
            if fc < bf:
                bt, bf = c, fc
        else:
            a = c
            c = d
            fc = fd
            d = a + _INV_PHI * (b - a)
            fd = _g(p, mode, d)
            if fd < bf:
                bt, bf = d, fd
    fbest[0] = bf
    return bt


def min_one_circle(chart_a, wa, circle, chart_b, wb, int nstarts, double atol, seeds):
    cdef Problem p
    p.ca = _chart(chart_a)
    p.cb = _chart(chart_b)
    p.ax, p.ay = wa.real, wa.imag
    p.bx, p.by = wb.real, wb.imag
    p.c1x, p.c1y, p.r1 = circle[0].real, circle[0].imag, circle[1]
    cdef double step = _TWO_PI / nstarts
    grid = np.empty(nstarts)
    cdef double[::1] gv = grid
    cdef int k
    for k in range(nstarts):
        gv[k] = _f1(&p, k * step)
    cdef double best_phi = 0.0, best_f = gv[0], fv, phi
    starts = []
    for k in range(nstarts):
        if gv[k] < best_f:
            best_phi, best_f = k * step, gv[k]
        if gv[k] <= gv[(k - 1 + nstarts) % nstarts] and gv[k] <= gv[(k + 1) % nstarts]:
            starts.append(k * step)
    for s in seeds:
        fv = _f1(&p, s)
        if fv < best_f:
            best_phi, best_f = s, fv
        starts.append(s)
    cdef double s0
    for s in starts:
        s0 = s
        phi = _golden(&p, 1, s0 - step, s0 + step, atol, &fv)
        if fv < best_f:
            best_phi, best_f = phi, fv
    return best_f, remainder(best_phi, _TWO_PI)


cdef double _descend(Problem* p, double fv, double* q1, double* q2,
                     double scale, double atol) nogil:
    cdef double dirs[4][2]
    dirs[0][0] = 1.0; dirs[0][1] = 0.0
    dirs[1][0] = 0.0; dirs[1][1] = 1.0
    dirs[2][0] = 1.0; dirs[2][1] = 1.0
    dirs[3][0] = 1.0; dirs[3][1] = -1.0
    cdef int it, k
    cdef double moved, t, ft
    for it in range(200):
        moved = 0.0
        for k in range(4):
            p.p1 = q1[0]
            p.p2 = q2[0]
            p.d1 = dirs[k][0]
            p.d2 = dirs[k][1]
            t = _golden(p, 2, -scale, scale, atol, &ft)
            if ft < fv:
                q1[0] += t * dirs[k][0]
                q2[0] += t * dirs[k][1]
                fv = ft
                moved = fmax(moved, fabs(t))
        if moved <= atol:
            break
        scale = min(scale, fmax(8.0 * moved, 64.0 * atol))
    return fv


def min_two_circles(chart_a, w1, circle1, circle2, chart_b, w2, int nstarts,
                    double atol, seeds):
    cdef Problem p
    p.ca = _chart(chart_a)
    p.cb = _chart(chart_b)
    p.ax, p.ay = w1.real, w1.imag
    p.bx, p.by = w2.real, w2.imag
    p.c1x, p.c1y, p.r1 = circle1[0].real, circle1[0].imag, circle1[1]
    p.c2x, p.c2y, p.r2 = circle2[0].real, circle2[0].imag, circle2[1]
    cdef double step = _TWO_PI / nstarts
    grid = np.empty((nstarts, nstarts))
    cdef double[:, ::1] gv = grid
    cdef int i, j, di, dj
    for i in range(nstarts):
        for j in range(nstarts):
            gv[i, j] = _f2(&p, i * step, j * step)
    cands = []
    cdef double v
    cdef bint is_min
    for i in range(nstarts):
        for j in range(nstarts):
            v = gv[i, j]
            is_min = True
            for di in range(-1, 2):
                for dj in range(-1, 2):
                    if v > gv[(i + di + nstarts) % nstarts, (j + dj + nstarts) % nstarts]:
                        is_min = False
            if is_min:
                cands.append((v, i * step, j * step))
    cands.sort()
    cands = cands[:4]
    for s1, s2 in seeds:
        cands.append((_f2(&p, s1, s2), s1, s2))
    best = min(cands)
    cdef double q1, q2, fv
    for f0, s1, s2 in cands:
        q1 = s1
        q2 = s2
        fv = _descend(&p, f0, &q1, &q2, step, atol)
        if fv < best[0]:
            best = (fv, q1, q2)
    return best[0], remainder(best[1], _TWO_PI), remainder(best[2], _TWO_PI)
