"""Double-double arithmetic on complex numbers.

A value is ``(re_hi, re_lo, im_hi, im_lo)`` with ``|lo| <= ulp(hi) / 2``.
Only the handful of operations the theta quotient needs are provided.
"""

_SPLIT = 134217729.0  # 2^27 + 1


def two_sum(a: float, b: float) -> tuple[float, float]:
    """``a + b`` as an unevaluated pair, exact."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def two_prod(a: float, b: float) -> tuple[float, float]:
    """``a * b`` as an unevaluated pair, exact barring overflow."""
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    return two_sum(s, e + al + bl)


def _mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    return two_sum(p, e + ah * bl + al * bh)


def cmul(x, y):
    rr = _mul(x[0], x[1], y[0], y[1])
    ii = _mul(x[2], x[3], y[2], y[3])
    ri = _mul(x[0], x[1], y[2], y[3])
    ir = _mul(x[2], x[3], y[0], y[1])
    re = _add(rr[0], rr[1], -ii[0], -ii[1])
    im = _add(ri[0], ri[1], ir[0], ir[1])
    return re + im


def cdiv(n, d):
    """Quotient with one residual correction; ~1 ulp beyond double."""
    dz = complex(d[0], d[2])
    q0 = complex(n[0], n[2]) / dz
    prod = cmul((q0.real, 0.0, q0.imag, 0.0), d)
    rre = _add(n[0], n[1], -prod[0], -prod[1])
    rim = _add(n[2], n[3], -prod[2], -prod[3])
    corr = complex(rre[0] + rre[1], rim[0] + rim[1]) / dz
    return two_sum(q0.real, corr.real) + two_sum(q0.imag, corr.imag)


def to_complex(x) -> complex:
    return complex(x[0] + x[1], x[2] + x[3])
