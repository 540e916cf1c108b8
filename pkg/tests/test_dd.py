from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from punct_metrics import _dd as dd

finite = st.floats(-1e100, 1e100, allow_nan=False, allow_infinity=False)


@given(finite, finite)
def test_two_sum_exact(a, b):
    s, e = dd.two_sum(a, b)
    assert s == a + b
    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


@given(st.floats(-1e150, 1e150, allow_nan=False), st.floats(-1e150, 1e150, allow_nan=False))
def test_two_prod_exact(a, b):
    p, e = dd.two_prod(a, b)
    if abs(Fraction(a) * Fraction(b)) > 1e-290:  # underflow of the error term
        assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


def _frac(x):
    return Fraction(x[0]) + Fraction(x[1]), Fraction(x[2]) + Fraction(x[3])


@given(st.complex_numbers(max_magnitude=1e3, min_magnitude=1e-3), st.complex_numbers(max_magnitude=1e3, min_magnitude=1e-3))
def test_cmul_and_cdiv(x, y):
    a = (x.real, 0.0, x.imag, 0.0)
    b = (y.real, 0.0, y.imag, 0.0)
    re, im = _frac(dd.cmul(a, b))
    xr, xi, yr, yi = map(Fraction, (x.real, x.imag, y.real, y.imag))
    want_re, want_im = xr * yr - xi * yi, xr * yi + xi * yr
    scale = abs(x) * abs(y)
    assert abs(float(re - want_re)) <= 1e-30 * scale and abs(float(im - want_im)) <= 1e-30 * scale
    q = dd.to_complex(dd.cdiv(a, b))
    assert abs(q - x / y) <= 2.3e-16 * abs(x / y)
