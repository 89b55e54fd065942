from fractions import Fraction
from math import isqrt

from hypothesis import given
from hypothesis import strategies as st

from classexp.exact import QuadSurd, endpoints, log_interval, precision, sqrt_interval, sqrt_power, to_interval

small = st.integers(-60, 60)
radicand = st.sampled_from([2, 3, 5, 7, 11, 4, 9])


def exact_floor(a, b, d):
    """floor(a + b sqrt d) for integers a, b via integer square roots."""
    # b sqrt d = sign(b) sqrt(b^2 d)
    r = isqrt(b * b * d)
    if b >= 0:
        return a + r
    return a - r - (0 if r * r == b * b * d else 1)


@given(small, small, radicand)
def test_floor_and_ceil_match_integer_oracle(a, b, d):
    x = QuadSurd(a, b, d)
    assert x.floor() == exact_floor(a, b, d)
    assert x.ceil() == -exact_floor(-a, -b, d)


@given(small, small, small, small, radicand)
def test_comparisons_agree_with_floats_when_separated(a1, b1, a2, b2, d):
    x, y = QuadSurd(a1, b1, d), QuadSurd(a2, b2, d)
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9:
        assert (x < y) == (fx < fy)
    assert (x - y).sign() == -(y - x).sign()


@given(small, small, small, small, radicand)
def test_arithmetic_against_floats(a1, b1, a2, b2, d):
    x, y = QuadSurd(a1, b1, d), QuadSurd(a2, b2, d)
    assert abs(float(x * y) - float(x) * float(y)) < 1e-6 * (1 + abs(float(x) * float(y)))
    assert abs(float(x + y) - (float(x) + float(y))) < 1e-9 * (1 + abs(float(x)) + abs(float(y)))


def test_perfect_square_radicand_collapses():
    assert QuadSurd(1, 2, 9) == 7
    assert QuadSurd(1, 2, 9).is_rational()
    assert sqrt_power(4, 3) == 8
    assert sqrt_power(3, 4) == 9
    assert sqrt_power(2, 3).pair() == (0, 2)


def test_weil_endpoints_for_q3_g2():
    r = QuadSurd(0, 1, 3)
    assert ((r - 1) ** 4).pair() == (28, -16)
    assert ((r + 1) ** 4).pair() == (28, 16)


@given(st.integers(1, 10**12))
def test_sqrt_interval_contains_isqrt_bracket(n):
    lo, hi = sqrt_interval(n)
    r = isqrt(n)
    assert lo <= hi
    assert lo * lo <= n <= hi * hi
    assert r <= hi and lo < r + 1


@given(st.integers(2, 10**9), st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
def test_log_interval_brackets_integer_powers(x, q):
    lo, hi = log_interval(x, q)
    t = 0
    while q ** (t + 1) <= x:
        t += 1
    assert lo <= t + 1 and hi >= t


def test_precision_context_restores_and_endpoints_are_exact():
    from mpmath import iv

    before = iv.prec
    with precision(300):
        assert iv.prec == 300
        lo, hi = endpoints(to_interval(Fraction(1, 3)))
    assert iv.prec == before
    assert lo <= Fraction(1, 3) <= hi
    assert hi - lo < Fraction(1, 2**290)
