"""Exact helpers: quadratic surds a + b*sqrt(d) and rigorous real intervals."""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from math import floor, isqrt

from mpmath import iv
from mpmath.libmp import to_rational

DEFAULT_PREC = 128


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def _sign(x):
    return (x > 0) - (x < 0)


class QuadSurd:
    """The real number a + b*sqrt(d), a and b rational, d a positive integer."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1):
        a, b = Fraction(a), Fraction(b)
        if d <= 0:
            raise ValueError("d must be positive")
        if b == 0 or is_square(d):
            a, b, d = a + b * isqrt(d), Fraction(0), 1
        self.a, self.b, self.d = a, b, d

    def _coerce(self, other):
        if isinstance(other, QuadSurd):
            if other.d != self.d and other.b and self.b:
                raise ValueError("surds with different radicands")
            return other
        return QuadSurd(other, 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadSurd(self.a + o.a, self.b + o.b, max(self.d, o.d) if (self.b or o.b) else 1)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        d = max(self.d, o.d)
        return QuadSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadSurd):
            if other.b:
                raise ValueError("division by an irrational surd")
            other = other.a
        return QuadSurd(self.a / other, self.b / other, self.d)

    def __pow__(self, n):
        result = QuadSurd(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self):
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _cmp(self, other):
        return (self - other).sign()

    def __eq__(self, other):
        if not isinstance(other, (QuadSurd, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d**0.5

    def floor(self):
        bb = self.b * self.b * self.d
        guess = floor(self.a) + _sign(self.b) * isqrt(floor(bb))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def ceil(self):
        return -((-self).floor())

    def is_rational(self):
        return self.b == 0

    def pair(self):
        """(A, B) as plain ints when integral, else Fractions."""
        conv = lambda x: int(x) if x.denominator == 1 else x
        return conv(self.a), conv(self.b)

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a} + {self.b}*sqrt({self.d})"


def sqrt_power(q, k):
    """q^(k/2) exactly as a surd."""
    if k % 2 == 0:
        return QuadSurd(q ** (k // 2))
    return QuadSurd(0, q ** (k // 2), q)


# --- rigorous intervals --------------------------------------------------------


@contextmanager
def precision(bits):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def endpoints(x):
    """Exact rational endpoints (lo, hi) of an mpmath interval."""
    lo, hi = x._mpi_
    return Fraction(*map(int, to_rational(lo))), Fraction(*map(int, to_rational(hi)))


def log_interval(x, base, prec=DEFAULT_PREC):
    """Enclosure of log_base(x) for positive rationals x and base > 1."""
    with precision(prec):
        val = iv.log(to_interval(x)) / iv.log(to_interval(base))
        return endpoints(val)


def sqrt_interval(x, prec=DEFAULT_PREC):
    with precision(prec):
        return endpoints(iv.sqrt(to_interval(x)))


def to_interval(x):
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)
