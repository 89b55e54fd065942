"""Pic^0 of an odd-model hyperelliptic curve via Mumford pairs and Cantor's algorithm."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from math import lcm

from sympy import factorint

from . import errors
from .poly import PolyRing, deg

ENUM_CAP = 1 << 24
DEFAULT_SAMPLES = 64


@dataclass(frozen=True, order=True)
class JacClass:
    """Reduced Mumford pair: u monic, deg v < deg u <= g, u | v^2 + h v - f."""

    u: tuple
    v: tuple

    @property
    def is_identity(self):
        return self.u == (1,)

    def as_dict(self):
        return {"u": list(self.u), "v": list(self.v)}


IDENTITY = JacClass((1,), ())


class Jacobian:
    """Group law on Pic^0 X(F_q) for y^2 + h y = f with deg f = 2g+1, f monic."""

    def __init__(self, curve):
        if not curve.odd or curve.f[-1] != 1:
            raise errors.JacobianUnavailable("Cantor arithmetic needs an odd monic model; "
                                             "see curve.to_odd_model")
        self.curve = curve
        self.g = curve.genus
        self.R = PolyRing(curve.field)
        self.identity = IDENTITY

    def __repr__(self):
        return f"Jacobian({self.curve!r})"

    def is_valid(self, a):
        R, c = self.R, self.curve
        u, v = a.u, a.v
        if not u or u[-1] != 1 or deg(u) > self.g or len(v) >= len(u):
            return False
        return not R.mod(R.sub(R.add(R.mul(v, v), R.mul(c.h, v)), c.f), u)

    def from_point(self, P):
        """Class of P - oo for an F_q-rational point P."""
        if P.is_infinite:
            return IDENTITY
        F = self.curve.field
        return JacClass((F.neg(P.x), 1), (P.y,) if P.y else ())

    def neg(self, a):
        if a.is_identity:
            return a
        R = self.R
        return JacClass(a.u, R.mod(R.neg(R.add(self.curve.h, a.v)), a.u))

    def compose(self, a, b):
        if a.is_identity:
            return b
        if b.is_identity:
            return a
        R, h, f = self.R, self.curve.h, self.curve.f
        u1, v1, u2, v2 = a.u, a.v, b.u, b.v
        d1, e1, e2 = R.xgcd(u1, u2)
        if d1 == (1,):
            u = R.mul(u1, u2)
            v = R.mod(R.add(R.mul(R.mul(e1, u1), v2), R.mul(R.mul(e2, u2), v1)), u)
        else:
            d, c1, c2 = R.xgcd(d1, R.add(R.add(v1, v2), h))
            s1, s2 = R.mul(c1, e1), R.mul(c1, e2)
            u = R.div_exact(R.mul(u1, u2), R.mul(d, d))
            num = R.add(R.add(R.mul(R.mul(s1, u1), v2), R.mul(R.mul(s2, u2), v1)),
                        R.mul(c2, R.add(R.mul(v1, v2), f)))
            v = R.mod(R.div_exact(num, d), u)
        return self._reduce(u, v)

    def _reduce(self, u, v):
        R, h, f, g = self.R, self.curve.h, self.curve.f, self.g
        while deg(u) > g:
            u = R.div_exact(R.sub(R.sub(f, R.mul(v, h)), R.mul(v, v)), u)
            v = R.mod(R.neg(R.add(h, v)), u)
        u = R.monic(u)
        return JacClass(u, R.mod(v, u))

    def double(self, a):
        return self.compose(a, a)

    def scalar_mul(self, a, n):
        if n < 0:
            a, n = self.neg(a), -n
        result = IDENTITY
        while n:
            if n & 1:
                result = self.compose(result, a)
            n >>= 1
            if n:
                a = self.compose(a, a)
        return result

    def reduce_divisor(self, u, v):
        """Reduced class of a semi-reduced pair (u, v) of any degree."""
        R = self.R
        u = R.monic(u)
        return self._reduce(u, R.mod(v, u))

    # enumeration -------------------------------------------------------------
    def enumerate_classes(self, cap=ENUM_CAP):
        """All reduced Mumford pairs, ordered by (deg u, u, v)."""
        F, R, c = self.curve.field, self.R, self.curve
        q, g = F.size, self.g
        # h <= (sqrt q + 1)^2g; the scan itself visits about q^2g pairs
        if q ** (2 * g) > cap * 4:
            raise errors.CapExceeded(f"enumeration of ~q^2g = {q ** (2 * g)} pairs exceeds cap {cap}")
        out = []
        for d in range(g + 1):
            for low in itertools.product(range(q), repeat=d):
                u = tuple(reversed(low)) + (1,)
                for vc in itertools.product(range(q), repeat=d):
                    v = _trim(vc[::-1])
                    if not R.mod(R.sub(R.add(R.mul(v, v), R.mul(c.h, v)), c.f), u):
                        out.append(JacClass(u, v))
            if len(out) > cap:
                raise errors.CapExceeded(f"more than {cap} classes")
        return out

    def random_class(self, rng, points_per_class=None):
        """Sum of random rational points minus as many copies of infinity."""
        F, R, c = self.curve.field, self.R, self.curve
        n = self.g if points_per_class is None else points_per_class
        acc = IDENTITY
        for _ in range(n):
            for _attempt in range(64 * F.size):
                x = rng.randrange(F.size)
                ys = F.quadratic_roots(R.eval(c.h, x), F.neg(R.eval(c.f, x)))
                if ys:
                    y = ys[rng.randrange(len(ys))]
                    acc = self.compose(acc, JacClass((F.neg(x), 1), (y,) if y else ()))
                    break
        return acc


def _trim(t):
    t = list(t)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


def factor(n):
    return dict(sorted(factorint(n).items()))


def element_order(jac, a, h_factored):
    """Exact order of a, given the factorisation {prime: exponent} of a multiple of it."""
    order = 1
    for ell, e in h_factored.items():
        order *= ell**e
    for ell, e in h_factored.items():
        for _ in range(e):
            if jac.scalar_mul(a, order // ell).is_identity:
                order //= ell
            else:
                break
    return order


@dataclass(frozen=True)
class GroupProfile:
    h: int
    exponent: int
    order_histogram: dict
    invariant_factors: tuple | None
    mode: str = "exhaustive"

    @property
    def exponent_is_lower_bound(self):
        return self.mode == "sampled"

    def ell_rank(self, ell):
        if self.invariant_factors is None:
            return None
        return sum(1 for d in self.invariant_factors if d % ell == 0)

    def as_dict(self):
        return {
            "h": self.h,
            "exponent": self.exponent,
            "invariant_factors": list(self.invariant_factors) if self.invariant_factors else None,
            "order_histogram": {str(k): v for k, v in sorted(self.order_histogram.items())},
            "mode": self.mode,
        }


def invariant_factors_from_histogram(histogram):
    """Invariant factors d_1 | d_2 | ... of a finite abelian group from its order counts.

    |G[l^i]| is the number of elements whose order divides l^i; the number of
    cyclic l-primary factors of exponent >= i is log_l(|G[l^i]| / |G[l^(i-1)]|).
    """
    h = sum(histogram.values())
    if h == 1:
        return ()
    exps_by_prime = {}
    for ell, top in factorint(h).items():
        sizes = [1]
        i = 0
        while sizes[-1] < ell**top:
            i += 1
            sizes.append(sum(c for o, c in histogram.items() if (ell**i) % o == 0))
        ranks = []
        for j in range(1, len(sizes)):
            ratio, r = sizes[j] // sizes[j - 1], 0
            while ratio > 1:
                ratio //= ell
                r += 1
            ranks.append(r)
        ranks.append(0)
        exps = []
        for j in range(1, len(ranks)):
            exps += [j] * (ranks[j - 1] - ranks[j])
        exps_by_prime[ell] = sorted(exps, reverse=True)
    t = max(len(e) for e in exps_by_prime.values())
    factors = []
    for j in range(t):
        d = 1
        for ell, exps in exps_by_prime.items():
            if j < len(exps):
                d *= ell ** exps[j]
        factors.append(d)
    return tuple(sorted(factors))


def group_profile(jac, mode="exhaustive", *, classes=None, h=None, seed=0,
                  samples=DEFAULT_SAMPLES, cap=ENUM_CAP):
    """Exponent, order histogram and structure of Pic^0.

    ``sampled`` mode needs the class number ``h`` and reports the lcm of the
    orders of ``samples`` seeded random classes, which is only a lower bound
    on the exponent.
    """
    if mode == "exhaustive":
        if classes is None:
            classes = jac.enumerate_classes(cap)
        n = len(classes)
        if h is not None and h != n:
            raise errors.ConsistencyFailure(f"enumerated {n} classes but h = {h}")
        fac = factor(n)
        hist = Counter(element_order(jac, a, fac) for a in classes)
        exponent = lcm(*hist)
        if exponent != max(hist):
            raise errors.ConsistencyFailure("exponent differs from maximal order")  # pragma: no cover
        return GroupProfile(n, exponent, dict(sorted(hist.items())),
                            invariant_factors_from_histogram(hist), "exhaustive")
    if mode == "sampled":
        if h is None:
            raise errors.PreconditionViolated("sampled mode needs the class number h")
        rng = random.Random(seed)
        fac = factor(h)
        hist = Counter(element_order(jac, jac.random_class(rng), fac) for _ in range(samples))
        return GroupProfile(h, lcm(*hist), dict(sorted(hist.items())), None, "sampled")
    raise ValueError(f"unknown mode {mode!r}")


def order_count(profile, m):
    """Number of classes of order >= m."""
    if profile.mode != "exhaustive":
        raise errors.SampledProfileUnsupported("order counts need an exhaustive profile")
    return sum(c for o, c in profile.order_histogram.items() if o >= m)
