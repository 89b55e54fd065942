"""Univariate polynomials over a :class:`~classexp.ff.Field`.

Polynomials are tuples of encoded field elements, low degree first, with no
trailing zeros; ``()`` is the zero polynomial.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import lcm

from .errors import DivisionByZero
from .ff import Field, PrimeField


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def deg(a):
    return len(a) - 1


class PolyRing:
    """Arithmetic in F[x]; use :func:`PolyRing` (cached) to obtain one."""

    def __new__(cls, F):
        return _ring(F)

    @classmethod
    def _make(cls, F):
        obj = object.__new__(cls)
        obj.F = F
        return obj

    def __repr__(self):
        return f"PolyRing({self.F!r})"

    def __reduce__(self):
        return (PolyRing, (self.F,))

    # construction
    def const(self, c):
        return (c,) if c else ()

    def x(self):
        return (0, 1)

    def linear(self, a):
        """x - a."""
        return (self.F.neg(a), 1)

    # ring operations
    def add(self, a, b):
        F = self.F
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return trim(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return tuple(self.F.neg(c) for c in a)

    def scale(self, c, a):
        if c == 0:
            return ()
        F = self.F
        return tuple(F.mul(c, x) for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        F = self.F
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return trim(out)

    def divmod(self, a, b):
        if not b:
            raise DivisionByZero("polynomial division by zero")
        F = self.F
        if len(a) < len(b):
            return (), a
        r = list(a)
        db = len(b) - 1
        inv = F.inv(b[-1])
        q = [0] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = F.mul(c, inv)
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]))
        return trim(q), trim(r[:db])

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def div_exact(self, a, b):
        q, r = self.divmod(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self, a):
        if not a or a[-1] == 1:
            return a
        return self.scale(self.F.inv(a[-1]), a)

    def gcd(self, a, b):
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def xgcd(self, a, b):
        """(d, s, t) with d = s a + t b monic (or zero)."""
        r0, r1 = a, b
        s0, s1 = (1,), ()
        t0, t1 = (), (1,)
        while r1:
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        if not r0:
            return (), (), ()
        c = self.F.inv(r0[-1])
        return self.scale(c, r0), self.scale(c, s0), self.scale(c, t0)

    def invmod(self, a, m):
        d, s, _ = self.xgcd(a, m)
        if d != (1,):
            raise DivisionByZero("polynomial not invertible modulo m")
        return self.mod(s, m)

    def pow(self, a, e):
        result = (1,)
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def powmod(self, a, e, m):
        result, a = self.mod((1,), m), self.mod(a, m)
        while e:
            if e & 1:
                result = self.mod(self.mul(result, a), m)
            a = self.mod(self.mul(a, a), m)
            e >>= 1
        return result

    def eval(self, a, x):
        F, acc = self.F, 0
        for c in reversed(a):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def deriv(self, a):
        F = self.F
        return trim(F.mul(i % F.p, c) for i, c in enumerate(a) if i)

    def compose(self, a, b):
        """a(b(x))."""
        acc = ()
        for c in reversed(a):
            acc = self.add(self.mul(acc, b), self.const(c))
        return acc

    def shift(self, a, c):
        """a(x + c)."""
        return self.compose(a, trim((c, 1)))

    def reverse(self, a, n):
        """x^n a(1/x) for n >= deg a."""
        return trim((tuple(a) + (0,) * (n + 1 - len(a)))[::-1])

    def from_roots(self, roots):
        acc = (1,)
        for r in roots:
            acc = self.mul(acc, self.linear(r))
        return acc

    def is_squarefree(self, a):
        d = self.deriv(a)
        if not d:
            return False
        return deg(self.gcd(a, d)) == 0

    # factorisation-style queries over F_Q, Q = |F|
    def frobenius_power(self, m, k):
        """x^(Q^k) mod m."""
        Q = self.F.size
        xp = self.mod((0, 1), m)
        for _ in range(k):
            xp = self.powmod(xp, Q, m)
        return xp

    def distinct_degree(self, a):
        """[(d, product of irreducible factors of degree d)] for squarefree monic a."""
        out, rest, xp, d = [], self.monic(a), self.mod((0, 1), a), 0
        Q = self.F.size
        while deg(rest) >= 2 * (d + 1):
            d += 1
            xp = self.powmod(xp, Q, rest)
            g = self.gcd(rest, self.sub(xp, (0, 1)))
            if deg(g) > 0:
                out.append((d, g))
                rest = self.div_exact(rest, g)
                xp = self.mod(xp, rest)
        if deg(rest) > 0:
            out.append((deg(rest), rest))
        return out

    def is_irreducible(self, a):
        if deg(a) < 1:
            return False
        if deg(a) == 1:
            return True
        if not self.is_squarefree(a):
            return False
        parts = self.distinct_degree(a)
        return len(parts) == 1 and parts[0][0] == deg(a)

    def splitting_degree(self, a):
        """Degree over F of the splitting field of a (lcm of factor degrees)."""
        a = self.monic(a)
        if deg(a) < 1:
            return 1
        sq = self.squarefree_part(a)
        return lcm(*(d for d, _ in self.distinct_degree(sq))) if deg(sq) > 0 else 1

    def squarefree_part(self, a):
        """Product of the distinct monic irreducible factors of a."""
        a = self.monic(a)
        if deg(a) < 1:
            return (1,)
        d = self.deriv(a)
        if not d:
            # a = b(x^p): take p-th roots of coefficients
            F, p = self.F, self.F.p
            root = tuple(F.pow(c, F.size // p) for c in a[::p])
            return self.squarefree_part(root)
        g = self.gcd(a, d)
        core = self.div_exact(a, g)
        if deg(g) == 0:
            return core
        return self.monic(self.lcm(core, self.squarefree_part(g)))

    def lcm(self, a, b):
        return self.monic(self.div_exact(self.mul(a, b), self.gcd(a, b)))

    def roots(self, a):
        """Sorted distinct roots of a in F."""
        a = self.monic(trim(a))
        if deg(a) < 1:
            return []
        lin = self.gcd(a, self.sub(self.frobenius_power(a, 1), (0, 1)))
        if deg(lin) < 1:
            return []
        out = []
        rng = random.Random(0x5EED)
        self._split_linear(lin, out, rng)
        return sorted(out)

    def _split_linear(self, a, out, rng):
        F = self.F
        if deg(a) == 1:
            out.append(F.neg(a[0]))
            return
        if F.size <= 64:
            out.extend(r for r in range(F.size) if self.eval(a, r) == 0)
            return
        while True:
            c = rng.randrange(F.size)
            if F.p == 2:
                t = (0, 1) if c == 0 else trim((0, c))
                acc, cur = (), self.mod(t, a)
                for _ in range(F.m):
                    acc = self.add(acc, cur)
                    cur = self.mod(self.mul(cur, cur), a)
                cand = acc
            else:
                cand = self.sub(self.powmod(trim((c, 1)), (F.size - 1) // 2, a), (1,))
            g = self.gcd(a, cand)
            if 0 < deg(g) < deg(a):
                self._split_linear(g, out, rng)
                self._split_linear(self.div_exact(a, g), out, rng)
                return


class PrimePolyRing(PolyRing):
    """F_p[x] with inlined modular arithmetic on the hot paths."""

    def add(self, a, b):
        p = self.F.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def sub(self, a, b):
        p = self.F.p
        n = max(len(a), len(b))
        out = [0] * n
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = (out[i] - c) % p
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def neg(self, a):
        p = self.F.p
        return tuple(-c % p for c in a)

    def scale(self, c, a):
        if c == 0:
            return ()
        p = self.F.p
        return tuple(c * x % p for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        p = self.F.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        out = [c % p for c in out]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def divmod(self, a, b):
        if not b:
            raise DivisionByZero("polynomial division by zero")
        p = self.F.p
        if len(a) < len(b):
            return (), a
        r = list(a)
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        q = [0] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] % p
            if c:
                c = c * inv % p
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] -= c * b[j]
        rem = [x % p for x in r[:db]]
        while rem and rem[-1] == 0:
            rem.pop()
        while q and q[-1] == 0:
            q.pop()
        return tuple(q), tuple(rem)

    def eval(self, a, x):
        p, acc = self.F.p, 0
        for c in reversed(a):
            acc = (acc * x + c) % p
        return acc


@lru_cache(maxsize=None)
def _ring(F: Field):
    cls = PrimePolyRing if isinstance(F, PrimeField) else PolyRing
    return cls._make(F)
