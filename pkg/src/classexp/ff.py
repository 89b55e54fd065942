"""Finite fields F_{p^m} in a polynomial basis, elements encoded as integers.

An element c_0 + c_1 t + ... + c_{m-1} t^{m-1} of F_p[t]/(modulus) is stored
as the integer sum c_i p^i, so the elements of a field are exactly
``range(field.size)``; zero is 0 and one is 1.  Fields with at most
``TABLE_LIMIT`` elements carry exp/log/Zech tables; larger ones fall back to
schoolbook polynomial arithmetic.

Extensions F_{q^k} of F_q = F_{p^n} are realised as degree n*k fields over F_p
together with an explicit embedding (see :func:`make_extension`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime

from .errors import DivisionByZero, FieldError

TABLE_LIMIT = 1 << 16
ENUM_LIMIT = 1 << 64


# --- polynomials over F_p as digit lists (low degree first) ---------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mulmod_digits(a, b, mod, p):
    """(a * b) mod (monic ``mod``) over F_p; all arguments digit lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _reduce_digits(out, mod, p)


def _reduce_digits(a, mod, p):
    n = len(mod) - 1
    a = [c % p for c in a]
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            for j in range(n):
                a[i - n + j] = (a[i - n + j] - c * mod[j]) % p
            a[i] = 0
    return _trim(a[: max(n, 0)] if len(a) > n else a)


def _gcd_digits(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - c * bj) % p
            _trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _powx_digits(e, mod, p):
    """x^e mod ``mod`` over F_p."""
    result, base = [1], _reduce_digits([0, 1], mod, p)
    while e:
        if e & 1:
            result = _mulmod_digits(result, base, mod, p)
        base = _mulmod_digits(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible_mod_p(modulus, p):
    """Deterministic irreducibility test for a monic polynomial over F_p.

    f of degree n is irreducible iff gcd(f, x^(p^i) - x) = 1 for 1 <= i <= n/2.
    """
    f = _trim([c % p for c in modulus])
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    xp = [0, 1]
    for _ in range(n // 2):
        # x^(p^i) = (x^(p^(i-1)))^p, computed as repeated multiplication
        acc = [1]
        base, e = xp, p
        while e:
            if e & 1:
                acc = _mulmod_digits(acc, base, f, p)
            base = _mulmod_digits(base, base, f, p)
            e >>= 1
        xp = acc
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _gcd_digits(f, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p, m):
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Coefficient vectors (c_0, ..., c_{m-1}) are compared low degree first.
    """
    if m == 1:
        return (0, 1)
    for c0 in range(1, p):  # c0 = 0 would make x a factor
        for rest in itertools.product(range(p), repeat=m - 1):
            cand = (c0,) + rest + (1,)
            if is_irreducible_mod_p(cand, p):
                return cand
    raise FieldError(f"no irreducible of degree {m} over F_{p}")  # pragma: no cover


# --- fields ---------------------------------------------------------------


class Field:
    """F_{p^m} = F_p[t]/(modulus).  Construct through :func:`GF`."""

    def __init__(self, p, modulus):
        self.p = p
        self.modulus = tuple(modulus)
        self.m = len(self.modulus) - 1
        self.size = p**self.m
        self._mod_list = list(self.modulus)

    # identity
    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (GF, (self.p, self.m, self.modulus))

    @property
    def characteristic(self):
        return self.p

    # encoding
    def coeffs(self, a):
        p, out = self.p, []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs):
        cs = list(cs)
        if len(cs) > self.m:
            raise FieldError(f"too many coefficients for {self!r}")
        value = 0
        for c in reversed(cs):
            value = value * self.p + c % self.p
        return value

    def __call__(self, x):
        """Coerce an int (residue mod p) or coefficient sequence into an element."""
        if isinstance(x, FieldElem):
            return x.value
        if isinstance(x, int):
            return x % self.p
        return self.from_coeffs(x)

    def elem(self, x):
        return FieldElem(self, self(x))

    def elements(self):
        if self.size > ENUM_LIMIT:
            raise FieldError(f"{self!r} is too large to enumerate")
        return range(self.size)

    # arithmetic shared by every representation
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.size - 1
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a, steps=1, base_degree=1):
        """a -> a^(Q^steps) with Q = p^base_degree."""
        if a == 0:
            return 0
        return self.pow(a, pow(self.p, base_degree * steps, self.size - 1))

    def order(self, a):
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.size - 1
        o = n
        for ell in _factor(n):
            while o % ell == 0 and self.pow(a, o // ell) == 1:
                o //= ell
        return o

    def degree_over(self, a, base_degree=1):
        """Degree of F_Q(a) over F_Q, Q = p^base_degree (base_degree | m)."""
        rel = self.m // base_degree
        for d in _divisors(rel):
            if self.frobenius(a, d, base_degree) == a:
                return d
        return rel  # pragma: no cover

    def trace(self, a):
        """Absolute trace F_{p^m} -> F_p, returned as an int in [0, p)."""
        t, x = 0, a
        for _ in range(self.m):
            t = self.add(t, x)
            x = self.frobenius(x)
        return t

    def is_square(self, a):
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.size - 1) // 2) == 1

    def sqrt(self, a):
        """A square root of a, or None when a is not a square."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.size // 2)
        if not self.is_square(a):
            return None
        return self._tonelli(a)

    def _tonelli(self, a):
        q = self.size
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = 2
        while self.is_square(z):
            z += 1
        mm, c = s, self.pow(z, t)
        r, tt = self.pow(a, (t + 1) // 2), self.pow(a, t)
        while tt != 1:
            i, x = 0, tt
            while x != 1:
                x = self.mul(x, x)
                i += 1
            b = self.pow(c, 1 << (mm - i - 1))
            mm, c = i, self.mul(b, b)
            r, tt = self.mul(r, b), self.mul(tt, c)
        return r

    def artin_schreier(self, a):
        """A solution z of z^2 + z = a (characteristic 2), or None."""
        if self.p != 2:
            raise FieldError("Artin-Schreier solve needs characteristic 2")
        # z -> z^2 + z is F_2-linear on the bit encoding; solve by elimination
        m = self.m
        rows = []  # (image bitmask, preimage bitmask) kept in echelon form
        for i in range(m):
            rows.append((self.add(self.mul(1 << i, 1 << i), 1 << i), 1 << i))
        basis = {}
        for img, pre in rows:
            while img:
                top = img.bit_length() - 1
                if top in basis:
                    bi, bp = basis[top]
                    img, pre = img ^ bi, pre ^ bp
                else:
                    basis[top] = (img, pre)
                    break
        target, sol = a, 0
        while target:
            top = target.bit_length() - 1
            if top not in basis:
                return None
            bi, bp = basis[top]
            target, sol = target ^ bi, sol ^ bp
        return sol

    def quadratic_roots(self, b, c):
        """Sorted distinct roots of y^2 + b y + c in this field."""
        if self.p == 2:
            if b == 0:
                return [self.sqrt(c)]
            b2 = self.mul(b, b)
            z = self.artin_schreier(self.div(c, b2))
            if z is None:
                return []
            r1 = self.mul(b, z)
            return sorted({r1, self.add(r1, b)})
        disc = self.sub(self.mul(b, b), self.mul(4 % self.p, c))
        s = self.sqrt(disc)
        if s is None:
            return []
        half = self.inv(2)
        nb = self.neg(b)
        return sorted({self.mul(self.add(nb, s), half), self.mul(self.sub(nb, s), half)})

    def primitive_element(self):
        n = self.size - 1
        ells = _factor(n)
        for a in range(1, self.size):
            if all(self.pow(a, n // ell) != 1 for ell in ells):
                return a
        raise FieldError("no primitive element")  # pragma: no cover


class PrimeField(Field):
    """F_p; elements are residues."""

    def __init__(self, p):
        super().__init__(p, (0, 1))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def frobenius(self, a, steps=1, base_degree=1):
        return a

    def trace(self, a):
        return a

    def is_square(self, a):
        if a == 0 or self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1


class TableField(Field):
    """F_{p^m}, m > 1, small enough for exp/log/Zech tables."""

    def __init__(self, p, modulus):
        super().__init__(p, modulus)
        n = self.size - 1
        self._n = n
        g = self._find_generator()
        exp = [0] * (2 * n)
        x = [1]
        gd = self._digits(g)
        for i in range(n):
            exp[i] = self._encode(x)
            x = _mulmod_digits(x, gd, self._mod_list, p)
        exp[n:] = exp[:n]
        log = [-1] * self.size
        for i in range(n):
            log[exp[i]] = i
        self._exp, self._log = exp, log
        self.generator = g
        zech = [-1] * n
        for i in range(n):
            e = exp[i]
            c0 = e % p
            one_plus = e - c0 + (c0 + 1) % p
            zech[i] = log[one_plus] if one_plus else -1
        self._zech = zech
        if p == 2:
            self._neg = None
        else:
            half = n // 2
            self._neg = [0] + [exp[log[a] + half] for a in range(1, self.size)]

    def _digits(self, a):
        return _trim(list(self.coeffs(a)))

    def _encode(self, digits):
        value = 0
        for c in reversed(digits):
            value = value * self.p + c
        return value

    def _find_generator(self):
        n = self.size - 1
        ells = _factor(n)
        for a in range(2, self.size):
            ad = self._digits(a)

            def slow_pow(e):
                acc, base = [1], ad
                while e:
                    if e & 1:
                        acc = _mulmod_digits(acc, base, self._mod_list, self.p)
                    base = _mulmod_digits(base, base, self._mod_list, self.p)
                    e >>= 1
                return acc

            if all(slow_pow(n // ell) != [1] for ell in ells):
                return a
        raise FieldError("no generator")  # pragma: no cover

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        log = self._log
        la = log[a]
        d = log[b] - la
        if d < 0:
            d += self._n
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        return a if self.p == 2 else self._neg[a]

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        la = self._log[a]
        return self._exp[self._n - la if la else 0]

    def div(self, a, b):
        if not b:
            raise DivisionByZero(f"division by zero in {self!r}")
        if not a:
            return 0
        d = self._log[a] - self._log[b]
        return self._exp[d if d >= 0 else d + self._n]

    def pow(self, a, e):
        if not a:
            if e < 0:
                raise DivisionByZero(f"inverse of zero in {self!r}")
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % self._n]

    def log(self, a):
        return self._log[a]

    def is_square(self, a):
        return a == 0 or self.p == 2 or self._log[a] % 2 == 0

    def sqrt(self, a):
        if not a:
            return 0
        la = self._log[a]
        if self.p == 2:
            return self._exp[la * (self.size // 2) % self._n]
        if la % 2:
            return None
        return self._exp[la // 2]

    def primitive_element(self):
        return self.generator


class PolyField(Field):
    """F_{p^m} too large for tables: schoolbook arithmetic on digit lists."""

    def _digits(self, a):
        return _trim(list(self.coeffs(a)))

    def _encode(self, digits):
        value = 0
        for c in reversed(digits):
            value = value * self.p + c % self.p
        return value

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        da, db = self.coeffs(a), self.coeffs(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.p == 2:
            return a
        return self._encode([-x % self.p for x in self.coeffs(a)])

    def mul(self, a, b):
        return self._encode(_mulmod_digits(self._digits(a), self._digits(b), self._mod_list, self.p))

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        return Field.pow(self, a, self.size - 2)


@lru_cache(maxsize=None)
def GF(p, m=1, modulus=None):
    """The field with p^m elements (canonical instance per (p, modulus))."""
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("degree must be positive")
    if m == 1 and modulus in (None, (0, 1), [0, 1]):
        return PrimeField(p)
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    modulus = tuple(c % p for c in modulus)
    if len(modulus) != m + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {m}")
    if m == 1:
        # any monic linear modulus gives F_p; keep the residue convention
        return PrimeField(p)
    if not is_irreducible_mod_p(modulus, p):
        raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
    if p**m <= TABLE_LIMIT:
        return TableField(p, modulus)
    return PolyField(p, modulus)


def field_from_spec(spec):
    """Build a field from the JSON form {"p": int, "n": int, "modulus": [...]}."""
    try:
        p = int(spec["p"])
        n = int(spec.get("n", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise FieldError(f"bad field spec {spec!r}: {exc}") from exc
    modulus = spec.get("modulus")
    return GF(p, n, tuple(modulus) if modulus is not None else None)


def field_to_spec(F):
    return {"p": F.p, "n": F.m, "modulus": list(F.modulus)}


@dataclass(frozen=True)
class FieldElem:
    """Value-semantics wrapper around an encoded element."""

    field: Field
    value: int

    @property
    def coeffs(self):
        return self.field.coeffs(self.value)

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def frobenius(self, steps=1, base_degree=1):
        return FieldElem(self.field, self.field.frobenius(self.value, steps, base_degree))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}{list(self.coeffs)}"


# --- extensions -------------------------------------------------------------


class Embedding:
    """Injective ring map F_q -> F_{q^k} sending t to a root of q's modulus."""

    def __init__(self, base, ext, root):
        self.base, self.ext, self.root = base, ext, root
        powers = [1]
        for _ in range(base.m - 1):
            powers.append(ext.mul(powers[-1], root))
        self._powers = powers
        self._table = None
        self._inverse = None
        if base.size <= TABLE_LIMIT:
            self._table = [self._image(a) for a in range(base.size)]
            self._inverse = {b: a for a, b in enumerate(self._table)}

    def _image(self, a):
        ext, out = self.ext, 0
        for c, pw in zip(self.base.coeffs(a), self._powers):
            if c:
                out = ext.add(out, ext.mul(c, pw))
        return out

    def __call__(self, a):
        if self._table is not None:
            return self._table[a]
        return self._image(a)

    def poly(self, coeffs):
        return tuple(self(c) for c in coeffs)

    def preimage(self, b):
        """Inverse image of b, or None if b lies outside the embedded base field."""
        if self._inverse is not None:
            return self._inverse.get(b)
        raise FieldError("preimage needs a tabulated base field")  # pragma: no cover

    def is_identity(self):
        return self.base == self.ext


@lru_cache(maxsize=None)
def make_extension(base, k):
    """(F_{q^k}, embedding F_q -> F_{q^k}) for the base field F_q.

    The extension carries the default (lexicographically smallest) modulus of
    degree m*k over F_p; the embedding sends the base generator to the
    smallest-encoded root of the base modulus.
    """
    if k < 1:
        raise FieldError("extension degree must be positive")
    if k == 1:
        return base, Embedding(base, base, base.p if base.m > 1 else 0)
    ext = GF(base.p, base.m * k)
    if base.m == 1:
        return ext, Embedding(base, ext, 0)
    from .poly import PolyRing

    R = PolyRing(ext)
    roots = R.roots(tuple(base.modulus))
    if not roots:
        raise FieldError("base modulus has no root in the extension")  # pragma: no cover
    return ext, Embedding(base, ext, min(roots))


# --- small integer helpers ------------------------------------------------------


@lru_cache(maxsize=4096)
def _factor(n):
    return tuple(sorted(factorint(n))) if n > 1 else ()


def _divisors(n):
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))
