"""Rounding-safe evaluation of the class-group exponent bounds.

Every bound is a :class:`BoundValue`.  ``lower`` is a rational that is
certified to be at most the real value of the formula (irrational pieces are
enclosed with interval arithmetic or replaced by integer square roots that can
only weaken the bound); ``safe_lower`` is the integer bound it implies for the
integer quantity being bounded.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt

from mpmath import iv
from sympy import nextprime

from .errors import NoPrimeInInterval, PreconditionViolated
from .exact import DEFAULT_PREC, QuadSurd, to_interval, endpoints, log_interval, precision, sqrt_interval, sqrt_power

SRC_EXPONENT = "exponent bound (gonality form)"
SRC_EXPONENT_GON_FREE = "exponent bound (gonality-free form)"
SRC_ORDER_COUNT = "order count N(m)"
SRC_NONFIBRAL = "non-fibral degree-k point count"
SRC_REL_FLOOR = "relative exponent, floor(c sqrt(g1)/g2) form"
SRC_REL_DEGREE = "relative exponent, deg(phi) form"
SRC_REL_SHARP = "relative exponent, sharp max(gon, g1/(gon-1)) form"
STICHTENOTH = "Stichtenoth g^(1/3)/(4 log g) (comparison only)"


@dataclass(frozen=True)
class BoundValue:
    name: str
    provenance: str
    exact: Fraction | QuadSurd | None
    lower: Fraction
    safe_lower: int
    upper: Fraction | None = None
    details: dict = field(default_factory=dict, compare=False)

    def as_dict(self):
        out = {
            "name": self.name,
            "provenance": self.provenance,
            "exact": _fmt(self.exact),
            "lower": _fmt(self.lower),
            "safe_lower": self.safe_lower,
        }
        if self.upper is not None:
            out["upper"] = _fmt(self.upper)
        if self.details:
            out["details"] = {k: (v.as_dict() if isinstance(v, BoundValue) else _fmt(v))
                              for k, v in self.details.items()}
        return out

    def approx(self):
        if self.exact is not None:
            return float(self.exact)
        return float((self.lower + self.upper) / 2) if self.upper is not None else float(self.lower)


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, QuadSurd):
        return {"a": _fmt(x.a), "b": _fmt(x.b), "sqrt_of": x.d, "approx": float(x)}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


# --- integer helpers -----------------------------------------------------------


def ceil_log_q(x, q):
    """Smallest t >= 0 with q^t >= x (x >= 1, q >= 2)."""
    if x < 1 or q < 2:
        raise PreconditionViolated("ceil_log_q needs x >= 1 and q >= 2")
    t, power = 0, 1
    while power < x:
        power *= q
        t += 1
    return t


@lru_cache(maxsize=8)
def _base_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[:2] = b"\x00\x00"[: min(2, limit + 1)]
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


def _sieve_limit(n):
    # round sieve sizes up so repeated calls share a cached table
    limit = 1 << 12
    while limit < n:
        limit <<= 2
    return limit


def largest_prime_below(x):
    """Largest prime strictly less than x (a positive rational), or None."""
    x = Fraction(x)
    n = ceil(x) - 1
    if n < 2:
        return None
    if n <= 1 << 22:
        primes = _base_primes(_sieve_limit(n))
        return primes[bisect_left(primes, n + 1) - 1]
    base = _base_primes(_sieve_limit(isqrt(n) + 1))
    width = 1 << 16
    hi = n
    while hi >= 2:
        lo = max(2, hi - width + 1)
        seg = bytearray([1]) * (hi - lo + 1)
        for p in base:
            if p * p > hi:
                break
            start = max(p * p, -(-lo // p) * p)
            seg[start - lo :: p] = bytearray(len(range(start, hi + 1, p)))
        for i in range(hi - lo, -1, -1):
            if seg[i]:
                return lo + i
        hi = lo - 1
    return None  # pragma: no cover


def smallest_prime_in(lo, hi):
    p = nextprime(lo - 1)
    return p if p <= hi else None


# --- absolute exponent bounds ----------------------------------------------------------


def exponent_lower_bound(g, q, gon, prec=DEFAULT_PREC):
    """(max of the two gonality terms, gonality-free companion)."""
    if gon <= 1:
        raise PreconditionViolated("gonality must exceed 1")
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")
    t1 = ceil_log_q(2 * g + 1, q)
    t2 = ceil_log_q(7 * g + 1, q)
    first = Fraction(gon, 2 * t1)
    second = Fraction(g, 4 * (gon - 1) * t2)
    exact = max(first, second)
    main = BoundValue("exponent_lower_bound", SRC_EXPONENT, exact, exact, ceil(exact), exact,
                      {"gon_term": first, "genus_term": second,
                       "ceil_log_2g1": t1, "ceil_log_7g1": t2})
    return main, gonality_free_bound(g, q, prec)


def gonality_free_bound(g, q, prec=DEFAULT_PREC):
    """sqrt(g) / (4 log_q(7g+1)), enclosed."""
    sq_lo, sq_hi = sqrt_interval(g, prec)
    log_lo, log_hi = log_interval(7 * g + 1, q, prec)
    lo, hi = sq_lo / (4 * log_hi), sq_hi / (4 * log_lo)
    return BoundValue("gonality_free_bound", SRC_EXPONENT_GON_FREE, None, lo, ceil(lo), hi,
                      {"prec": prec})


def order_count_lower_bound(g, q, gon, m, prec=DEFAULT_PREC):
    """N(m): guaranteed number of classes of order >= m.

    ``safe_lower`` is the raw value max(isqrt(q^s) - 2g, isqrt(q^k) - 7g) and
    may be negative; ``details["guaranteed"]`` clamps it at zero.
    """
    if gon <= 1:
        raise PreconditionViolated("gonality must exceed 1")
    if m < 1:
        raise PreconditionViolated("m must be positive")
    s = -(-gon // m) - 1
    term_s = isqrt(q**s) - 2 * g
    exact_s = QuadSurd(0, 1, q) ** s - 2 * g
    k = largest_prime_below(Fraction(g, m * (gon - 1)))
    term_k = isqrt(q**k) - 7 * g if k is not None else None
    raw = term_s if term_k is None else max(term_s, term_k)
    exact = exact_s if term_k is None or exact_s >= term_k else QuadSurd(term_k)
    with precision(prec):
        comp = iv.mpf(q) ** (iv.sqrt(to_interval(g)) / (4 * m)) - 7 * g
        comp_lo, _ = endpoints(comp)
    details = {"s": s, "k": k, "term_s": term_s, "term_k": term_k,
               "guaranteed": max(0, raw), "closed_form_floor": floor(comp_lo), "m": m}
    return BoundValue("order_count_lower_bound", SRC_ORDER_COUNT, exact, Fraction(raw), raw,
                      None, details)


def nonfibral_lower_bound(g, q, k, deg_f):
    """Integer lower bound on the number of non-fibral degree-k points.

    q^(k/2) is replaced by U = ceil(sqrt(q^k)), which can only lower the value.
    """
    from sympy import isprime

    if not isprime(k):
        raise PreconditionViolated(f"k = {k} is not prime")
    if g < 1 or deg_f < 1:
        raise PreconditionViolated("need g >= 1 and deg f >= 1")
    qk = q**k
    r = isqrt(qk)
    U = r if r * r == qk else r + 1
    lower = Fraction(qk - 2 * g * (U + 1) - deg_f * (q + 3), k)
    exact = (sqrt_power(q, 2 * k) - 2 * g * (sqrt_power(q, k) + 1) - deg_f * (q + 3)) / k
    return BoundValue("nonfibral_lower_bound", SRC_NONFIBRAL, exact, lower, ceil(lower), None,
                      {"U": U, "rational_ceiling": exact.ceil()})


# --- relative bounds -----------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def relative_bound_part1(g1, g2, q, prec=DEFAULT_PREC):
    """floor(c sqrt(g1)/g2), c = min(1/16, g2/(4 log_q(14 g1 + 1)))."""
    if g1 < 2 or g2 < 1:
        raise PreconditionViolated("need g1 >= 2 and g2 >= 1")
    log_lo, log_hi = log_interval(14 * g1 + 1, q, prec)
    sq_lo, sq_hi = sqrt_interval(g1, prec)
    sixteenth = Fraction(1, 16)
    c_lo = min(sixteenth, Fraction(g2) / (4 * log_hi))
    c_hi = min(sixteenth, Fraction(g2) / (4 * log_lo))
    lower = c_lo * sq_lo / g2
    upper = c_hi * sq_hi / g2
    return BoundValue("relative_bound_part1", SRC_REL_FLOOR, None, lower, floor(lower), upper,
                      {"c_lower": c_lo, "c_upper": c_hi, "prec": prec})


@lru_cache(maxsize=1 << 16)
def relative_bound_part2(g1, q, deg_phi, prec=DEFAULT_PREC):
    """sqrt(g1) / (8 ceil(log_q(19 g1)) (deg phi - 1))."""
    if g1 < 2:
        raise PreconditionViolated("need g1 >= 2")
    if deg_phi < 2:
        raise PreconditionViolated("the covering must have degree >= 2")
    t = ceil_log_q(19 * g1, q)
    denom = 8 * t * (deg_phi - 1)
    exact = QuadSurd(0, Fraction(1, denom), g1)
    sq_lo, sq_hi = sqrt_interval(g1, prec)
    lower = sq_lo / denom
    return BoundValue("relative_bound_part2", SRC_REL_DEGREE, exact, lower, ceil(lower),
                      sq_hi / denom, {"ceil_log_19g1": t})


def relative_bound_sharp(g1, gon1, q, deg_phi):
    """max(gon1, g1/(gon1-1)) / (2 k (deg phi - 1)), k the least prime in [2t, 4t]."""
    if gon1 < 2:
        raise PreconditionViolated("gonality must be at least 2")
    if deg_phi < 2:
        raise PreconditionViolated("the covering must have degree >= 2")
    t = ceil_log_q(19 * g1, q)
    k = smallest_prime_in(2 * t, 4 * t)
    if k is None:
        raise NoPrimeInInterval(f"no prime in [{2 * t}, {4 * t}]")
    exact = Fraction(max(Fraction(gon1), Fraction(g1, gon1 - 1)), 2 * k * (deg_phi - 1))
    return BoundValue("relative_bound_sharp", SRC_REL_SHARP, exact, exact, ceil(exact), exact,
                      {"k": k, "interval": (2 * t, 4 * t)})


def stichtenoth_reference(g, log_base="e", prec=DEFAULT_PREC):
    """g^(1/3) / (4 log g) with an explicit log base; never used in verdicts."""
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")
    with precision(prec):
        num = to_interval(g) ** (iv.mpf(1) / 3)
        logg = iv.log(to_interval(g))
        if log_base != "e":
            logg = logg / iv.log(to_interval(log_base))
        lo, hi = endpoints(num / (4 * logg))
    return BoundValue("stichtenoth_reference", STICHTENOTH, None, lo, ceil(lo), hi,
                      {"log_base": str(log_base), "comparison_only": True})


def audit(bound_fn, *args, prec=DEFAULT_PREC, **kwargs):
    """Re-evaluate a bound at doubled precision; True when the first evaluation is sound.

    Sound means: ``lower`` lies below the refined enclosure's upper end (and
    below ``exact`` when that is available), and ``safe_lower`` does not exceed
    the refined integer bound.
    """
    a = bound_fn(*args, prec=prec, **kwargs)
    b = bound_fn(*args, prec=2 * prec, **kwargs)
    ok = True
    if a.exact is not None:
        ok &= a.lower <= a.exact
    ref_upper = b.upper if b.upper is not None else b.exact
    if ref_upper is not None:
        ok &= a.lower <= ref_upper
    ok &= a.safe_lower <= b.safe_lower
    return ok


# --- parameter explorer ---------------------------------------------------------------


@dataclass(frozen=True)
class ExplorerRow:
    q: int
    g1: int
    g2: int
    deg_phi: int
    bound_floor_form: int
    bound_degree_form: int
    riemann_hurwitz_feasible: bool

    def as_dict(self):
        return dict(self.__dict__)


def question_explorer(N, g1_range, g2_range, deg_range, q_range):
    """Triples whose two relative bounds both leave exponent N possible."""
    out = []
    for q in q_range:
        for g1 in g1_range:
            if g1 < 2:
                continue
            for g2 in g2_range:
                if g2 < 1:
                    continue
                b1 = relative_bound_part1(g1, g2, q).safe_lower
                if b1 > N:
                    continue
                for d in deg_range:
                    if d < 2:
                        continue
                    b2 = relative_bound_part2(g1, q, d).safe_lower
                    if b2 > N:
                        continue
                    rh = 2 * g1 - 2 >= d * (2 * g2 - 2)
                    out.append(ExplorerRow(q, g1, g2, d, b1, b2, rh))
    return out


# --- gonality -------------------------------------------------------------------------


@dataclass(frozen=True)
class GonalityInfo:
    lower: int
    value: int | None
    source: str
    warning: str | None = None


def gonality_bounds(counts, q, genus=None, hyperelliptic=True, override=None):
    """Point-count lower bound max_k ceil(N_k/(q^k+1)) and the value used downstream."""
    lower = max((ceil(Fraction(n, q**k + 1)) for k, n in enumerate(counts, 1)), default=1)
    if override is not None:
        value, source = int(override), "override"
    elif hyperelliptic and genus is not None and genus >= 1:
        value, source = 2, "model"
    else:
        value, source = None, "unknown"
    warning = None
    if value is not None and genus is not None and value > genus:
        warning = f"gonality {value} exceeds genus {genus}; the order-count form is then vacuous"
    if value is not None and lower > value:
        warning = f"point counts force gonality >= {lower} > {value}"
    return GonalityInfo(lower, value, source, warning)
