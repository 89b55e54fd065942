"""Hyperelliptic curves y^2 + h(x) y = f(x) over F_q.

Covers validation, brute-force point counting over F_{q^k}, closed points
(Frobenius orbits) of a given degree, ramification of the x-map, and the
coordinate changes that produce an odd-degree model with a single point at
infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

from sympy import mobius

from . import errors
from .ff import Field, _divisors, field_from_spec, make_extension
from .poly import PolyRing, deg, trim

DEFAULT_CAP = 1 << 32
WITNESS_FIELD_LIMIT = 1 << 16


@dataclass(frozen=True)
class CurvePoint:
    """A point of the smooth model over some F_{q^k}.

    ``x is None`` marks a point at infinity.  For even models ``y`` then holds
    the value of y/x^(g+1) there; the odd model's single infinite point has
    ``y is None`` too.
    """

    x: int | None
    y: int | None
    field: Field
    degree: int = 1

    @property
    def is_infinite(self):
        return self.x is None

    def key(self):
        return (-1 if self.x is None else self.x, -1 if self.y is None else self.y)


@dataclass(frozen=True)
class DivisorOrbit:
    """A closed point of degree k: Frobenius orbit of ``representative``."""

    representative: CurvePoint
    k: int
    multiplicity: int = 1
    points: tuple = dc_field(default=(), compare=False, repr=False)

    @property
    def degree(self):
        return self.k * self.multiplicity


@dataclass(frozen=True, eq=True)
class HyperellipticCurve:
    field: Field
    h: tuple
    f: tuple
    genus: int
    odd: bool

    @property
    def model_parity(self):
        return "odd" if self.odd else "even"

    @property
    def q(self):
        return self.field.size

    @property
    def ring(self):
        return PolyRing(self.field)

    def __repr__(self):
        return (f"HyperellipticCurve({self.field!r}, h={list(self.h)}, f={list(self.f)}, "
                f"g={self.genus}, {self.model_parity})")

    def to_spec(self):
        from .ff import field_to_spec

        return {"field": field_to_spec(self.field), "h": list(self.h), "f": list(self.f)}

    # data over extensions -------------------------------------------------
    def over(self, k):
        return _curve_over(self, k)

    def infinity_values(self, k=1):
        """Values of y/x^(g+1) at the infinite points defined over F_{q^k}."""
        if self.odd:
            return [None]
        ext, emb, hk, fk = self.over(k)
        g = self.genus
        lead_h = hk[g + 1] if len(hk) > g + 1 else 0
        return ext.quadratic_roots(lead_h, ext.neg(fk[2 * g + 2]))

    @cached_property
    def hyperelliptic_discriminant(self):
        """h^2 + 4f (odd characteristic); its roots are the ramified x-values."""
        R = self.ring
        return R.add(R.mul(self.h, self.h), R.scale(4 % self.field.p, self.f))

    def is_on_curve(self, P):
        if P.is_infinite:
            return True
        k = P.field.m // self.field.m
        ext, emb, hk, fk = self.over(k)
        R = PolyRing(ext)
        lhs = ext.add(ext.mul(P.y, P.y), ext.mul(R.eval(hk, P.x), P.y))
        return lhs == R.eval(fk, P.x)

    def frobenius(self, P, steps=1):
        n = self.field.m
        F = P.field
        x = None if P.x is None else F.frobenius(P.x, steps, n)
        y = None if P.y is None else F.frobenius(P.y, steps, n)
        return CurvePoint(x, y, F, P.degree)


@lru_cache(maxsize=256)
def _curve_over(curve, k):
    ext, emb = make_extension(curve.field, k)
    return ext, emb, emb.poly(curve.h), emb.poly(curve.f)


# --- validation ----------------------------------------------------------------


def validate(field, h, f):
    """Validate raw coefficients (encoded elements, low degree first)."""
    F = field
    h, f = trim(h), trim(f)
    if any(not 0 <= c < F.size for c in h + f):
        raise errors.FieldError(f"coefficient out of range for {F!r}")
    if F.p == 2 and not h:
        raise errors.Char2NeedsH("characteristic 2 requires h != 0")
    df = deg(f)
    if df < 3:
        raise errors.BadDegree(f"deg f = {df} gives no curve of genus >= 1", deg_f=df)
    g = (df - 1) // 2
    odd = df % 2 == 1
    dh = deg(h)
    if dh > (g if odd else g + 1):
        raise errors.BadDegree(f"deg h = {dh} too large for deg f = {df}", deg_h=dh, deg_f=df)
    R = PolyRing(F)
    if not odd:
        lead_h = h[g + 1] if len(h) > g + 1 else 0
        if F.p == 2:
            if not lead_h:
                raise errors.BadDegree("even model in characteristic 2 needs deg h = g + 1")
        elif F.add(F.mul(lead_h, lead_h), F.mul(4 % F.p, f[-1])) == 0:
            raise errors.SingularModel("singular at infinity", at_infinity=True)
    if F.p == 2:
        dh_ = R.deriv(h)
        df_ = R.deriv(f)
        bad = R.gcd(h, R.add(R.mul(R.mul(dh_, dh_), f), R.mul(df_, df_)))
    else:
        D = R.add(R.mul(h, h), R.scale(4 % F.p, f))
        bad = R.gcd(D, R.deriv(D))
    if deg(bad) > 0:
        raise errors.SingularModel("affine model is singular", witness=_singular_witness(F, h, f, bad))
    return HyperellipticCurve(F, h, f, g, odd)


def _singular_witness(F, h, f, bad):
    R = PolyRing(F)
    k = R.splitting_degree(bad)
    if F.size**k > WITNESS_FIELD_LIMIT:
        return None
    ext, emb = make_extension(F, k)
    Re = PolyRing(ext)
    roots = Re.roots(emb.poly(bad))
    if not roots:
        return None  # pragma: no cover
    x0 = roots[0]
    hx, fx = Re.eval(emb.poly(h), x0), Re.eval(emb.poly(f), x0)
    if F.p == 2:
        y0 = ext.sqrt(fx)
    else:
        y0 = ext.div(ext.neg(hx), 2)
    return {"k": k, "x": list(ext.coeffs(x0)), "y": list(ext.coeffs(y0))}


def _coerce_coeff(F, c):
    if isinstance(c, list):
        return F.from_coeffs(c)
    c = int(c)
    if F.m > 1:
        if not 0 <= c < F.size:
            raise errors.FieldError(f"encoded element {c} out of range for {F!r}")
        return c
    return c % F.p


def curve_from_spec(spec):
    """Parse the curve JSON form {"field": {...}, "h": [...], "f": [...]}."""
    try:
        F = field_from_spec(spec["field"])
        h = [_coerce_coeff(F, c) for c in spec.get("h", [])]
        f = [_coerce_coeff(F, c) for c in spec["f"]]
    except KeyError as exc:
        raise errors.ClassExpError(f"curve spec is missing field {exc}") from exc
    return validate(F, h, f)


# --- counting ----------------------------------------------------------------------


def _check_cap(curve, k, cap):
    size = curve.q**k
    if size > cap:
        raise errors.CapExceeded(f"q^k = {size} exceeds cap {cap}", size=size, cap=cap)


def count_points(curve, k=1, cap=DEFAULT_CAP):
    """#X(F_{q^k}) on the smooth projective model, by brute force over x."""
    _check_cap(curve, k, cap)
    ext, emb, hk, fk = curve.over(k)
    total = len(curve.infinity_values(k))
    add, mul = ext.add, ext.mul
    if ext.p == 2:
        mask = _trace_mask(ext)
        for x in ext.elements():
            hx = 0
            for c in reversed(hk):
                hx = add(mul(hx, x), c)
            if not hx:
                total += 1
                continue
            fx = 0
            for c in reversed(fk):
                fx = add(mul(fx, x), c)
            a = ext.div(fx, mul(hx, hx))
            if bin(a & mask).count("1") % 2 == 0:
                total += 2
        return total
    D = emb.poly(curve.hyperelliptic_discriminant)
    is_square = ext.is_square
    for x in ext.elements():
        dx = 0
        for c in reversed(D):
            dx = add(mul(dx, x), c)
        if not dx:
            total += 1
        elif is_square(dx):
            total += 2
    return total


@lru_cache(maxsize=64)
def _trace_mask(F):
    mask = 0
    for i in range(F.m):
        if F.trace(1 << i):
            mask |= 1 << i
    return mask


def iter_points(curve, k=1, cap=DEFAULT_CAP):
    """Every point of X(F_{q^k}), affine points ordered by (x, y)."""
    _check_cap(curve, k, cap)
    ext, emb, hk, fk = curve.over(k)
    R = PolyRing(ext)
    n = curve.field.m
    for Y in curve.infinity_values(k):
        d = 1 if Y is None else ext.degree_over(Y, n)
        yield CurvePoint(None, Y, ext, d)
    for x in ext.elements():
        hx, fx = R.eval(hk, x), R.eval(fk, x)
        for y in ext.quadratic_roots(hx, ext.neg(fx)):
            yield CurvePoint(x, y, ext, _point_degree(ext, n, x, y))


def _point_degree(ext, n, x, y):
    dx = ext.degree_over(x, n)
    dy = ext.degree_over(y, n)
    return dx * dy // _gcd(dx, dy)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def degree_k_orbits(curve, k, cap=DEFAULT_CAP):
    """One orbit per closed point of degree exactly k, ordered by representative."""
    seen, out = set(), []
    for P in iter_points(curve, k, cap):
        if P.degree != k or P.key() in seen:
            continue
        orbit = [P]
        Q = curve.frobenius(P)
        while Q.key() != P.key():
            orbit.append(Q)
            Q = curve.frobenius(Q)
        seen.update(R.key() for R in orbit)
        rep = min(orbit, key=CurvePoint.key)
        out.append(DivisorOrbit(rep, k, 1, tuple(sorted(orbit, key=CurvePoint.key))))
    out.sort(key=lambda o: o.representative.key())
    return out


def orbit_count_from_counts(counts, k):
    """(1/k) * sum_{d | k} mu(k/d) N_d, with counts[d-1] = N_d."""
    total = sum(int(mobius(k // d)) * counts[d - 1] for d in _divisors(k))
    if total % k:
        raise errors.ConsistencyFailure("Moebius sum not divisible by k")
    return total // k


# --- ramification of x --------------------------------------------------------------


def ramification_polynomial(curve):
    """Polynomial whose roots are the x-coordinates of ramified affine points."""
    return curve.h if curve.field.p == 2 else curve.hyperelliptic_discriminant


def x_map_ramification(curve):
    """Points of X over its splitting field where x has ramification index 2."""
    R = curve.ring
    poly = ramification_polynomial(curve)
    out = []
    if curve.odd:
        out.append(CurvePoint(None, None, curve.field, 1))
    if deg(poly) < 1:
        return out
    k = R.splitting_degree(poly)
    ext, emb, hk, fk = curve.over(k)
    Re = PolyRing(ext)
    n = curve.field.m
    for x0 in Re.roots(emb.poly(poly)):
        hx = Re.eval(hk, x0)
        if ext.p == 2:
            y0 = ext.sqrt(Re.eval(fk, x0))
        else:
            y0 = ext.div(ext.neg(hx), 2)
        out.append(CurvePoint(x0, y0, ext, _point_degree(ext, n, x0, y0)))
    return out


def is_x_ramified(curve, P):
    if P.is_infinite:
        return curve.odd
    k = P.field.m // curve.field.m
    ext, emb, hk, fk = curve.over(k)
    hx = PolyRing(ext).eval(hk, P.x)
    if ext.p == 2:
        return hx == 0
    return ext.add(ext.add(P.y, P.y), hx) == 0


# --- model changes ------------------------------------------------------------------


class ModelChange:
    """Isomorphism between a source model and an odd target model."""

    source: HyperellipticCurve
    target: HyperellipticCurve

    def forward(self, P):
        raise NotImplementedError

    def backward(self, P):
        raise NotImplementedError


class IdentityChange(ModelChange):
    def __init__(self, curve):
        self.source = self.target = curve

    def forward(self, P):
        return P

    def backward(self, P):
        return P


class ScalingChange(ModelChange):
    """Odd model with leading coefficient c: X = c x, Y = c^g y."""

    def __init__(self, curve):
        F, g = curve.field, curve.genus
        c = curve.f[-1]
        self.c = c
        ci = F.inv(c)
        h_new = trim(F.mul(hc, F.mul(F.pow(c, g), F.pow(ci, i))) for i, hc in enumerate(curve.h))
        f_new = trim(F.mul(fc, F.mul(F.pow(c, 2 * g), F.pow(ci, i))) for i, fc in enumerate(curve.f))
        self.source = curve
        self.target = validate(F, h_new, f_new)

    def _ext(self, P):
        k = P.field.m // self.source.field.m
        ext, emb = make_extension(self.source.field, k)
        return ext, emb(self.c)

    def forward(self, P):
        if P.is_infinite:
            return P
        ext, c = self._ext(P)
        return CurvePoint(ext.mul(c, P.x), ext.mul(ext.pow(c, self.source.genus), P.y), ext, P.degree)

    def backward(self, P):
        if P.is_infinite:
            return P
        ext, c = self._ext(P)
        return CurvePoint(ext.div(P.x, c), ext.div(P.y, ext.pow(c, self.source.genus)), ext, P.degree)


class WeierstrassChange(ModelChange):
    """Even model -> odd model sending the Weierstrass point (x0, y0) to infinity.

    With t = 1/(x - x0) and s = (y - y0) t^(g+1), the target coordinates are
    T = t / c and S = s / c^(g+1), where c is the linear Taylor coefficient at
    x0 of f - y0^2 - h y0; this makes the odd model monic.
    """

    def __init__(self, curve, x0):
        F, R, g = curve.field, curve.ring, curve.genus
        if curve.odd:
            raise errors.NotWeierstrass("model is already odd")
        hx = R.eval(curve.h, x0)
        if F.p == 2:
            if hx:
                raise errors.NotWeierstrass("h(x0) != 0", x0=x0)
            y0 = F.sqrt(R.eval(curve.f, x0))
        else:
            y0 = F.div(F.neg(hx), 2)
            if F.add(F.mul(y0, y0), F.mul(hx, y0)) != R.eval(curve.f, x0):
                raise errors.NotWeierstrass("no point with 2y + h(x0) = 0 above x0", x0=x0)
        h1 = R.add(curve.h, R.const(F.add(y0, y0)))
        f1 = R.sub(R.sub(curve.f, R.const(F.mul(y0, y0))), R.scale(y0, curve.h))
        F1, H1 = R.shift(f1, x0), R.shift(h1, x0)
        c = F1[1] if len(F1) > 1 else 0
        if not c:
            raise errors.SingularModel("Weierstrass point is singular")  # pragma: no cover
        f_t = R.reverse(F1, 2 * g + 2)
        h_t = R.reverse(H1, g + 1)
        f_new = trim(F.mul(a, F.div(F.pow(c, i), F.pow(c, 2 * g + 2))) for i, a in enumerate(f_t))
        h_new = trim(F.mul(a, F.div(F.pow(c, i), F.pow(c, g + 1))) for i, a in enumerate(h_t))
        self.source, self.x0, self.y0, self.c = curve, x0, y0, c
        self.target = validate(F, h_new, f_new)
        if self.target.genus != curve.genus or not self.target.odd:
            raise errors.ConsistencyFailure("Weierstrass transform changed the genus")  # pragma: no cover

    def _consts(self, P):
        k = P.field.m // self.source.field.m
        ext, emb = make_extension(self.source.field, k)
        return ext, emb(self.x0), emb(self.y0), emb(self.c)

    def forward(self, P):
        ext, x0, y0, c = self._consts(P)
        g = self.source.genus
        cg = ext.pow(c, g + 1)
        if P.is_infinite:
            return CurvePoint(0, ext.div(P.y, cg), ext, P.degree)
        if P.x == x0:
            return CurvePoint(None, None, ext, 1)
        t = ext.inv(ext.sub(P.x, x0))
        s = ext.mul(ext.sub(P.y, y0), ext.pow(t, g + 1))
        return CurvePoint(ext.div(t, c), ext.div(s, cg), ext, P.degree)

    def backward(self, P):
        ext, x0, y0, c = self._consts(P)
        g = self.source.genus
        cg = ext.pow(c, g + 1)
        if P.is_infinite:
            return CurvePoint(x0, y0, ext, 1)
        if P.x == 0:
            return CurvePoint(None, ext.mul(P.y, cg), ext, P.degree)
        t = ext.mul(c, P.x)
        x = ext.add(x0, ext.inv(t))
        y = ext.add(y0, ext.div(ext.mul(P.y, cg), ext.pow(t, g + 1)))
        return CurvePoint(x, y, ext, P.degree)

    def divisor_forward(self, u, v):
        """Map the divisor {u(x) = 0, y = v(x)} (u coprime to x - x0) to odd-model Mumford data."""
        F, R = self.source.field, self.source.ring
        g, c = self.source.genus, self.c
        d = deg(u)
        if d < 1:
            return (1,), ()
        ut = R.reverse(R.shift(u, self.x0), d)  # t^d u(x0 + 1/t)
        U = R.monic(trim(F.mul(a, F.pow(c, i)) for i, a in enumerate(ut)))
        if not U or U[0] == 0:
            raise errors.ClassExpError("divisor meets the Weierstrass point")
        cT = R.scale(c, (0, 1))
        x_minus_x0 = R.invmod(cT, U)  # 1/t
        w = R.shift(R.sub(v, R.const(self.y0)), self.x0)  # (v - y0)(x0 + X)
        acc = ()
        for a in reversed(w):
            acc = R.mod(R.add(R.mul(acc, x_minus_x0), R.const(a)), U)
        V = R.mod(R.mul(acc, R.pow((0, 1), g + 1)), U)
        return U, V


def move_weierstrass_to_infinity(curve, x0):
    change = WeierstrassChange(curve, x0)
    return change.target, change


def rational_weierstrass_x(curve):
    """Sorted x-coordinates of rational affine Weierstrass points."""
    return PolyRing(curve.field).roots(ramification_polynomial(curve))


def to_odd_model(curve):
    """(odd monic model, change) or JacobianUnavailable."""
    if curve.odd:
        if curve.f[-1] == 1:
            return curve, IdentityChange(curve)
        ch = ScalingChange(curve)
        return ch.target, ch
    xs = rational_weierstrass_x(curve)
    if not xs:
        raise errors.JacobianUnavailable("even model without a rational Weierstrass point")
    ch = WeierstrassChange(curve, xs[0])
    return ch.target, ch
