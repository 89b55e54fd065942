"""Non-fibral closed points of a curve with respect to a covering map.

A closed point of degree k (a Frobenius orbit of k geometric points) is
non-fibral for a separable map f when its k points have k distinct images and
f is unramified at each of them.
"""

from __future__ import annotations

from .curve import DEFAULT_CAP, CurvePoint, DivisorOrbit, degree_k_orbits, is_x_ramified
from .errors import InseparableUnsupported, PreconditionViolated
from .poly import PolyRing


class CoveringMap:
    """A finite map from ``source`` to ``target`` evaluated on geometric points."""

    source = None
    target = None
    degree = 2
    separable = True

    def image(self, P):
        raise NotImplementedError

    def key(self, image):
        """Hashable form of an image, used to compare images of orbit points."""
        return image

    def evaluate(self, P):
        return self.key(self.image(P))

    def is_ramified(self, P):
        raise NotImplementedError


class XMap(CoveringMap):
    """The hyperelliptic double cover (x, y) -> x onto the projective line."""

    target = "P1"
    degree = 2

    def __init__(self, curve):
        self.source = curve

    def __repr__(self):
        return f"XMap({self.source!r})"

    def image(self, P):
        return None if P.is_infinite else P.x

    def key(self, image):
        return ("inf",) if image is None else ("x", image)

    def is_ramified(self, P):
        return is_x_ramified(self.source, P)


class ComposedMap(CoveringMap):
    """outer o inner, where inner lands on ``outer.source``."""

    def __init__(self, outer, inner):
        self.outer, self.inner = outer, inner
        self.source, self.target = inner.source, outer.target
        self.degree = outer.degree * inner.degree
        self.separable = outer.separable and inner.separable

    def __repr__(self):
        return f"ComposedMap({self.outer!r}, {self.inner!r})"

    def image(self, P):
        return self.outer.image(self.inner.image(P))

    def key(self, image):
        return self.outer.key(image)

    def is_ramified(self, P):
        return self.inner.is_ramified(P) or self.outer.is_ramified(self.inner.image(P))


def is_nonfibral(orbit: DivisorOrbit, f: CoveringMap):
    if not f.separable:
        raise InseparableUnsupported("only separable coverings are supported")
    points = orbit.points or (orbit.representative,)
    images = {f.evaluate(P) for P in points}
    if len(images) != len(points):
        return False
    return not any(f.is_ramified(P) for P in points)


def orbit_of(curve, P):
    """Full Frobenius orbit of P as a DivisorOrbit with P as representative."""
    pts = [P]
    Q = curve.frobenius(P)
    while Q.key() != P.key():
        pts.append(Q)
        Q = curve.frobenius(Q)
    return DivisorOrbit(P, len(pts), 1, tuple(pts))


def _check_prime(k):
    from sympy import isprime

    if not isprime(k):
        raise PreconditionViolated(f"k = {k} must be prime")


def count_nonfibral(curve, f: CoveringMap, k, cap=DEFAULT_CAP):
    """Number of degree-k closed points of ``curve`` that are non-fibral for f."""
    _check_prime(k)
    return sum(1 for orb in degree_k_orbits(curve, k, cap) if is_nonfibral(orb, f))


def count_nonfibral_xfiber(curve, k, cap=DEFAULT_CAP):
    """Second counting path for the x-map, classifying fibres instead of points.

    For prime k a non-fibral degree-k point has x of exact degree k, and each
    such x whose fibre consists of two distinct F_{q^k}-points contributes two
    points; every orbit is then counted k times.
    """
    _check_prime(k)
    if curve.q**k > cap:
        from .errors import CapExceeded

        raise CapExceeded(f"q^k = {curve.q**k} exceeds cap {cap}")
    ext, emb, hk, fk = curve.over(k)
    R = PolyRing(ext)
    n = curve.field.m
    split = 0
    for x in ext.elements():
        if ext.degree_over(x, n) != k:
            continue
        hx, fx = R.eval(hk, x), R.eval(fk, x)
        if len(ext.quadratic_roots(hx, ext.neg(fx))) == 2:
            split += 1
    return 2 * split // k


def nonfibral_report(curve, k, cap=DEFAULT_CAP):
    """{count, bound, pass} for the x-map."""
    from .bounds import nonfibral_lower_bound

    f = XMap(curve)
    count = count_nonfibral(curve, f, k, cap)
    bound = nonfibral_lower_bound(curve.genus, curve.q, k, f.degree)
    return {"k": k, "count": count, "bound": bound.safe_lower, "pass": count >= bound.safe_lower}


__all__ = [
    "CoveringMap", "XMap", "ComposedMap", "CurvePoint", "is_nonfibral", "orbit_of",
    "count_nonfibral", "count_nonfibral_xfiber", "nonfibral_report",
]
