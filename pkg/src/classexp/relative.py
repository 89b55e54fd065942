"""Bielliptic double covers y^2 = F(x^2) -> E: Y^2 = F(X) and their relative class groups.

The genus-2 curve X1 is kept in two models: the even model y^2 = F(x^2),
on which the cover is simply (x, y) -> (x^2, y), and an odd monic model
obtained by moving the Weierstrass point W = (x0, 0) to infinity, on which
Cantor arithmetic runs.  Classes on X1 are D - deg(D) W; classes on E are
points Q, standing for Q - O.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import lcm

from . import errors
from .bounds import relative_bound_part1, relative_bound_part2, relative_bound_sharp
from .curve import CurvePoint, WeierstrassChange, validate
from .ff import _divisors, field_from_spec, field_to_spec, make_extension
from .jacobian import IDENTITY, JacClass, Jacobian
from .nonfibral import CoveringMap
from .poly import PolyRing, deg


@dataclass(frozen=True, eq=False)
class BiellipticCover:
    field: object
    F: tuple  # monic cubic, low degree first
    even: object  # X1: y^2 = F(x^2)
    X2: object  # E: Y^2 = F(X)
    X1: object  # odd monic model of X1
    change: WeierstrassChange
    x0: int
    deg_phi: int = 2

    @property
    def q(self):
        return self.field.size

    @property
    def branch_point(self):
        """phi(W) = (x0^2, 0), a 2-torsion point of E."""
        F = self.field
        return F.mul(self.x0, self.x0)

    def to_spec(self):
        return {"field": field_to_spec(self.field), "F": list(self.F)}

    def __repr__(self):
        return f"BiellipticCover(q={self.q}, F={list(self.F)})"


def build_cover(F_coeffs, field):
    """Validate F and assemble the cover.

    Raises NotSquarefree, RootAtZero or NoSquareRoot (no root of F is a nonzero
    square, so X1 has no rational Weierstrass point to move to infinity).
    """
    K = field
    if K.p == 2:
        raise errors.PreconditionViolated("bielliptic covers need odd characteristic")
    R = PolyRing(K)
    Fp = tuple(F_coeffs)
    while Fp and Fp[-1] == 0:
        Fp = Fp[:-1]
    if deg(Fp) != 3 or Fp[-1] != 1:
        raise errors.BadDegree("F must be a monic cubic", F=list(F_coeffs))
    if not R.is_squarefree(Fp):
        raise errors.NotSquarefree("F has a repeated root", F=list(Fp))
    if Fp[0] == 0:
        raise errors.RootAtZero("F(0) = 0 makes F(x^2) singular", F=list(Fp))
    roots = [a for a in R.roots(Fp) if K.is_square(a)]
    if not roots:
        raise errors.NoSquareRoot("no root of F is a nonzero square", F=list(Fp))
    x0 = min(K.sqrt(roots[0]), K.neg(K.sqrt(roots[0])))
    f1 = R.compose(Fp, (0, 0, 1))
    if not R.is_squarefree(f1):
        raise errors.NotSquarefree("F(x^2) is not squarefree")  # pragma: no cover
    even = validate(K, (), f1)
    E = validate(K, (), Fp)
    change = WeierstrassChange(even, x0)
    return BiellipticCover(K, Fp, even, E, change.target, change, x0)


def cover_from_spec(spec):
    try:
        K = field_from_spec(spec["field"])
        coeffs = [int(c) % K.size if K.m == 1 else int(c) for c in spec["F"]]
    except KeyError as exc:
        raise errors.ClassExpError(f"cover spec is missing field {exc}") from exc
    return build_cover(coeffs, K)


# --- the covering map on points ---------------------------------------------------------


class PhiMap(CoveringMap):
    """(x, y) -> (x^2, y) from the even model of X1 onto E."""

    degree = 2

    def __init__(self, cover):
        self.cover = cover
        self.source, self.target = cover.even, cover.X2

    def image(self, P):
        ext = P.field
        if P.is_infinite:
            return CurvePoint(None, None, ext, 1)
        x2 = ext.mul(P.x, P.x)
        d = ext.degree_over(x2, self.cover.field.m)
        dy = ext.degree_over(P.y, self.cover.field.m)
        return CurvePoint(x2, P.y, ext, lcm(d, dy))

    def key(self, image):
        return image.key()

    def is_ramified(self, P):
        return not P.is_infinite and P.x == 0


def ramification_points(cover):
    """Geometric points of X1 at which phi ramifies, with the fibre sizes checked.

    Only the fibre over x = 0 can collapse; the two points at infinity both
    map to O with distinct values of y/x^3, so phi is unramified there.
    """
    K = cover.field
    ext, emb = make_extension(K, 2)
    out = [CurvePoint(0, y, ext, ext.degree_over(y, K.m))
           for y in ext.quadratic_roots(0, ext.neg(emb(cover.F[0])))]
    if len(cover.even.infinity_values(2)) != 2:
        raise errors.ConsistencyFailure("infinity fibre of phi collapsed")  # pragma: no cover
    return out


def riemann_hurwitz_holds(cover):
    g1, g2 = cover.X1.genus, cover.X2.genus
    return 2 * g1 - 2 == cover.deg_phi * (2 * g2 - 2) + len(ramification_points(cover))


# --- pullback and pushforward -----------------------------------------------------------


class CoverArithmetic:
    """Jacobians of both curves plus phi^* and phi_* on classes."""

    def __init__(self, cover):
        self.cover = cover
        self.J1 = Jacobian(cover.X1)
        self.JE = Jacobian(cover.X2)
        self._ext_cache = {}

    def pullback(self, c: JacClass):
        """phi^*(Q - O) for c the class of Q - O on E."""
        if c.is_identity:
            return IDENTITY
        cov, K = self.cover, self.cover.field
        a = K.neg(c.u[0])
        b = c.v[0] if c.v else 0
        x0 = cov.x0
        if a == K.mul(x0, x0):
            # phi^*(R) = W + W', and W is the base point
            u, v = (x0, 1), ()
        else:
            u, v = (K.neg(a), 0, 1), ((b,) if b else ())
        U, V = cov.change.divisor_forward(u, v)
        return self.J1.reduce_divisor(U, V)

    def _over(self, k):
        if k not in self._ext_cache:
            ext, emb = make_extension(self.cover.field, k)
            Ek = validate(ext, (), emb.poly(self.cover.F))
            self._ext_cache[k] = (ext, emb, Jacobian(Ek))
        return self._ext_cache[k]

    def pushforward(self, a: JacClass):
        """phi_*(D - deg(D) W) as a class on E."""
        if a.is_identity:
            return IDENTITY
        cov = self.cover
        R = PolyRing(cov.field)
        k = R.splitting_degree(a.u)
        ext, emb, JEk = self._over(k)
        Rk = PolyRing(ext)
        Uk, Vk = emb.poly(a.u), emb.poly(a.v)
        acc = IDENTITY
        for T in Rk.roots(Uk):
            mult, rest = 0, Uk
            while deg(rest) >= 1 and Rk.eval(rest, T) == 0:
                rest = Rk.div_exact(rest, Rk.linear(T))
                mult += 1
            S = Rk.eval(Vk, T)
            P = cov.change.backward(CurvePoint(T, S, ext, 1))
            if P.is_infinite:
                continue  # phi(infinity) = O
            X = ext.mul(P.x, P.x)
            pt = JacClass((ext.neg(X), 1), (P.y,) if P.y else ())
            acc = JEk.compose(acc, JEk.scalar_mul(pt, mult))
        if deg(a.u) % 2:
            # subtract deg(D) phi(W); phi(W) has order 2
            r = emb(cov.branch_point)
            acc = JEk.compose(acc, JacClass((ext.neg(r), 1), ()))
        return self._descend(acc, emb)

    @staticmethod
    def _descend(c, emb):
        u = tuple(emb.preimage(x) for x in c.u)
        v = tuple(emb.preimage(x) for x in c.v)
        if None in u or None in v:
            raise errors.ConsistencyFailure("pushforward is not Frobenius-stable")
        return JacClass(u, v)


# --- relative class group ----------------------------------------------------------------


@dataclass(frozen=True)
class RelativeProfile:
    h1: int
    e_order: int
    image_order: int
    kernel_order: int
    quotient_order: int
    quotient_exponent: int
    bounds: dict = field(default_factory=dict)
    passes: dict = field(default_factory=dict)
    projection_formula_ok: bool = True
    riemann_hurwitz_ok: bool = True

    @property
    def pass_all(self):
        return all(self.passes.values()) and self.projection_formula_ok and self.riemann_hurwitz_ok

    def as_dict(self):
        return {
            "h1": self.h1, "E_order": self.e_order, "image_order": self.image_order,
            "kernel_order": self.kernel_order, "quotient_order": self.quotient_order,
            "quotient_exponent": self.quotient_exponent,
            "bounds": {k: v.as_dict() for k, v in self.bounds.items()},
            "passes": dict(self.passes),
            "projection_formula_ok": self.projection_formula_ok,
            "riemann_hurwitz_ok": self.riemann_hurwitz_ok,
            "pass_all": self.pass_all,
        }


def relative_profile(cover, cap=1 << 20, gon1=2):
    arith = CoverArithmetic(cover)
    J1, JE = arith.J1, arith.JE
    classes = J1.enumerate_classes(cap)
    points = JE.enumerate_classes(cap)
    h1 = len(classes)
    images = [arith.pullback(c) for c in points]
    for img in images:
        if not J1.is_valid(img) and not img.is_identity:
            raise errors.ConsistencyFailure("pullback left Pic^0", image=img.as_dict())
    S = set(images)
    kernel = sum(1 for img in images if img.is_identity)
    if len(S) * kernel != len(points) or h1 % len(S):
        raise errors.ConsistencyFailure("image size inconsistent with kernel or h1")
    quotient = h1 // len(S)
    divs = _divisors(quotient)
    exponent = 1
    for a in classes:
        d = next(d for d in divs if J1.scalar_mul(a, d) in S)
        exponent = lcm(exponent, d)
    if quotient % exponent:
        raise errors.ConsistencyFailure("quotient exponent does not divide quotient order")
    projection_ok = all(arith.pushforward(img) == JE.double(c) for c, img in zip(points, images))
    q, g1, g2 = cover.q, cover.X1.genus, cover.X2.genus
    bounds = {
        "floor_form": relative_bound_part1(g1, g2, q),
        "degree_form": relative_bound_part2(g1, q, cover.deg_phi),
        "sharp_form": relative_bound_sharp(g1, gon1, q, cover.deg_phi),
    }
    passes = {k: exponent >= b.safe_lower for k, b in bounds.items()}
    return RelativeProfile(h1, len(points), len(S), kernel, quotient, exponent, bounds, passes,
                           projection_ok, riemann_hurwitz_holds(cover))


def enumerate_covers(field, limit=None):
    """Valid covers over ``field`` for every monic cubic F, in lexicographic order.

    Rejected cubics (NotSquarefree, RootAtZero, NoSquareRoot) are tallied.
    """
    K = field
    covers, rejected = [], Counter()
    for c0 in range(K.size):
        for c1 in range(K.size):
            for c2 in range(K.size):
                try:
                    covers.append(build_cover((c0, c1, c2, 1), K))
                except (errors.NotSquarefree, errors.RootAtZero, errors.NoSquareRoot) as exc:
                    rejected[exc.tag] += 1
                if limit is not None and len(covers) >= limit:
                    return covers, dict(rejected)
    return covers, dict(rejected)
