import itertools
import random
from collections import Counter
from math import gcd, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classexp import errors
from classexp.curve import validate
from classexp.ff import GF
from classexp.jacobian import (
    IDENTITY,
    Jacobian,
    element_order,
    factor,
    group_profile,
    invariant_factors_from_histogram,
    order_count,
)
from classexp.sweep import enumerate_curves
from classexp.zeta import l_polynomial


def test_elliptic_reference_group(x3_minus_x):
    prof = group_profile(Jacobian(x3_minus_x))
    assert prof.h == 4
    assert prof.exponent in (2, 4)
    assert prof.h <= prof.exponent**2
    assert prof.exponent == 2 and prof.invariant_factors == (2, 2)


def test_class_count_matches_l_of_one(x5_minus_x):
    jac = Jacobian(x5_minus_x)
    classes = jac.enumerate_classes()
    assert len(classes) == l_polynomial(x5_minus_x).class_number == 16
    assert IDENTITY in classes
    assert len(set(classes)) == len(classes)
    assert all(jac.is_valid(a) for a in classes if not a.is_identity)


def test_even_model_is_rejected():
    c = validate(GF(5), (), (1, 0, 2, 0, 0, 0, 1))
    with pytest.raises(errors.JacobianUnavailable):
        Jacobian(c)


def test_enumeration_cap(x5_minus_x):
    with pytest.raises(errors.CapExceeded):
        Jacobian(x5_minus_x).enumerate_classes(cap=10)


def test_element_orders(x5_minus_x):
    jac = Jacobian(x5_minus_x)
    classes = jac.enumerate_classes()
    fac = factor(len(classes))
    assert element_order(jac, IDENTITY, fac) == 1
    for a in classes:
        n = element_order(jac, a, fac)
        assert jac.scalar_mul(a, n).is_identity
        for ell in factor(n):
            assert not jac.scalar_mul(a, n // ell).is_identity


def test_profile_consistency_on_corpus(f3_data):
    for d in f3_data:
        prof, g, p = d.profile, d.curve.genus, d.curve.field.p
        hist = prof.order_histogram
        assert prof.h == d.zeta.class_number == sum(hist.values())
        assert max(hist) == prof.exponent == lcm(*hist)
        assert prof.h % prof.exponent == 0
        assert prof.h <= prof.exponent ** (2 * g)
        inv = prof.invariant_factors
        assert inv[-1] == prof.exponent
        prod = 1
        for x in inv:
            prod *= x
        assert prod == prof.h
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
        for ell in factor(prof.h):
            assert prof.ell_rank(ell) <= (g if ell == p else 2 * g)


def test_order_count_examples_and_recount(f3_data):
    for d in f3_data[::5]:
        prof, jac = d.profile, d.jac
        e, h = prof.exponent, prof.h
        assert order_count(prof, 1) == h
        assert order_count(prof, e + 1) == 0
        assert order_count(prof, 2) == h - 1
        fac = factor(h)
        orders = [element_order(jac, a, fac) for a in d.classes]
        for m in range(1, e + 2):
            assert order_count(prof, m) == sum(1 for o in orders if o >= m)


def brute_histogram(moduli):
    hist = Counter()
    for elem in itertools.product(*[range(n) for n in moduli]):
        o = 1
        for x, n in zip(elem, moduli):
            o = lcm(o, n // gcd(x, n))
        hist[o] += 1
    return hist


@pytest.mark.parametrize("moduli,expected", [
    ((2, 4), (2, 4)),
    ((8,), (8,)),
    ((3, 9, 3), (3, 3, 9)),
    ((2, 3, 4, 5), (2, 60)),
    ((6, 10), (2, 30)),
    ((1,), ()),
])
def test_invariant_factors_of_known_groups(moduli, expected):
    assert invariant_factors_from_histogram(brute_histogram(moduli)) == expected


def test_sampled_mode_is_a_lower_bound(f3_data):
    for d in f3_data[::9]:
        s1 = group_profile(d.jac, "sampled", h=d.profile.h, seed=11, samples=16)
        s2 = group_profile(d.jac, "sampled", h=d.profile.h, seed=11, samples=16)
        assert s1 == s2
        assert s1.exponent_is_lower_bound and s1.invariant_factors is None
        assert d.profile.exponent % s1.exponent == 0
        with pytest.raises(errors.SampledProfileUnsupported):
            order_count(s1, 1)
    with pytest.raises(errors.PreconditionViolated):
        group_profile(f3_data[0].jac, "sampled")


def test_mismatched_class_number_is_an_inconsistency(x5_minus_x):
    with pytest.raises(errors.ConsistencyFailure):
        group_profile(Jacobian(x5_minus_x), h=15)


CHAR2 = [c for c in enumerate_curves(GF(2), 2)[0][::9]] + enumerate_curves(GF(2, 2), 1)[0][::11]


@pytest.mark.parametrize("curve", CHAR2, ids=repr)
def test_char2_group_law(curve):
    jac = Jacobian(curve)
    classes = jac.enumerate_classes()
    h = l_polynomial(curve).class_number
    assert len(classes) == h
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = (rng.choice(classes) for _ in range(3))
        assert jac.compose(jac.compose(a, b), c) == jac.compose(a, jac.compose(b, c))
        assert jac.compose(a, b) == jac.compose(b, a)
        assert jac.compose(a, jac.neg(a)).is_identity
        assert jac.scalar_mul(a, h).is_identity


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(-40, 40), st.integers(-40, 40))
def test_scalar_multiplication_is_additive(seed, m, n):
    curve = validate(GF(7), (), (3, 1, 0, 2, 0, 1))
    jac = Jacobian(curve)
    a = jac.random_class(random.Random(seed))
    assert jac.compose(jac.scalar_mul(a, m), jac.scalar_mul(a, n)) == jac.scalar_mul(a, m + n)
    assert jac.scalar_mul(a, -1) == jac.neg(a)


def test_from_point_and_reduce_divisor(x5_minus_x):
    from classexp.curve import iter_points

    jac = Jacobian(x5_minus_x)
    pts = [P for P in iter_points(x5_minus_x) if not P.is_infinite]
    total = IDENTITY
    for P in pts:
        total = jac.compose(total, jac.from_point(P))
    # the five affine Weierstrass points add up to div(y), a principal divisor
    assert len(pts) == 5 and total.is_identity
    assert jac.reduce_divisor(x5_minus_x.f, ()).is_identity
