"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every curve-level check runs on the full genus-2 corpus over F_3 (162 odd
monic models), plus the seeded 500-curve F_5 sample where a criterion names it.
"""

import random
from fractions import Fraction
from math import comb

from sympy import isprime

from classexp.bounds import (
    audit,
    exponent_lower_bound,
    gonality_bounds,
    gonality_free_bound,
    largest_prime_below,
    nonfibral_lower_bound,
    order_count_lower_bound,
    stichtenoth_reference,
)
from classexp.curve import count_points
from classexp.jacobian import order_count
from classexp.nonfibral import XMap, count_nonfibral
from classexp.relative import CoverArithmetic, relative_profile
from classexp.zeta import l_polynomial, predicted_counts, weil_interval

GROUP_LAW_TRIPLES = 1000


def _weil_ok(h, g, q):
    """(sqrt q - 1)^2g <= h <= (sqrt q + 1)^2g, decided in integers."""
    A = sum(comb(2 * g, i) * q ** (i // 2) for i in range(0, 2 * g + 1, 2))
    B = sum(comb(2 * g, i) * q ** (i // 2) for i in range(1, 2 * g + 1, 2))
    upper = h <= A or (h - A) ** 2 <= B * B * q
    lower = h >= A or (A - h) ** 2 <= B * B * q
    return lower and upper and h >= 1


def test_c1_zeta_self_consistency(f3_curves, f5_sample, criterion):
    bad = []
    for c in f3_curves + f5_sample:
        z = l_polynomial(c, check_cap=0)  # built from N_1, N_2 only
        pred = predicted_counts(z.l_coeffs, c.q, 4)
        brute = [count_points(c, k) for k in (3, 4)]
        if list(pred[2:4]) != brute:
            bad.append(c)
    ok = len(f3_curves) == 162 and len(f5_sample) == 500 and not bad
    criterion(1, "L-polynomial from N1, N2 predicts N3, N4 exactly",
              ok, f"{len(f3_curves)} F3 + {len(f5_sample)} F5 curves, {len(bad)} mismatches")
    assert ok


def test_c2_class_number_oracle(f3_data, criterion):
    bad = [d for d in f3_data if len(d.classes) != sum(d.zeta.l_coeffs)]
    ok = len(f3_data) == 162 and not bad
    criterion(2, "#enumerate_classes = L(1)", ok, f"{len(f3_data)} curves, {len(bad)} mismatches")
    assert ok


def test_c3_weil_interval(f3_data, f5_sample, criterion):
    bad = []
    for d in f3_data:
        lo, hi = weil_interval(2, 3)
        h = d.zeta.class_number
        if not (_weil_ok(h, 2, 3) and 1 <= lo.ceil() <= h <= hi.floor() and h <= 55):
            bad.append(d.curve)
    for c in f5_sample:
        h = l_polynomial(c).class_number
        lo, hi = weil_interval(2, 5)
        if not (_weil_ok(h, 2, 5) and 1 <= lo.ceil() <= h <= hi.floor()):
            bad.append(c)
    ok = not bad and weil_interval(2, 3)[1].floor() == 55
    criterion(3, "Weil interval contains h", ok, f"{len(f3_data) + len(f5_sample)} curves, {len(bad)} outside")
    assert ok


def test_c4_exponent_bound(f3_data, criterion):
    main, _ = exponent_lower_bound(100, 2, 2)
    small, _ = exponent_lower_bound(2, 3, 2)
    formula_ok = main.exact == Fraction(5, 2) and small.exact == Fraction(1, 2)
    bad, evaluated = [], 0
    for d in f3_data:
        gon = gonality_bounds(d.zeta.counts, 3, genus=2)
        assert gon.value == 2
        b, _ = exponent_lower_bound(2, 3, gon.value)
        evaluated += 1
        if d.profile.exponent < b.safe_lower:
            bad.append(d.curve)
    ok = formula_ok and evaluated == 162 and not bad
    criterion(4, "exponent >= safe exponent bound; worked values 5/2 and 1/2", ok,
              f"{evaluated} curves, {len(bad)} violations")
    assert ok


def test_c5_order_count(f3_data, criterion):
    formula_ok = order_count_lower_bound(100, 2, 2, 3).safe_lower == 45640
    bad, raw = [], set()
    for d in f3_data:
        for m in range(1, d.profile.exponent + 1):
            n_m = order_count_lower_bound(2, 3, 2, m).safe_lower
            raw.add(n_m)
            if order_count(d.profile, m) < max(0, n_m):
                bad.append((d.curve, m))
    ok = formula_ok and not bad
    criterion(5, "order_count(m) >= max(0, N(m)); N(3) = 45640 reproduced", ok,
              f"raw N(m) values {sorted(raw)}, {len(bad)} violations")
    assert ok


def test_c6_nonfibral_counts(f3_curves, f5_sample, criterion):
    cases = [(c, k) for c in f3_curves for k in (3, 5)] + [(c, 3) for c in f5_sample]
    bad, positive = [], set()
    for c, k in cases:
        bound = nonfibral_lower_bound(2, c.q, k, 2).safe_lower
        if bound > 0:
            positive.add((c.q, k, bound))
        if count_nonfibral(c, XMap(c), k) < bound:
            bad.append((c, k))
    ok = not bad and (3, 5, 33) in positive and (5, 3, 19) in positive
    criterion(6, "non-fibral count >= positive lower bound", ok,
              f"{len(cases)} (curve, k) pairs, positive bounds {sorted(positive)}, {len(bad)} violations")
    assert ok


def test_c7_relative_module(covers, criterion):
    bad = []
    for cov in covers:
        prof = relative_profile(cov)
        ar = CoverArithmetic(cov)
        a_ok = prof.image_order * prof.quotient_order == prof.h1
        b_ok = all(ar.pushforward(ar.pullback(c)) == ar.JE.double(c) for c in ar.JE.enumerate_classes())
        c_ok = all(prof.quotient_exponent >= b.safe_lower for b in prof.bounds.values())
        if not (a_ok and b_ok and c_ok and prof.pass_all):
            bad.append(cov)
    ok = len(covers) >= 25 and not bad
    criterion(7, "relative class group: orders, projection formula, bounds", ok,
              f"{len(covers)} covers over F5 and F7, {len(bad)} failures")
    assert ok


def test_c8_group_law(f3_data, criterion):
    failures = 0
    for i, d in enumerate(f3_data):
        J, classes, h = d.jac, d.classes, len(d.classes)
        rng = random.Random(1000 + i)
        for _ in range(GROUP_LAW_TRIPLES):
            a, b, c = rng.choice(classes), rng.choice(classes), rng.choice(classes)
            ab = J.compose(a, b)
            ok = (J.compose(ab, c) == J.compose(a, J.compose(b, c))
                  and ab == J.compose(b, a)
                  and J.compose(a, J.neg(a)).is_identity
                  and J.scalar_mul(a, h).is_identity)
            failures += not ok
    ok = failures == 0
    criterion(8, "associativity, commutativity, inverse, Lagrange", ok,
              f"{len(f3_data)} curves x {GROUP_LAW_TRIPLES} triples, {failures} failures")
    assert ok


def _main_bound(g, q, gon, prec):
    return exponent_lower_bound(g, q, gon, prec=prec)[0]


def test_c9_bound_audit(criterion):
    failures = []
    for g in (2, 3, 5, 10, 50, 100, 1000, 10**4):
        for q in (2, 3, 4, 5, 7, 9, 25, 101):
            if not audit(gonality_free_bound, g, q):
                failures.append(("gonality_free", g, q))
            for gon in (2, 3, 5):
                if not audit(_main_bound, g, q, gon):
                    failures.append(("exponent", g, q, gon))
                for m in (1, 3, 10):
                    if not audit(order_count_lower_bound, g, q, gon, m):
                        failures.append(("order_count", g, q, gon, m))
        if not audit(stichtenoth_reference, g):
            failures.append(("reference", g))

    limit = 10**6
    prime_mismatch, last = 0, None
    for x in range(2, limit + 1):
        if largest_prime_below(x) != last:
            prime_mismatch += 1
        if isprime(x):
            last = x
    ok = not failures and prime_mismatch == 0
    criterion(9, "doubled-precision audit; largest_prime_below vs primality scan", ok,
              f"{len(failures)} audit failures, {prime_mismatch} prime mismatches up to {limit}")
    assert ok
