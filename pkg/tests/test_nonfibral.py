import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classexp import errors
from classexp.bounds import nonfibral_lower_bound
from classexp.curve import count_points, degree_k_orbits, orbit_count_from_counts, validate
from classexp.ff import GF
from classexp.nonfibral import (
    ComposedMap,
    CoveringMap,
    XMap,
    count_nonfibral,
    count_nonfibral_xfiber,
    is_nonfibral,
    nonfibral_report,
    orbit_of,
)
from classexp.relative import PhiMap


@pytest.fixture
def cubic_times_quadratic():
    """y^2 = (x^3 + 2x + 1)(x^2 + 1) over F_3; both factors irreducible."""
    return validate(GF(3), (), (1, 2, 1, 0, 0, 1))


def _x_degree(P, curve):
    return P.field.degree_over(P.x, curve.field.m)


def test_rational_weierstrass_points_are_fibral(x5_minus_x):
    f = XMap(x5_minus_x)
    orbits = [o for o in degree_k_orbits(x5_minus_x, 1)
              if o.representative.is_infinite or o.representative.y == 0]
    assert len(orbits) == 6
    assert not any(is_nonfibral(o, f) for o in orbits)


def test_degree_three_weierstrass_orbit_is_fibral(cubic_times_quadratic):
    c = cubic_times_quadratic
    weier = [o for o in degree_k_orbits(c, 3) if o.representative.y == 0]
    assert len(weier) == 1
    # three distinct images, so only the ramification condition rules it out
    assert len({P.x for P in weier[0].points}) == 3
    assert not is_nonfibral(weier[0], XMap(c))


def test_orbit_with_shared_x_is_fibral(cubic_times_quadratic):
    c = cubic_times_quadratic
    shared = [o for o in degree_k_orbits(c, 2)
              if not o.representative.is_infinite and _x_degree(o.representative, c) == 1]
    assert shared
    for o in shared:
        assert len({P.x for P in o.points}) == 1
        assert not is_nonfibral(o, XMap(c))


@pytest.mark.parametrize("k", [2, 3])
def test_exact_degree_x_with_nonzero_f_is_nonfibral(cubic_times_quadratic, k):
    c = cubic_times_quadratic
    hits = 0
    for o in degree_k_orbits(c, k):
        P = o.representative
        if P.is_infinite:
            continue
        expected = _x_degree(P, c) == k and P.y != 0
        assert is_nonfibral(o, XMap(c)) == expected
        hits += expected
    assert hits > 0


def test_x5_minus_x_k3_meets_bound(x5_minus_x):
    bound = nonfibral_lower_bound(2, 5, 3, 2).safe_lower
    assert bound == 19
    rep = nonfibral_report(x5_minus_x, 3)
    assert rep["bound"] == 19
    assert rep["count"] >= 19 and rep["pass"]


def test_count_at_most_number_of_closed_points(f3_curves):
    for c in f3_curves[::7]:
        counts = [count_points(c, d) for d in range(1, 6)]
        for k in (2, 3, 5):
            assert count_nonfibral(c, XMap(c), k) <= orbit_count_from_counts(counts, k)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_xfiber_oracle_agrees(f3_curves, k):
    for c in f3_curves[::5]:
        assert count_nonfibral(c, XMap(c), k) == count_nonfibral_xfiber(c, k)


def test_xfiber_oracle_agrees_in_char_2():
    c = validate(GF(2), (0, 0, 1), (1, 1, 0, 0, 0, 1))
    for k in (2, 3, 5, 7):
        assert count_nonfibral(c, XMap(c), k) == count_nonfibral_xfiber(c, k)


@settings(max_examples=25, deadline=None)
@given(idx=st.integers(0, 161), k=st.sampled_from([2, 3]))
def test_frobenius_invariance(f3_curves, idx, k):
    c = f3_curves[idx]
    f = XMap(c)
    for o in degree_k_orbits(c, k):
        answers = {is_nonfibral(orbit_of(c, P), f) for P in o.points}
        assert answers == {is_nonfibral(o, f)}


def test_orbit_of_recovers_orbit(x5_minus_x):
    for o in degree_k_orbits(x5_minus_x, 2):
        rebuilt = orbit_of(x5_minus_x, o.points[-1])
        assert rebuilt.k == 2
        assert {P.key() for P in rebuilt.points} == {P.key() for P in o.points}


def test_non_prime_k_rejected(x5_minus_x):
    with pytest.raises(errors.PreconditionViolated):
        count_nonfibral(x5_minus_x, XMap(x5_minus_x), 4)
    with pytest.raises(errors.PreconditionViolated):
        count_nonfibral_xfiber(x5_minus_x, 1)


def test_cap_enforced(x5_minus_x):
    with pytest.raises(errors.CapExceeded):
        count_nonfibral(x5_minus_x, XMap(x5_minus_x), 3, cap=100)
    with pytest.raises(errors.CapExceeded):
        count_nonfibral_xfiber(x5_minus_x, 3, cap=100)


def test_inseparable_map_rejected(x5_minus_x):
    class Frobenius(CoveringMap):
        separable = False

    orbit = degree_k_orbits(x5_minus_x, 1)[0]
    with pytest.raises(errors.InseparableUnsupported):
        is_nonfibral(orbit, Frobenius())


@pytest.mark.parametrize("k", [2, 3])
def test_composition_monotonicity_on_covers(covers, k):
    """Non-fibral for x o phi implies non-fibral for phi."""
    seen_composite = 0
    for cov in covers[:: 8]:
        phi = PhiMap(cov)
        xphi = ComposedMap(XMap(cov.X2), phi)
        assert xphi.degree == 4
        for o in degree_k_orbits(cov.even, k):
            if is_nonfibral(o, xphi):
                seen_composite += 1
                assert is_nonfibral(o, phi)
    assert seen_composite > 0
