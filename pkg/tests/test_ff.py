import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classexp.errors import DivisionByZero, FieldError
from classexp.ff import GF, field_from_spec, field_to_spec, is_irreducible_mod_p, make_extension, smallest_irreducible

FIELDS = [GF(2), GF(3), GF(7), GF(2, 2), GF(2, 3), GF(3, 2), GF(5, 2), GF(2, 8), GF(3, 5), GF(2, 17)]


def test_f4_modulus_is_the_unique_irreducible_quadratic():
    F4, emb = make_extension(GF(2), 2)
    assert F4.size == 4
    assert tuple(F4.modulus) == (1, 1, 1)


def test_f4_product_t_times_t_plus_one():
    F = GF(2, 2)
    t = F.from_coeffs([0, 1])
    assert F.mul(t, F.add(t, 1)) == 1


def test_trivial_extension_is_identity():
    F3 = GF(3)
    ext, emb = make_extension(F3, 1)
    assert ext is F3
    assert emb.is_identity()
    assert [emb(a) for a in F3.elements()] == list(F3.elements())


def test_f4_into_f64_generator_has_order_three():
    F4 = GF(2, 2)
    F64, emb = make_extension(F4, 3)
    assert F64.size == 64
    t = emb(F4.from_coeffs([0, 1]))
    # satisfies the base modulus t^2 + t + 1 = 0
    assert F64.add(F64.add(F64.mul(t, t), t), 1) == 0
    assert F64.order(t) == 3


def test_frobenius_on_f9_fixes_exactly_f3():
    F9 = GF(3, 2)
    fixed = [a for a in F9.elements() if F9.frobenius(a) == a]
    assert len(fixed) == 3


def test_smallest_irreducible_is_lexicographic():
    # over F_3 the monic quadratics x^2 + c1 x + c0 ordered by (c0, c1): x^2 + 1 comes first
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    for p, m in [(2, 3), (2, 4), (3, 3), (5, 2)]:
        mod = smallest_irreducible(p, m)
        assert mod[-1] == 1 and len(mod) == m + 1
        assert is_irreducible_mod_p(mod, p)


def test_smallest_irreducible_matches_brute_force():
    p, m = 3, 3
    cands = []
    for n in range(p**m):
        low = [(n // p**i) % p for i in range(m)]
        if is_irreducible_mod_p(tuple(low) + (1,), p):
            cands.append(tuple(low))
    assert smallest_irreducible(p, m) == min(cands) + (1,)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_division_by_zero_is_reported(F):
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.div(1, 0)


@pytest.mark.parametrize("F", [F for F in FIELDS if F.size <= 4096], ids=repr)
def test_every_element_satisfies_a_to_the_q_equals_a(F):
    q = F.size
    assert all(F.pow(a, q) == a for a in F.elements())
    assert len(set(F.elements())) == q


@pytest.mark.parametrize("base,k", [(GF(2), 4), (GF(3), 3), (GF(2, 2), 2), (GF(3, 2), 2), (GF(5), 2)])
def test_embedding_is_an_injective_ring_map(base, k):
    ext, emb = make_extension(base, k)
    els = list(base.elements())
    images = [emb(a) for a in els]
    assert len(set(images)) == len(els)
    for a in els:
        assert emb.preimage(emb(a)) == a
        for b in els[:16]:
            assert emb(base.mul(a, b)) == ext.mul(emb(a), emb(b))
            assert emb(base.add(a, b)) == ext.add(emb(a), emb(b))


def test_frobenius_relative_to_base_fixes_embedded_base():
    base = GF(2, 2)
    ext, emb = make_extension(base, 3)
    fixed = {a for a in ext.elements() if ext.frobenius(a, 1, base_degree=2) == a}
    assert fixed == {emb(a) for a in base.elements()}


def field_and_elements(n):
    return st.sampled_from(FIELDS).flatmap(
        lambda F: st.tuples(st.just(F), *[st.integers(0, F.size - 1)] * n))


@settings(max_examples=300, deadline=None)
@given(field_and_elements(3))
def test_field_axioms(args):
    F, a, b, c = args
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.mul(F.div(b, a), a) == b


@settings(max_examples=200, deadline=None)
@given(field_and_elements(2), st.integers(0, 50), st.integers(0, 50))
def test_power_laws_and_frobenius_homomorphism(args, e1, e2):
    F, a, b = args
    assert F.mul(F.pow(a, e1), F.pow(a, e2)) == F.pow(a, e1 + e2)
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


@settings(max_examples=200, deadline=None)
@given(field_and_elements(2))
def test_square_roots_and_quadratic_roots(args):
    F, a, b = args
    s = F.mul(a, a)
    assert F.is_square(s)
    r = F.sqrt(s)
    assert F.mul(r, r) == s
    for y in F.quadratic_roots(a, b):
        assert F.add(F.add(F.mul(y, y), F.mul(a, y)), b) == 0


def test_quadratic_root_count_matches_enumeration():
    for F in (GF(3), GF(2, 3), GF(3, 2), GF(2, 4)):
        for b in range(F.size):
            for c in range(F.size):
                brute = sorted(y for y in F.elements() if F.add(F.add(F.mul(y, y), F.mul(b, y)), c) == 0)
                assert F.quadratic_roots(b, c) == brute


def test_field_spec_round_trip():
    F = GF(3, 2)
    assert field_from_spec(field_to_spec(F)) == F
    assert field_from_spec({"p": 7}) == GF(7)
    with pytest.raises(FieldError):
        field_from_spec({"n": 2})
