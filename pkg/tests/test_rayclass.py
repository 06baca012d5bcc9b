import random

import pytest
from hypothesis import given, settings, strategies as st

from ramcft.algebra.ff import GF
from ramcft.algebra.poly import Poly
from ramcft.algebra.ratfunc import RatFunc
from ramcft.errors import RamifiedPlace, ZeroFunction
from ramcft.rayclass import (Divisor, Modulus, Place, RayClassGroup, closed_form_order, divisor_of,
                            factorization_check, find_violation, frobenius_eval,
                            global_conductor, in_congruence, in_congruence_exact, moduli,
                            parse_character, parse_divisor, parse_modulus, parse_poly,
                            parse_ratfunc, ray_class_group, ray_class_oracle, reduction_map,
                            sample_congruence, schmid_local, schmid_reciprocity_check,
                            schmid_terms)

F2, F3 = GF(2), GF(3)
INF_PLACE = Place.infinity()


def R(text, F):
    return parse_ratfunc(text, F)


def P(text, F):
    return Place(parse_poly(text, F))


def test_divisor_of_examples():
    assert divisor_of(R("x", F3)) == parse_divisor("[x] - inf", F3)
    assert divisor_of(R("(x^2+x+1)/x", F2)) == parse_divisor("[x^2+x+1] - [x] - inf", F2)
    assert divisor_of(R("2", F3)).is_zero()
    with pytest.raises(ZeroFunction):
        divisor_of(R("0", F3))


def ratfuncs(F, max_deg=4):
    poly = st.lists(st.integers(0, F.q - 1), min_size=1, max_size=max_deg + 1).map(lambda c: Poly(F, c))
    return st.tuples(poly, poly).filter(lambda t: not t[0].is_zero() and not t[1].is_zero()).map(
        lambda t: RatFunc(t[0], t[1]))


@given(ratfuncs(GF(2)) | ratfuncs(GF(3)) | ratfuncs(GF(2, 2)))
def test_product_formula(g):
    assert divisor_of(g).degree() == 0


def test_in_congruence_examples():
    g = R("(x+1)/x", F2)
    assert not in_congruence(g, parse_modulus("2*inf", F2))
    assert in_congruence(g, parse_modulus("inf", F2))
    one = R("1", F3)
    for D in moduli(F3, 2):
        assert in_congruence(one, D)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_congruence_routes_agree(q):
    F = GF(2, 2) if q == 4 else GF(q)
    rng = random.Random(f"cong/{q}")
    Ds = moduli(F, 3)
    for _ in range(60):
        D = rng.choice(Ds)
        g = sample_congruence(D, F, rng)
        assert in_congruence(g, D) and in_congruence_exact(g, D)
        h = RatFunc(Poly(F, [rng.randrange(F.q) for _ in range(3)] + [1]),
                    Poly(F, [rng.randrange(1, F.q), rng.randrange(F.q), 1]))
        assert in_congruence(h, D) == in_congruence_exact(h, D)


def test_ray_class_group_examples():
    assert ray_class_group(parse_modulus("2*inf", F2), F2).invariants == [2]
    assert ray_class_group(parse_modulus("[x] + inf", F3), F3).invariants == [2]
    assert ray_class_group(parse_modulus("inf", F2), F2).is_trivial()


def test_oracle_examples():
    G = ray_class_oracle(parse_modulus("2*inf", F2), F2, 4)
    assert G.invariants == [2] and G.converged
    G = ray_class_oracle(parse_modulus("[x] + inf", F3), F3, 3)
    assert G.invariants == [2]
    assert ray_class_oracle(parse_modulus("inf", F2), F2).is_trivial()


@pytest.mark.parametrize("q", [2, 3])
def test_unit_route_matches_oracle_and_closed_form(q):
    F = GF(q)
    for D in moduli(F, 2):
        G = ray_class_group(D, F)
        O = ray_class_oracle(D, F)
        assert O.converged
        assert G.invariants == O.invariants
        assert G.order == closed_form_order(D, q)


def test_generators_are_cycles_on_U():
    for F in (F2, F3):
        for D in moduli(F, 3):
            G = ray_class_group(D, F)
            for gen in G.generators:
                z = gen["cycle"]
                assert z.degree() == 0
                assert not any(D.mult(v) for v in z.support())
                assert divisor_of(gen["function"]) == z


@pytest.mark.parametrize("q", [2, 3])
def test_reduction_map_is_surjective(q):
    F = GF(q)
    Ds = moduli(F, 3)
    for big in Ds:
        for small in Ds:
            if small <= big and small != big:
                divides, agree, onto = reduction_map(RayClassGroup(big, F), RayClassGroup(small, F))
                assert divides and agree and onto


def test_global_conductor_examples():
    for f, D in [("x", "2*inf"), ("1/x", "2*[x]"), ("x^2", "2*inf")]:
        assert global_conductor(parse_character(f, F2)) == parse_divisor(D, F2)
    assert global_conductor(parse_character("x^2 + x", F2)).is_zero()


def test_frobenius_examples():
    chi = parse_character("x", F2)
    assert frobenius_eval(chi, P("x+1", F2)) == 1
    assert frobenius_eval(chi, P("x", F2)) == 0
    assert frobenius_eval(chi, P("x^2+x+1", F2)) == 1
    with pytest.raises(RamifiedPlace):
        frobenius_eval(parse_character("1/x", F2), P("x", F2))


def test_schmid_examples():
    a, b = R("x", F3), R("1+x", F3)
    assert schmid_local(a, b, P("x+1", F3)) == 2
    assert schmid_local(a, b, INF_PLACE) == 1
    assert schmid_local(R("1", F3), R("x^2+1", F3), P("x", F3)) == 0
    assert schmid_reciprocity_check(a, b)
    assert schmid_reciprocity_check(R("2", F3), R("x^2+2*x", F3))
    assert sum(t for _, t in schmid_terms(a, b)) % 3 == 0


@settings(max_examples=50)
@given(ratfuncs(GF(3), 4), ratfuncs(GF(3), 4))
def test_schmid_sum_vanishes(a, b):
    assert schmid_reciprocity_check(a, b)


@settings(max_examples=25)
@given(ratfuncs(GF(2, 2), 3), ratfuncs(GF(2, 2), 3))
def test_schmid_sum_vanishes_over_f4(a, b):
    assert schmid_reciprocity_check(a, b)


def test_factorization_check_examples():
    chi = parse_character("x", F2)
    rng = random.Random(1)
    assert factorization_check(chi, parse_modulus("2*inf", F2), 100, rng)
    D = parse_modulus("inf", F2)
    bad = find_violation(chi, D, 4)
    assert bad is not None
    assert in_congruence_exact(bad, D)
    assert not factorization_check(chi, D, 1, samples=[bad])
    trivial = parse_character("x^2 + x", F2)
    for D in moduli(F2, 2):
        assert factorization_check(trivial, D, 20, random.Random(2))


@pytest.mark.parametrize("text,q", [("x^3 + x", 2), ("[x; 1/x]", 2), ("x^2/(x+1)", 3)])
def test_factorization_at_conductor(text, q):
    F = GF(q)
    chi = parse_character(text, F)
    D = Modulus.of(global_conductor(chi))
    assert factorization_check(chi, D, 60, random.Random(text))
