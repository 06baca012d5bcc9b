import random

import pytest
from hypothesis import given, settings, strategies as st

from ramcft.algebra.ff import GF
from ramcft.algebra.poly2 import Poly2, RatFunc2
from ramcft.errors import CommonComponent, PreconditionViolated, ZeroFunction
from ramcft.k2surface import (CurveFunction, PrimeDivisor, boundary, claim1_table, claim2_table,
                              gersten_check, mu_symbol, mu_transformation_check,
                              nu_shape_check, ord_along, parse_poly2, parse_ratfunc2,
                              tame_symbol)
from ramcft.k2surface.sampling import (claim1_instance, claim2_instance, gersten_pair,
                                       mu_instance)

F2, F3, F5 = GF(2), GF(3), GF(5)


def R(text, F=F3):
    return parse_ratfunc2(text, F)


def Z(text, F=F3):
    return PrimeDivisor(parse_poly2(text, F))


def on(Zp, text, F=F3):
    return CurveFunction(Zp, R(text, F))


def test_ord_along_examples():
    assert ord_along(Z("y"), R("x*y^2")) == 2
    assert ord_along(PrimeDivisor.infinity(), R("x^2+y")) == -2
    assert ord_along(Z("x+y"), R("x^2-y^2")) == 1
    with pytest.raises(ZeroFunction):
        ord_along(Z("x"), R("0"))


def test_tame_symbol_examples():
    assert tame_symbol(R("x"), R("y"), Z("y")) == on(Z("y"), "x")
    assert tame_symbol(R("x"), R("x"), Z("x")) == on(Z("x"), "-1")
    a, b = R("1 + y^2/x"), R("(x+y)/(2*x+y)")
    assert tame_symbol(a, b, Z("x+y")) == on(Z("x+y"), "1-y")


PRIMES = ["y", "x", "x+y", "y-x^2", "x^2+y^2+1"]


def units_along(F, prime):
    """Random rational functions of total degree <= 2 that are units along prime."""
    coeff = st.integers(0, F.q - 1)
    poly = st.lists(coeff, min_size=6, max_size=6).map(
        lambda c: Poly2(F, {(0, 0): c[0], (1, 0): c[1], (0, 1): c[2], (2, 0): c[3], (1, 1): c[4], (0, 2): c[5]}))
    pr = parse_poly2(prime, F)
    k = st.integers(-2, 2)
    return st.tuples(poly, poly, k).filter(lambda t: not t[0].is_zero() and not t[1].is_zero()).map(
        lambda t: RatFunc2(t[0], t[1]) * RatFunc2(pr) ** t[2])


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("prime", PRIMES)
@settings(max_examples=15)
@given(data=st.data())
def test_tame_symbol_is_a_symbol(p, prime, data):
    F = GF(p)
    Zp = PrimeDivisor(parse_poly2(prime, F))
    a = data.draw(units_along(F, prime))
    a2 = data.draw(units_along(F, prime))
    b = data.draw(units_along(F, prime))
    assert tame_symbol(a * a2, b, Zp) == tame_symbol(a, b, Zp) * tame_symbol(a2, b, Zp)
    assert tame_symbol(a, b, Zp) * tame_symbol(b, a, Zp) == CurveFunction.one(Zp, F)
    v = ord_along(Zp, a)
    sign = RatFunc2(Poly2.const(F, (-1) ** v % p))
    assert tame_symbol(a, a, Zp) == CurveFunction(Zp, sign)
    one_minus = 1 - a
    if not one_minus.is_zero():
        assert tame_symbol(a, one_minus, Zp).is_one()


def test_boundary_examples():
    el = boundary(R("x"), R("y"))
    assert sorted(str(t.carrier) for t in el.terms) == ["(x)", "(y)"]
    assert el.cycle_is_zero()
    assert gersten_check(R("x"), R("y"))
    assert gersten_check(R("x+y"), R("x-y"))
    with pytest.raises(CommonComponent):
        boundary(R("x*y"), R("x"))
    assert gersten_check(R("x*y"), R("x"), strict=False)


def test_boundary_reduces_to_curve_symbol():
    # a = x, b = 1 + x pulled back from the line: both boundary curves are vertical lines
    el = boundary(R("x"), R("1+x"))
    assert {str(t.carrier) for t in el.terms} == {"(x)", "(x + 1)"}
    assert el.cycle_is_zero()


@pytest.mark.parametrize("q", [2, 3, 4])
def test_gersten_random_pairs(q):
    F = GF(2, 2) if q == 4 else GF(q)
    rng = random.Random(f"gersten/{q}")
    for _ in range(15):
        a, b, _ = gersten_pair(F, rng)
        assert gersten_check(a, b)
        assert gersten_check(a, b, strict=False)


def rows(report):
    return {r.label: (str(r.expected.rep), str(r.got.rep), r.match) for r in report.rows}


def test_claim1_example():
    x, y = Poly2.x(F3), Poly2.y(F3)
    one, two = Poly2.const(F3, 1), Poly2.const(F3, 2)
    rep = claim1_table(F3, y, x, one, two, y)
    assert rep.passed
    assert {r.label for r in rep.rows} >= {"f", "p1", "p2", "q"}
    got = {r.label: r.got for r in rep.rows}
    p1 = got["p1"].Z
    assert got["p1"] == CurveFunction(p1, R("1-y"))
    assert got["f"].is_one()
    rep0 = claim1_table(F3, y, x, one, two, Poly2.const(F3, 0))
    assert rep0.passed and all(r.got.is_one() for r in rep0.rows)
    with pytest.raises(PreconditionViolated):
        claim1_table(F2, Poly2.y(F2), Poly2.x(F2), Poly2.const(F2, 1), Poly2.const(F2, 1), Poly2.y(F2))


def test_claim2_example():
    x, y = Poly2.x(F3), Poly2.y(F3)
    one = Poly2.const(F3, 1)
    rep = claim2_table(F3, y, x, one, one, 2)
    assert rep.passed
    f_row = [r for r in rep.rows if r.label == "f"][0]
    assert f_row.got == CurveFunction(f_row.prime, R("y"))
    rep0 = claim2_table(F3, y, x, one, Poly2.const(F3, 0), 2)
    assert rep0.passed and "q" not in {r.label for r in rep0.rows}


@pytest.mark.parametrize("p", [3, 5])
def test_claim_tables_random(p):
    F = GF(p)
    rng = random.Random(f"claims/{p}")
    for _ in range(5):
        assert claim1_instance(F, rng)[1].passed
        assert claim2_instance(F, rng)[1].passed


def test_mu_examples():
    x, y = Poly2.x(F3), Poly2.y(F3)
    zero = Poly2.const(F3, 0)
    el = mu_symbol(zero, y * y, y, x)
    assert [str(t.carrier) for t in el.terms] == ["(x)"]
    el = mu_symbol(y * y, y * y, y, x)
    assert [str(t.carrier) for t in el.terms] == ["(x + y)"]
    el = mu_symbol(y * y, y * y + y ** 3, y, x)
    assert len(el.terms) == 2
    assert el.terms[0].unit == CurveFunction(el.terms[0].carrier, R("1+y^3"))
    assert el.terms[1].unit == CurveFunction(el.terms[1].carrier, R("1+y^2"))
    for t in el.terms:
        assert t.local and t.local[0].expansion is not None


@pytest.mark.parametrize("p", [3, 5])
def test_mu_transformation_and_nu_shape(p):
    F = GF(p)
    rng = random.Random(f"mu/{p}")
    for _ in range(6):
        alpha, beta, pi, f, u, v = mu_instance(F, rng)
        rep = mu_transformation_check(alpha, beta, pi, f, u, v)
        assert rep["passed"], rep
        nu = nu_shape_check(alpha, beta, pi, f)
        assert nu["passed"], nu
