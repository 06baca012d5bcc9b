import pytest
import sympy
from hypothesis import given, strategies as st

from ramcft.algebra.conway import CONWAY
from ramcft.algebra.ff import GF
from ramcft.algebra.poly import Poly, factor, is_irreducible
from ramcft.algebra.ratfunc import RatFunc, RationalFunctionField
from ramcft.errors import NotAPthPower, ZeroPolynomial
from ramcft.rayclass.places import parse_poly, parse_ratfunc

FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2),
          (11, 1), (13, 2), (17, 1), (17, 4)]


def elems(F):
    return st.integers(0, F.q - 1).map(F.elem)


@pytest.mark.parametrize("pn", FIELDS)
@given(data=st.data())
def test_field_axioms(pn, data):
    F = GF(*pn)
    a, b, c = (data.draw(elems(F)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == F.zero()
    if not a.is_zero():
        assert a * a.inverse() == F.one()


@pytest.mark.parametrize("pn", FIELDS)
@given(data=st.data())
def test_pth_root_inverts_frobenius(pn, data):
    F = GF(*pn)
    a = data.draw(elems(F))
    assert a.pth_root() ** F.p == a


def test_modulus_is_primitive_and_compatible():
    F = GF(2, 4)
    g = F.gen
    assert all(g ** k != F.one() for k in range(1, 15))
    # the modulus of F_4 comes from the same table as the one of F_16
    assert GF(2, 2).modulus == tuple(CONWAY[(2, 2)])


def test_pth_root_examples():
    F9 = GF(3, 2)
    g = F9.gen
    assert g.pth_root() == g ** 3
    assert (g ** 3) ** 3 == g
    K = RationalFunctionField(GF(3), "u")
    u = K.gen()
    assert (u ** 3).pth_root() == u
    with pytest.raises(NotAPthPower):
        u.pth_root()


def _factor_str(f):
    return [(str(g), e) for g, e in factor(f)]


def test_factor_examples():
    F2, F3 = GF(2), GF(3)
    assert _factor_str(parse_poly("x^2+x", F2)) == [("x", 1), ("x + 1", 1)]
    assert _factor_str(parse_poly("x^2+1", F3)) == [("x^2 + 1", 1)]
    assert _factor_str(parse_poly("x^4+x^2", F2)) == [("x", 2), ("x + 1", 2)]
    with pytest.raises(ZeroPolynomial):
        factor(Poly(F2, ()))


def _poly(F, cs):
    return Poly(F, cs)


@pytest.mark.parametrize("pn", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
@given(data=st.data())
def test_factor_reproduces_input(pn, data):
    F = GF(*pn)
    cs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=2, max_size=9))
    f = Poly(F, cs)
    if f.deg() < 1:
        return
    prod = Poly.const(F, F.elem(f.lc()))
    for g, e in factor(f):
        assert g.lc() == 1 and is_irreducible(g)
        prod = prod * g ** e
    assert prod == f


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@given(data=st.data())
def test_factor_against_sympy(p, data):
    cs = data.draw(st.lists(st.integers(0, p - 1), min_size=2, max_size=9))
    F = GF(p)
    f = Poly(F, cs)
    if f.deg() < 1:
        return
    x = sympy.symbols("x")
    sf = sympy.Poly(list(reversed(f.c)), x, modulus=p)
    _, theirs = sf.factor_list()
    ours = sorted((tuple(g.c), e) for g, e in factor(f))
    monic = []
    for g, e in theirs:
        cs2 = [int(c) % p for c in reversed(g.all_coeffs())]
        inv = pow(cs2[-1], -1, p)
        monic.append((tuple(c * inv % p for c in cs2), e))
    assert ours == sorted(monic)


def test_derivative_examples():
    K = RationalFunctionField(GF(3), "u")
    u = K.gen()
    assert (u ** 3).derivative().is_zero()
    F2 = GF(2)
    assert str(parse_poly("x^3+x", F2).derivative()) == "x^2 + 1"
    d = (1 / (u + 1)).derivative()
    assert d == K(2) / (u + 1) ** 2


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_leibniz(p, data):
    F = GF(p)
    def rf():
        n = Poly(F, data.draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=5)))
        d = Poly(F, data.draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=4)) + [1])
        return RatFunc(n, d)
    a, b = rf(), rf()
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_expression_grammar_uses_generator():
    F4 = GF(2, 2)
    f = parse_ratfunc("g*x + g^2", F4)
    assert f == parse_ratfunc("g*x + g + 1", F4)
