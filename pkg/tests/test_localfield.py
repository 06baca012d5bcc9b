import pytest
from hypothesis import given, strategies as st

from ramcft.algebra.ff import GF
from ramcft.errors import InsufficientPrecision, NotInFiltration, ParseError
from ramcft.localfield import (INF, DifferentialForm, LaurentSeries, d_form, form_grade,
                               parse_E, parse_series, residue)

F3 = GF(3)


def S(text, E=F3):
    return parse_series(text, E)


def test_arithmetic_examples():
    prod = S("1+t+O(t^5)") * S("1-t+O(t^5)")
    assert prod == S("1-t^2+O(t^5)") and prod.prec == 5
    inv = S("t^2*(1+t)+O(t^6)").inverse()
    assert inv == S("t^-2*(1-t+t^2-t^3)+O(t^2)") and inv.prec == 2
    assert S("t^3+O(t^10)") + LaurentSeries.zero(F3, 10) == S("t^3+O(t^10)")


def test_rendering_round_trip():
    a = S("t^-3*(1 + 2*t + O(t^5))")
    assert str(a) == "t^-3*(1 + 2*t + O(t^5))"
    assert S(str(a)) == a


def test_big_o_is_required():
    with pytest.raises(ParseError) as e:
        S("1 + t")
    assert e.value.pos is not None


def test_zero_to_precision_poisons_valuation():
    z = S("O(t^4)")
    with pytest.raises(InsufficientPrecision):
        z.inverse()


def test_d_form_examples():
    E = parse_E("F3(u)")
    w = d_form(S("u*t^-4+O(t^4)", E))
    assert w.alpha == S("2*u*t^-5+O(t^3)", E)
    assert w.beta == S("t^-4+O(t^3)", E)
    assert d_form(S("t^3+O(t^9)")).is_zero()
    assert d_form(S("u^2+O(t^5)", parse_E("F2(u)"))).is_zero()


def test_residue_examples():
    assert residue(DifferentialForm(S("t^-1+O(t^2)"))) == F3.one()
    F5 = GF(5)
    assert residue(DifferentialForm(S("t^-2+3*t^-1+1+O(t^3)", F5))) == F5(3)
    F7 = GF(7)
    assert residue(d_form(S("t^-3+t^2+O(t^5)", F7))).is_zero()
    with pytest.raises(InsufficientPrecision):
        residue(DifferentialForm(S("t^-3+O(t^-1)")))


def test_form_grade_examples():
    E = parse_E("F3(u)")
    w = DifferentialForm(S("2*u*t^-5+O(t^3)", E), S("t^-4+O(t^3)", E))
    assert form_grade(w, 5).lead() == ["2*u", "0"]
    assert form_grade(DifferentialForm(S("t^-2+O(t^3)")), 3).is_zero()
    w = DifferentialForm(S("t^-3+O(t^3)", E), S("u*t^-3+O(t^3)", E))
    assert form_grade(w, 3).lead() == ["1", "u"]
    with pytest.raises(NotInFiltration):
        form_grade(DifferentialForm(S("t^-4+O(t^3)")), 3)


def series(p, lo=-4, hi=4, prec=INF):
    F = GF(p)
    return st.dictionaries(st.integers(lo, hi), st.integers(1, p - 1), max_size=5).map(
        lambda d: LaurentSeries(F, {k: F(c) for k, c in d.items()}, prec))


@given(series(5), series(5))
def test_valuation_rules(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert (a * b).valuation() == a.valuation() + b.valuation()
    s = a + b
    if not s.is_zero():
        assert s.valuation() >= min(a.valuation(), b.valuation())
        if a.valuation() != b.valuation():
            assert s.valuation() == min(a.valuation(), b.valuation())


@given(series(3, prec=8))
def test_residue_of_exact_form_vanishes(a):
    assert residue(d_form(a)).is_zero()


@given(series(5, -3, 3), series(5, -3, 3))
def test_form_grade_additive(a, b):
    m = 4
    wa, wb = d_form(a), d_form(b)
    assert form_grade(wa + wb, m) == form_grade(wa, m) + form_grade(wb, m)


@given(series(3, -3, 6), series(3, 0, 6))
def test_precision_propagation(a, b):
    if b.is_zero():
        return
    def pipeline(N):
        x, y = a.truncate(N), b.truncate(N)
        return (x * y + x) * (y + 1).inverse()
    lo, hi = pipeline(6), pipeline(16)
    assert lo.agrees_with(hi)
