import random

import pytest
from hypothesis import given, strategies as st

from ramcft.algebra.ff import GF
from ramcft.errors import ConductorTooSmall, ImperfectResidue, PreconditionViolated
from ramcft.localfield import (INF, DifferentialForm, GradedForm, LaurentSeries, d_form,
                               parse_E, parse_series)
from ramcft.rsw import (MilnorSymbol, fsd, refined_artin, rho_m, surject_preimage, tau_pair,
                        vm_member)
from ramcft.witt import WittVector, artin_conductor, best_form, in_fil, parse_witt

F2, F3, F5 = GF(2), GF(3), GF(5)
E3 = parse_E("F3(u)")


def W(text, E):
    p = E.p if hasattr(E, "p") else E.F.p
    return parse_witt(text, E, p, INF)


def S(text, E):
    return parse_series(text, E, default_prec=INF)


def test_fsd_examples():
    w = fsd(W("[u*t^-4]", E3))
    assert w.alpha == S("2*u*t^-5", E3) and w.beta == S("t^-4", E3)
    assert fsd(W("[t^-1; 0]", F2)).alpha == S("t^-3", F2)
    assert fsd(W("[0; 0]", F3)).is_zero()


def test_refined_artin_examples():
    g = refined_artin(W("[u*t^-4]", E3))
    assert g.m == 5 and g.lead() == ["2*u", "0"]
    g = refined_artin(W("[t^-3]", F2))
    assert g.m == 4 and g.c_dt == F2.one()
    g = refined_artin(W("[u*t^-1]", E3))
    assert g.m == 2 and g.lead() == ["2*u", "0"]
    with pytest.raises(ConductorTooSmall):
        refined_artin(W("[1 + t]", F3))


def test_surject_preimage_examples():
    w = surject_preimage(GradedForm(3, F5(3), F5.zero()), F5)
    assert w == W("[t^-2]", F5)
    w = surject_preimage(GradedForm(2, F3.one(), F3.zero()), F3)
    assert w == W("[2*t^-1]", F3)
    with pytest.raises(PreconditionViolated):
        surject_preimage(GradedForm(3, F5.zero(), F5.zero()), F5)
    with pytest.raises(ImperfectResidue):
        surject_preimage(GradedForm(3, E3.one(), E3.zero()), E3)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_surjectivity_round_trip(q):
    p = next(p for p in (2, 3, 5, 7) if q % p == 0)
    n = {2: 1, 4: 2, 8: 3, 3: 1, 9: 2, 5: 1, 7: 1}[q]
    F = GF(p, n)
    for m in range(2, 7):
        for c in range(1, q):
            g = GradedForm(m, F.elem(c), F.zero())
            w = surject_preimage(g, F)
            assert artin_conductor(w) == m and refined_artin(w) == g


def test_vm_member_examples():
    u, t = S("u", E3), S("t", E3)
    assert vm_member([MilnorSymbol([1 + t ** 3 * u, u])], 3)
    assert not vm_member([MilnorSymbol([1 + t ** 2 * u, u])], 3)
    v = S("1 + u", E3)
    assert vm_member([MilnorSymbol([1 + t ** 3 * v * t, t])], 3)


def test_rho_m_examples():
    u, t = S("u", E3), S("t", E3)
    sym = rho_m(t ** 2, [u], 3)
    assert sym.entries[0] == 1 + t ** 2 * u and sym.entries[1] == u
    assert rho_m(LaurentSeries.zero(E3), [u], 3).entries[0] == S("1", E3)
    sym = rho_m(t ** 4, [], 5)
    assert sym.N == 1 and sym.entries[0] == 1 + t ** 4
    with pytest.raises(PreconditionViolated):
        rho_m(t, [u], 3)


def test_rho_image_lies_in_vm():
    u, t = S("u", E3), S("t", E3)
    for m in range(1, 5):
        for a in (t ** (m - 1) * u, t ** m):
            if a.valuation() >= m:
                assert vm_member([rho_m(a, [u], m)], m)


def test_tau_pair_examples():
    g = GradedForm(2, F3(2), F3.zero())
    assert tau_pair(g, S("t", F3), F3) == 2
    assert tau_pair(g, S("t^2", F3), F3) == 0
    U = parse_E("F3((u))")
    g2 = GradedForm(2, U.zero(), U.one())
    eta = DifferentialForm(LaurentSeries.zero(U, INF), S("t*u^-1", U))
    assert tau_pair(g2, eta, U) == 0


def witts(p, s, lo=-6, hi=1):
    F = GF(p)
    comp = st.dictionaries(st.integers(lo, hi), st.integers(1, p - 1), max_size=3).map(
        lambda d: LaurentSeries(F, {k: F(c) for k, c in d.items()}, INF))
    return st.lists(comp, min_size=s, max_size=s).map(lambda cs: WittVector(cs, p))


@pytest.mark.parametrize("p,s", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
@given(data=st.data())
def test_fsd_respects_filtration(p, s, data):
    w = data.draw(witts(p, s))
    m = data.draw(st.integers(1, 30))
    if in_fil(w, m):
        omega = fsd(w)
        assert omega.is_zero() or omega.alpha.is_zero() or omega.alpha.valuation() >= -m


@pytest.mark.parametrize("p,s", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
@given(data=st.data())
def test_best_form_refined_conductor_nonzero(p, s, data):
    w = best_form(data.draw(witts(p, s)))
    m = artin_conductor(w)
    if m > 1:
        g = refined_artin(w)
        assert g.m == m and not g.is_zero()


@pytest.mark.parametrize("p,s", [(2, 1), (2, 2), (3, 1), (3, 2)])
@given(data=st.data())
def test_refined_conductor_representative_independent(p, s, data):
    w = data.draw(witts(p, s))
    v = data.draw(witts(p, s, -2, 1))
    if artin_conductor(w) > 1:
        assert refined_artin(w + (v - v.frobenius())) == refined_artin(w)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pairing_duality_shadow(p):
    F = GF(p)
    rng = random.Random(f"tau/{p}")
    for _ in range(30):
        m = rng.randint(2, 6)
        g = surject_preimage(GradedForm(m, F.elem(rng.randrange(1, p)), F.zero()), F)
        g = refined_artin(g)
        deep = LaurentSeries.monomial(F, m + rng.randrange(3), F.elem(rng.randrange(1, p)))
        assert tau_pair(g, deep, F) == 0
        hits = [tau_pair(g, LaurentSeries.monomial(F, m - 1, F.elem(c)), F) for c in range(1, p)]
        assert any(hits)
