import random

import pytest
from hypothesis import given, strategies as st

from ramcft.algebra.ff import GF
from ramcft.errors import LengthMismatch, LengthOverflow, ParseError
from ramcft.localfield import INF, LaurentSeries, parse_E
from ramcft.rayclass.characters import witt_to_int
from ramcft.witt import (WittVector, artin_conductor, best_form, conductor_oracle, ghost_oracle,
                         in_fil, in_fillog, ord_p, parse_witt, polar_parts, universal_polys,
                         zero_vector)

F2, F3 = GF(2), GF(3)


def W(text, E=F3, p=None):
    p = p or (E.p if hasattr(E, "p") else E.F.p)
    return parse_witt(text, E, p, INF)


def const_witt(F, codes):
    return WittVector([LaurentSeries.const(F, F.elem(c)) for c in codes], F.p)


def to_int(w, p):
    return witt_to_int(WittVector([c.coeff(0) for c in w.comps], p), p)


def test_universal_polynomials_satisfy_ghost_equations():
    for p, s in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)]:
        assert universal_polys(p, s).check_ghost()


def test_teichmuller_sum_in_w2_f2():
    one = W("[1; 0]", F2)
    two = one + one
    assert two == W("[0; 1]", F2)
    assert to_int(const_witt(F2, [1, 0]), 2) == 1
    assert to_int(const_witt(F2, [0, 1]), 2) == 2
    assert two + two == zero_vector(2, F2, 2)


def test_three_in_w2_f3():
    one = W("[1; 0]")
    three = one + one + one
    assert three == W("[0; 1]")
    assert three == one.frobenius().verschiebung().restrict(2)


def test_zero_is_neutral():
    v = W("[t^-2 + 1; t]")
    assert v + zero_vector(2, F3, 3) == v


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        W("[1; 0]") + W("[1]")


def test_frobenius_and_verschiebung():
    E = parse_E("F3(u)")
    assert W("[t^-1; u]", E).frobenius() == W("[t^-3; u^3]", E)
    assert W("[0]").verschiebung() == W("[0; 0]")
    assert W("[t]").verschiebung() == W("[0; t]")
    with pytest.raises(LengthOverflow):
        W("[1; 0; 0]").verschiebung()


def test_parse_reports_position():
    with pytest.raises(ParseError) as e:
        parse_witt("[t; t^-1 + * ]", F3, 3, INF)
    assert e.value.token == "*" and e.value.pos == 11


def test_fillog_examples():
    w = W("[t^-1; t^-2]")
    assert [m for m in range(6) if in_fillog(w, m)][0] == 3
    assert in_fillog(W("[1 + t; t^2]"), 0)
    w = W("[t^-3]", F2)
    assert in_fillog(w, 3) and not in_fillog(w, 2)


def test_fil_examples():
    w = W("[t^-1; t^-2]")
    assert not in_fil(w, 3) and in_fil(w, 4)
    z = zero_vector(2, F3, 3)
    assert all(in_fil(z, m) for m in range(1, 10))


def test_best_form_examples():
    assert best_form(W("[t^-2]", F2)) == W("[t^-1]", F2)
    E = parse_E("F3(u)")
    w = W("[u*t^-3]", E)
    assert best_form(w) == w
    w = W("[1 + t; t]")
    assert best_form(w) == w


def test_conductor_examples():
    assert artin_conductor(W("[t^-2]", F2)) == 2
    assert artin_conductor(W("[t^-1; t^-2]")) == 4
    v = W("[t^-2 + t^-1; 2*t^-1]")
    assert artin_conductor(v - v.frobenius()) == 0


def test_conductor_oracle_examples():
    assert conductor_oracle(W("[t^-2]", F2), 4, F2) == 2
    assert conductor_oracle(W("[t^-1]", F2), 4, F2) == 2
    assert conductor_oracle(zero_vector(1, F2, 2), 4, F2) == 0


def witts(p, s, lo=-4, hi=1):
    F = GF(p)
    comp = st.dictionaries(st.integers(lo, hi), st.integers(1, p - 1), max_size=3).map(
        lambda d: LaurentSeries(F, {k: F(c) for k, c in d.items()}, INF))
    return st.lists(comp, min_size=s, max_size=s).map(lambda cs: WittVector(cs, p))


CASES = [(2, 2), (2, 3), (3, 2), (5, 2)]


@pytest.mark.parametrize("p,s", CASES)
@given(data=st.data())
def test_ring_ops_match_ghost_oracle(p, s, data):
    v, w = data.draw(witts(p, s)), data.draw(witts(p, s))
    assert v + w == ghost_oracle(v, w, "add")
    assert v * w == ghost_oracle(v, w, "mul")
    assert (v - w) + w == v


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (3, 2), (5, 2), (7, 2), (3, 3)])
def test_constant_vectors_match_integers(p, s):
    F = GF(p)
    rng = random.Random(f"ints/{p}/{s}")
    for _ in range(40):
        a = const_witt(F, [rng.randrange(p) for _ in range(s)])
        b = const_witt(F, [rng.randrange(p) for _ in range(s)])
        A, B = to_int(a, p), to_int(b, p)
        assert to_int(a + b, p) == (A + B) % p ** s
        assert to_int(a * b, p) == A * B % p ** s


@pytest.mark.parametrize("p,s", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
@given(data=st.data())
def test_fv_is_p(p, s, data):
    w = data.draw(witts(p, s))
    ext = WittVector(w.comps + [LaurentSeries.zero(GF(p))], p)
    assert w.verschiebung().frobenius() == ext.scalar(p)


@pytest.mark.parametrize("p,s", [(2, 1), (2, 2), (3, 1), (3, 2)])
@given(data=st.data())
def test_conductor_invariant_under_artin_schreier(p, s, data):
    w = data.draw(witts(p, s, -3, 0))
    v = data.draw(witts(p, s, -2, 0))
    assert artin_conductor(w + (v - v.frobenius())) == artin_conductor(w)


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (3, 2), (5, 2)])
@given(data=st.data())
def test_filtration_inclusions(p, s, data):
    w = data.draw(witts(p, s, -6, 1))
    m = data.draw(st.integers(1, 40))
    if in_fil(w, m):
        assert in_fillog(w, m)
    if in_fillog(w, m):
        assert in_fil(w, m + 1)
    if m % p:
        assert in_fil(w, m) == in_fillog(w, m - 1)


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (3, 2)])
@given(data=st.data())
def test_fil_box_closed_under_addition(p, s, data):
    m = data.draw(st.integers(1, 12))
    v, w = data.draw(witts(p, s, -6, 1)), data.draw(witts(p, s, -6, 1))
    if in_fil(v, m) and in_fil(w, m):
        assert in_fil(v + w, m)


def test_tame_characters():
    # conductor <= 1 iff the best form has a_i integral for i >= 1 and a_0 of pole <= 1
    for w, expect in [("[0; t^-1]", 2), ("[0; 1 + t]", 0), ("[t^-1; 0]", 4)]:
        assert artin_conductor(W(w)) == expect


def _polar_vectors(F, s, bounds):
    """All vectors with polar components, pole(a_i) <= bounds[i]."""
    per = [polar_parts(F, b) for b in bounds]
    out = [[]]
    for i in range(s):
        out = [rest + [a] for rest in out for a in per[i]]
    return [WittVector.from_a(a, F.p) for a in out]


def _fillog_bounds(p, s, m):
    return [m // p ** i for i in range(s)]


@pytest.mark.parametrize("p,s,m", [(2, 2, 6), (2, 3, 4), (2, 3, 6), (3, 2, 3)])
def test_fil_box_equals_subgroup_sum(p, s, m):
    F = GF(p)
    sp = min(s, ord_p(m, p))
    A = _polar_vectors(F, s, _fillog_bounds(p, s, m - 1))
    short = _polar_vectors(F, sp, _fillog_bounds(p, sp, m)) if sp else [None]
    B = []
    zero = LaurentSeries.zero(F)
    for b in short:
        comps = [zero] * (s - sp) + (b.comps if b is not None else [])
        B.append(WittVector(comps, p))
    sums = {str(a + b) for a in A for b in B}
    bounds = [(m if i < sp else m - 1) // p ** i for i in range(s)]
    box = {str(w) for w in _polar_vectors(F, s, bounds) if in_fil(w, m)}
    assert sums == box


def test_best_form_matches_oracle_on_small_budget():
    for F in (F2, F3):
        for w in _polar_vectors(F, 1, [3]):
            assert artin_conductor(w) == conductor_oracle(w, 3, F)
