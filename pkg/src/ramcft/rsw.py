"""Refined Artin conductor and the Milnor K-group pairing data."""

from dataclasses import dataclass

from .errors import (ConductorTooSmall, ImperfectResidue, InsufficientPrecision,
                     MalformedPresentation, NoPreimage, PreconditionViolated)
from .localfield import (INF, DifferentialForm, GradedForm, LaurentField, LaurentSeries,
                         d_form, form_grade, is_perfect)
from .witt import WittVector, artin_conductor, best_form, ord_p


@dataclass
class MilnorSymbol:
    """{b_1, ..., b_N} with nonzero series entries."""

    entries: list

    def __post_init__(self):
        for b in self.entries:
            if b.is_zero():
                raise MalformedPresentation("symbol entries must be nonzero")

    @property
    def N(self):
        return len(self.entries)

    def __str__(self):
        return "{" + ", ".join(str(b) for b in self.entries) + "}"


def fsd(w):
    """sum_i a_i^(p^i - 1) d(a_i)."""
    total = None
    for i in range(w.s):
        a = w.a(i)
        k = w.p ** i - 1
        term = d_form(a)
        if k:
            term = term.scale(a ** k)
        total = term if total is None else total + term
    return total


def refined_artin(w):
    m = artin_conductor(w)
    if m <= 1:
        raise ConductorTooSmall(f"conductor {m} <= 1")
    b = best_form(w)
    omega = fsd(b)
    return form_grade(omega, m)


def surject_preimage(g, E):
    """A Witt vector with conductor g.m and refined conductor g (E perfect).

    With m - 1 = p^k n' (p not dividing n'), the single top slot
    c' t^(-n') in length k+1 has d-image -n' c'^(p^k) t^(-m) dt.
    """
    if not is_perfect(E):
        raise ImperfectResidue("surjectivity needs a perfect residue field")
    m, c = g.m, g.c_dt
    if m <= 1 or g.is_zero():
        raise PreconditionViolated("need a nonzero graded class at level m > 1")
    p = E.p
    k = ord_p(m - 1, p)
    n1 = (m - 1) // p ** k
    s = k + 1
    if s > 3:
        raise NoPreimage(f"level {m} needs Witt length {s} > 3")
    base = E(-1) * c / E(n1)
    cp = base
    for _ in range(k):
        cp = cp.pth_root()
    zero = LaurentSeries.zero(E, INF)
    comps = [LaurentSeries.monomial(E, -n1, cp)] + [zero] * (s - 1)
    w = WittVector(comps, p)
    if artin_conductor(w) != m or refined_artin(w) != g:
        raise NoPreimage(f"round trip failed at level {m}")
    return w


def _val(a):
    if a.c:
        return min(a.c)
    if a.prec == INF:
        return INF
    raise InsufficientPrecision("valuation not determined")


def vm_member(symbols, m):
    """Whether every generator has one of the two shapes with a in m^m:
    {1+a, b_1, ..., b_{N-1}} with units b_i, or
    {1+a*pi, b_1, ..., b_{N-2}, pi} with a prime element pi."""
    if not symbols:
        return True
    N = symbols[0].N
    for sym in symbols:
        if sym.N != N:
            raise MalformedPresentation("generators of different degree")
        first = sym.entries[0]
        a = first - 1
        va = _val(a)
        if _val(first) != 0:
            return False
        rest = [_val(b) for b in sym.entries[1:]]
        if all(v == 0 for v in rest):
            if va < m:
                return False
        elif N >= 2 and rest[-1] == 1 and all(v == 0 for v in rest[:-1]):
            if va < m + 1:
                return False
        else:
            return False
    return True


def rho_m(a, bs, m):
    """rho^m(a db_1 ^ ... ^ db_{N-1}) = {1 + a b_1...b_{N-1}, b_1, ..., b_{N-1}}."""
    if not a.is_zero() and _val(a) < m - 1:
        raise PreconditionViolated(f"v(a) = {_val(a)} < {m - 1}")
    prod = a
    for b in bs:
        if b.is_zero() or _val(b) not in (0, 1):
            raise PreconditionViolated("b entries must be units or prime elements")
        prod = prod * b
    return MilnorSymbol([prod + 1] + list(bs))


def _trace_Fp(c):
    return c.trace()


def graded_rep(g, E, var="t"):
    """Representative c_dt t^-m dt + c_du t^-m du of a graded class."""
    alpha = LaurentSeries.monomial(E, -g.m, g.c_dt, var) if not g.c_dt.is_zero() else LaurentSeries.zero(E, INF, var)
    if is_perfect(E):
        return DifferentialForm(alpha)
    beta = LaurentSeries.monomial(E, -g.m, g.c_du, var) if not g.c_du.is_zero() else LaurentSeries.zero(E, INF, var)
    return DifferentialForm(alpha, beta)


def tau_pair(g, eta, E):
    """Pairing of a graded class with an (N-1)-form in m^(m-1).

    N = 1: eta is a series a; value Tr Res_t(a * omega_g).
    N = 2: eta is a DifferentialForm A dt + B du over E = F_q((u));
    value Tr Res_u Res_t((alpha B - beta A) dt^du).
    """
    omega = graded_rep(g, E)
    if isinstance(eta, LaurentSeries):
        prod = omega.alpha * eta
        if prod.prec < 0:
            raise InsufficientPrecision("pairing needs the t^-1 coefficient")
        r = prod.coeff(-1)
        if isinstance(E, LaurentField):
            return _res_u(r)
        return _trace_Fp(r)
    if not isinstance(E, LaurentField):
        raise PreconditionViolated("two-form pairing needs E = F_q((u))")
    beta = omega.beta if omega.beta is not None else LaurentSeries.zero(E, INF)
    A = eta.alpha
    B = eta.beta if eta.beta is not None else LaurentSeries.zero(E, INF)
    top = omega.alpha * B - beta * A
    if top.prec < 0:
        raise InsufficientPrecision("pairing needs the t^-1 coefficient")
    return _res_u(top.coeff(-1))


def _res_u(r):
    if r.prec < 0:
        raise InsufficientPrecision("pairing needs the u^-1 coefficient")
    return _trace_Fp(r.coeff(-1))
