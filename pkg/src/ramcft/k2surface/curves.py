"""Curves on P^2: prime divisors, functions restricted to them, closed points
of A^2, intersection numbers and branch expansions."""

from dataclasses import dataclass
from functools import lru_cache

from ..algebra.ff import FiniteField
from ..algebra.poly import Poly, factor, gcd
from ..algebra.poly2 import Poly2, RatFunc2, factor2, resultant_y
from ..errors import (CommonComponent, DegenerateConfiguration, RestrictionUndefined,
                      ZeroFunction)
from ..localfield import LaurentSeries


@lru_cache(maxsize=None)
def field(p, n):
    return FiniteField(p, n)


def as_ratfunc(a):
    if isinstance(a, RatFunc2):
        return a
    if isinstance(a, Poly2):
        return RatFunc2(a)
    raise TypeError(f"expected a bivariate function, got {type(a).__name__}")


class PrimeDivisor:
    """An irreducible curve on P^2: an affine prime (normalized Poly2) or the
    line at infinity (poly None)."""

    __slots__ = ("poly", "assumed_irreducible")

    def __init__(self, poly=None, check=True):
        self.assumed_irreducible = False
        if poly is not None:
            if poly.deg() < 1:
                raise ValueError("a prime divisor needs a nonconstant polynomial")
            poly = poly.normalize()
            if check:
                fac = factor2(poly)
                if len(fac.factors) != 1 or fac.factors[0][1] != 1:
                    raise ValueError(f"{poly} is not irreducible")
                self.assumed_irreducible = fac.assumed_irreducible
        self.poly = poly

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self.poly is None

    def sort_key(self):
        if self.poly is None:
            return (1,)
        return (0,) + self.poly.sort_key()

    def __eq__(self, o):
        return isinstance(o, PrimeDivisor) and self.poly == o.poly

    def __hash__(self):
        return hash(("prime", self.poly))

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def __repr__(self):
        return f"PrimeDivisor({self})"

    def __str__(self):
        return "L_inf" if self.poly is None else f"({self.poly})"

    def contains_point(self, L, a, b):
        return self.poly is not None and self.poly.eval_in(L, a, b) == 0


def _ord_poly(P, g):
    k = 0
    while True:
        h = g.divmod_exact(P)
        if h is None:
            return k
        g = h
        k += 1


def ord_along(Z, a):
    """Multiplicity of Z in div(a)."""
    a = as_ratfunc(a)
    if a.is_zero():
        raise ZeroFunction("ord of zero")
    if Z.is_infinite:
        return a.den.deg() - a.num.deg()
    return _ord_poly(Z.poly, a.num) - _ord_poly(Z.poly, a.den)


def prime_divisors(a):
    """{PrimeDivisor: multiplicity} for div(a) on P^2, plus the factorization flag."""
    a = as_ratfunc(a)
    if a.is_zero():
        raise ZeroFunction("divisor of zero")
    out = {}
    assumed = False
    for part, sign in ((a.num, 1), (a.den, -1)):
        if part.deg() < 1:
            continue
        fac = factor2(part)
        assumed = assumed or fac.assumed_irreducible
        for h, e in fac.factors:
            Z = PrimeDivisor(h, check=False)
            Z.assumed_irreducible = fac.assumed_irreducible
            out[Z] = out.get(Z, 0) + sign * e
    k = ord_along(PrimeDivisor.infinity(), a)
    if k:
        out[PrimeDivisor.infinity()] = k
    return {Z: k for Z, k in out.items() if k}, assumed


# -- restriction to a prime divisor


def monic_variable(P):
    """'y' if P has constant leading coefficient as a polynomial in y, else 'x', else None."""
    if P.as_y_poly()[-1].is_const():
        return "y"
    if P.swap().as_y_poly()[-1].is_const():
        return "x"
    return None


def _rem_monic_y(A, P):
    """Remainder of A modulo P in F[x][y], P with constant y-leading coefficient."""
    F = A.F
    a = A.as_y_poly()
    b = P.as_y_poly()
    db = len(b) - 1
    inv = F.inv(b[-1].c[0])
    for k in range(len(a) - 1, db - 1, -1):
        if not a[k]:
            continue
        c = a[k].scale_code(inv)
        for i in range(db + 1):
            a[k - db + i] = a[k - db + i] - c * b[i]
    return Poly2.from_y_coeffs(F, a[:db] if db > 0 else [])


def reduce_mod(A, P, var):
    if var == "y":
        return _rem_monic_y(A, P)
    return _rem_monic_y(A.swap(), P.swap()).swap()


class CurveFunction:
    """A nonzero element of k(Z), held as a representative of order 0 along Z."""

    __slots__ = ("Z", "rep")

    def __init__(self, Z, rep):
        rep = as_ratfunc(rep)
        if rep.is_zero() or ord_along(Z, rep) != 0:
            raise RestrictionUndefined(f"{rep} is not a unit along {Z}")
        if Z.is_infinite:
            rep = RatFunc2(rep.num.top_form(), rep.den.top_form())
        else:
            var = monic_variable(Z.poly)
            if var is not None:
                n = reduce_mod(rep.num, Z.poly, var)
                d = reduce_mod(rep.den, Z.poly, var)
                if n.is_zero() or d.is_zero():
                    raise RestrictionUndefined(f"{rep} reduces to zero along {Z}")
                rep = RatFunc2(n, d)
        self.Z = Z
        self.rep = rep

    @classmethod
    def one(cls, Z, F):
        return cls(Z, RatFunc2(Poly2.const(F, 1)))

    def __eq__(self, o):
        if not isinstance(o, CurveFunction):
            return NotImplemented
        if self.Z != o.Z:
            return False
        diff = self.rep.num * o.rep.den - o.rep.num * self.rep.den
        if diff.is_zero():
            return True
        if self.Z.is_infinite:
            return False
        return self.Z.poly.divides(diff)

    def __hash__(self):
        return hash(self.Z)

    def is_one(self):
        return self == CurveFunction.one(self.Z, self.rep.F)

    def __mul__(self, o):
        if isinstance(o, CurveFunction):
            if o.Z != self.Z:
                raise ValueError("functions on different curves")
            o = o.rep
        return CurveFunction(self.Z, self.rep * o)

    def inverse(self):
        return CurveFunction(self.Z, self.rep.inverse())

    def __truediv__(self, o):
        if isinstance(o, CurveFunction):
            o = o.rep
        return CurveFunction(self.Z, self.rep / o)

    def __pow__(self, e):
        return CurveFunction(self.Z, self.rep ** e)

    def __repr__(self):
        return f"CurveFunction({self})"

    def __str__(self):
        return f"{self.rep} on {self.Z}"


def restrict(a, Z):
    return CurveFunction(Z, a)


# -- closed points of A^2


@dataclass(frozen=True)
class ClosedPoint:
    """A closed point of A^2 over F: r(x) irreducible over F and h(y) irreducible
    over L_r = F(alpha), alpha the least root of r."""

    r: Poly
    h: Poly

    @property
    def degree(self):
        return self.r.deg() * self.h.deg()

    def sort_key(self):
        return (self.degree, self.r.sort_key(), self.h.sort_key())

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def geometric(self):
        """(L, a, b): a representative point with coordinates in L = k(point)."""
        F = self.r.F
        Lr, alpha = _root_field(self.r)
        L = field(F.p, F.n * self.degree)
        emb = L.embed_from(Lr)
        hL = Poly(L, [emb[c] for c in self.h.c], "y")
        return L, emb[alpha], min(hL.roots())

    def __str__(self):
        if self.degree == 1:
            F = self.r.F
            a = F.elem(F.neg(self.r.c[0]))
            b = self.h.F.elem(self.h.F.neg(self.h.c[0]))
            return f"({a}, {b})"
        return f"{{x: {self.r}, y: {self.h}}}"


def _root_field(r):
    F = r.F
    L = field(F.p, F.n * r.deg())
    emb = L.embed_from(F)
    return L, min(Poly(L, [emb[c] for c in r.c]).roots())


def rational_point(F, a, b):
    a, b = F(a).c, F(b).c
    return ClosedPoint(Poly(F, (F.neg(a), 1), "x"), Poly(F, (F.neg(b), 1), "y"))


def _fiber(P, alpha, L):
    """P(alpha, y) as a Poly over L."""
    return Poly(L, [c.eval_in(L, alpha) for c in P.as_y_poly()], "y")


def intersection_points(P, N):
    """Closed points of A^2 on both V(P) and V(N) (no common component)."""
    F = P.F
    if P.deg() < 1 or N.deg() < 1:
        return []
    R = resultant_y(P, N)
    if R.is_zero():
        raise CommonComponent(f"({P}) and ({N}) share a component")
    if R.deg() < 1:
        return []
    out = []
    for r, _ in factor(R):
        L, alpha = _root_field(r)
        g = gcd(_fiber(P, alpha, L), _fiber(N, alpha, L))
        if g.deg() < 1:
            continue
        for h, _ in factor(g):
            out.append(ClosedPoint(r, h))
    return sorted(out)


def _lift(P, L):
    if P.F == L:
        return P
    emb = L.embed_from(P.F)
    return Poly2(L, {k: emb[c] for k, c in P.t.items()})


def translate(P, L, a, b):
    """P(x + a, y + b) over L."""
    P = _lift(P, L)
    X = Poly2(L, {(1, 0): 1, (0, 0): a})
    Y = Poly2(L, {(0, 1): 1, (0, 0): b})
    xp, yp = [Poly2.const(L, 1)], [Poly2.const(L, 1)]
    for _ in range(P.deg_x()):
        xp.append(xp[-1] * X)
    for _ in range(P.deg_y()):
        yp.append(yp[-1] * Y)
    out = Poly2(L, {})
    for (i, j), c in P.t.items():
        out = out + (xp[i] * yp[j]).scale_code(c)
    return out


def _low_x(f):
    """Least exponent in a nonzero univariate Poly."""
    return next(k for k, c in enumerate(f.c) if c)


def fulton(P, Q):
    """Intersection multiplicity at the origin of two plane curves over a field."""
    total = 0
    while True:
        if P.t.get((0, 0), 0) or Q.t.get((0, 0), 0):
            return total
        p0, q0 = P.subs_y(0), Q.subs_y(0)
        if p0.is_zero() and q0.is_zero():
            raise CommonComponent("curves share a component through the point")
        if p0.is_zero():
            P, Q, p0, q0 = Q, P, q0, p0
        if q0.is_zero():
            # Q = y * Q2, I(P, y) = ord_x P(x, 0)
            total += _low_x(p0)
            Q = Q.exact_div(Poly2.y(Q.F))
            continue
        if p0.deg() > q0.deg():
            P, Q, p0, q0 = Q, P, q0, p0
        L = P.F
        shift = q0.deg() - p0.deg()
        Q = Q.scale_code(p0.c[-1]) - (P * Poly2(L, {(shift, 0): 1})).scale_code(q0.c[-1])


def intersection_number(P, N, pt):
    """I_pt(P, N): length of the local ring of A^2 at pt modulo (P, N)."""
    L, a, b = pt.geometric()
    return fulton(translate(P, L, a, b), translate(N, L, a, b))


def _on_c(L, a, b, C):
    return any(Z.contains_point(L, a, b) for Z in C)


def divisor_on_curve(g, C=()):
    """div of a CurveFunction on Z cap U, U the complement of the curves C in A^2.

    Returned as {ClosedPoint: multiplicity} with zero entries dropped.
    """
    Z = g.Z
    if Z.is_infinite:
        return {}
    out = {}
    for part, sign in ((g.rep.num, 1), (g.rep.den, -1)):
        if part.deg() < 1:
            continue
        for pt in intersection_points(Z.poly, part):
            L, a, b = pt.geometric()
            if _on_c(L, a, b, C):
                continue
            k = sign * fulton(translate(Z.poly, L, a, b), translate(part, L, a, b))
            out[pt] = out.get(pt, 0) + k
    return {pt: k for pt, k in out.items() if k}


# -- branches at points of a curve over C


@dataclass(frozen=True)
class CurvePoint:
    """A closed point on a prime divisor: chart 'affine' or 'inf-y' ([s:1:0],
    x = s/w, y = 1/w) or 'inf-x' ([1:s:0], x = 1/w, y = s/w); local chart
    coordinates (s0, w0) in L."""

    chart: str
    L: FiniteField
    s0: int
    w0: int
    label: str

    def __str__(self):
        return self.label


def _chart_poly(P, chart):
    d = P.deg()
    if chart == "affine":
        return P
    if chart == "inf-y":
        return Poly2(P.F, {(i, d - i - j): c for (i, j), c in P.t.items()})
    return Poly2(P.F, {(j, d - i - j): c for (i, j), c in P.t.items()})


def points_at_infinity(P):
    """Closed points of V(P) on the line at infinity."""
    F = P.F
    T = P.top_form()
    d = T.deg()
    out = []
    ts = Poly(F, [T.t.get((i, d - i), 0) for i in range(d + 1)], "x")
    if ts.deg() >= 1:
        for r, _ in factor(ts):
            L, s0 = _root_field(r)
            if r.deg() == 1:
                label = f"[{F.elem(F.neg(r.c[0]))} : 1 : 0]"
            else:
                label = f"[s : 1 : 0], {r}(s) = 0".replace("x", "s")
            out.append(CurvePoint("inf-y", L, s0, 0, label))
    if ts.deg() < d:
        out.append(CurvePoint("inf-x", F, 0, 0, "[1 : 0 : 0]"))
    return out


def points_over(Z, C):
    """Closed points of Z lying on the curves in C."""
    out = []
    if Z.is_infinite:
        return out
    for W in C:
        if W == Z:
            continue
        if W.is_infinite:
            out.extend(points_at_infinity(Z.poly))
            continue
        for pt in intersection_points(Z.poly, W.poly):
            L, a, b = pt.geometric()
            cp = CurvePoint("affine", L, a, b, str(pt))
            if cp not in out:
                out.append(cp)
    return out


def _eval_series(P, S, W):
    """P(S, W) for Laurent series S, W."""
    L = S.E
    emb = L.embed_from(P.F)
    sp, wp = {0: LaurentSeries.const(L, 1)}, {0: LaurentSeries.const(L, 1)}
    for k in range(1, P.deg_x() + 1):
        sp[k] = sp[k - 1] * S
    for k in range(1, P.deg_y() + 1):
        wp[k] = wp[k - 1] * W
    acc = LaurentSeries.zero(L)
    for (i, j), c in P.t.items():
        acc = acc + (sp[i] * wp[j]) * L.elem(emb[c])
    return acc


@dataclass(frozen=True)
class Branch:
    """Local parametrization (X(t), Y(t)) in affine coordinates of a smooth branch."""

    point: CurvePoint
    uniformizer: str
    X: LaurentSeries
    Y: LaurentSeries


def branch(Z, pt, N=8):
    """Parametrize Z near pt to absolute precision N in the declared uniformizer."""
    L = pt.L
    G = translate(_chart_poly(Z.poly, pt.chart), L, pt.s0, pt.w0)
    if G.t.get((0, 0), 0):
        raise ValueError(f"{pt} is not on {Z}")
    gs, gw = G.t.get((1, 0), 0), G.t.get((0, 1), 0)
    t = LaurentSeries(L, {1: L.one()}, N)
    names = {"affine": ("x", "y"), "inf-y": ("x/y", "1/y"), "inf-x": ("y/x", "1/x")}[pt.chart]
    if gw:
        solve_for, c, free = "w", gw, t
    elif gs:
        solve_for, c, free = "s", gs, t
    else:
        raise DegenerateConfiguration(f"{Z} is singular at {pt}")
    cinv = L.elem(L.inv(c))
    V = LaurentSeries.zero(L, N)
    for _ in range(N + 1):
        if solve_for == "w":
            r = _eval_series(G, free, V)
        else:
            r = _eval_series(G, V, free)
        V = (V - r * cinv).truncate(N)
    if solve_for == "w":
        S, W = free, V
        name = names[0]
        base = pt.s0
    else:
        S, W = V, free
        name = names[1]
        base = pt.w0
    S = S + L.elem(pt.s0)
    W = W + L.elem(pt.w0)
    unif = name if not base else f"{name} - {L.elem(base)}"
    if pt.chart == "affine":
        X, Y = S, W
    elif pt.chart == "inf-y":
        X, Y = S / W, W.inverse()
    else:
        X, Y = W.inverse(), S / W
    return Branch(pt, unif, X, Y)


def expand_on_branch(g, br):
    """Laurent expansion of a function (RatFunc2 or CurveFunction) along a branch."""
    rep = g.rep if isinstance(g, CurveFunction) else as_ratfunc(g)
    num = _eval_series(rep.num, br.X, br.Y)
    den = _eval_series(rep.den, br.X, br.Y)
    if not den.c:
        raise DegenerateConfiguration("denominator vanishes to working precision")
    return num / den
