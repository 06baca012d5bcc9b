"""Places and divisors of the projective line over F_q, with local expansions."""

from functools import lru_cache

from ..algebra.expr import Evaluator, evaluate
from ..algebra.ff import GF
from ..algebra.poly import Poly, factor, is_irreducible
from ..algebra.ratfunc import RatFunc
from ..errors import ParseError, ZeroFunction
from ..localfield import INF, LaurentSeries


class Place:
    """A closed point of P^1: a monic irreducible polynomial, or infinity (poly None)."""

    __slots__ = ("poly",)

    def __init__(self, poly=None, check=True):
        if poly is not None and check:
            if poly.deg() < 1 or poly.lc() != 1 or not is_irreducible(poly):
                raise ValueError(f"{poly} is not monic irreducible")
        self.poly = poly

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.deg()

    def sort_key(self):
        if self.poly is None:
            return (1,)
        return (0, self.poly.deg(), self.poly.sort_key())

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def __eq__(self, o):
        return isinstance(o, Place) and self.poly == o.poly

    def __hash__(self):
        return hash(("place", self.poly))

    def __repr__(self):
        return f"Place({self})"

    def __str__(self):
        return "inf" if self.poly is None else f"[{self.poly}]"

    def ord(self, g):
        """Valuation of a RatFunc at this place."""
        if g.is_zero():
            return INF
        if self.poly is None:
            return g.den.deg() - g.num.deg()
        return _ord_poly(g.num, self.poly) - _ord_poly(g.den, self.poly)


def _ord_poly(f, pi):
    k = 0
    while True:
        q, r = divmod(f, pi)
        if r:
            return k
        f = q
        k += 1


class Divisor:
    """Finite formal sum of places with nonzero integer multiplicities."""

    __slots__ = ("m",)

    def __init__(self, mults=None):
        self.m = {v: k for v, k in (mults or {}).items() if k}

    @classmethod
    def point(cls, v, k=1):
        return cls({v: k})

    def degree(self):
        return sum(k * v.degree for v, k in self.m.items())

    def support(self):
        return sorted(self.m)

    def mult(self, v):
        return self.m.get(v, 0)

    def items(self):
        return [(v, self.m[v]) for v in self.support()]

    def is_zero(self):
        return not self.m

    def is_effective(self):
        return all(k > 0 for k in self.m.values())

    def __add__(self, o):
        if isinstance(o, int) and o == 0:
            return self
        out = dict(self.m)
        for v, k in o.m.items():
            out[v] = out.get(v, 0) + k
        return Divisor(out)

    __radd__ = __add__

    def __neg__(self):
        return Divisor({v: -k for v, k in self.m.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Divisor({v: k * n for v, n in self.m.items()})

    __rmul__ = __mul__

    def __le__(self, o):
        return all(n <= o.mult(v) for v, n in self.m.items()) and \
            all(o.m[v] >= 0 for v in o.m if v not in self.m)

    def __eq__(self, o):
        return isinstance(o, Divisor) and self.m == o.m

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        return f"Divisor({self})"

    def __str__(self):
        if not self.m:
            return "0"
        out = ""
        for v, k in self.items():
            term = str(v) if abs(k) == 1 else f"{abs(k)}*{v}"
            if not out:
                out = term if k > 0 else f"-{term}"
            else:
                out += f" + {term}" if k > 0 else f" - {term}"
        return out


class Modulus(Divisor):
    """Effective divisor with nonempty support; U is its complement."""

    __slots__ = ()

    def __init__(self, mults):
        super().__init__(mults)
        if not self.m or not self.is_effective():
            raise ValueError("a modulus is an effective divisor with nonempty support")

    @classmethod
    def of(cls, D):
        return cls(dict(D.m))

    def finite_part(self, F):
        """Product of pi_v^{n_v} over the finite places."""
        M = Poly(F, (1,))
        for v, k in self.m.items():
            if v.poly is not None:
                M = M * v.poly ** k
        return M

    def n_inf(self):
        return self.m.get(Place.infinity(), 0)

    def contains(self, v):
        return v in self.m


# -- parsing

def field_env(F, var, wrap):
    env = {var: wrap(Poly.gen(F, var))}
    if F.n > 1:
        env["g"] = wrap(Poly.const(F, F.gen, var))
    return env


def parse_ratfunc(text, F, var="x"):
    def wrap(p):
        return RatFunc(p)

    def const(k):
        return RatFunc(Poly.const(F, k, var))

    val = evaluate(text, field_env(F, var, wrap), const)
    if isinstance(val, int):
        val = const(val)
    return val


def parse_poly(text, F, var="x"):
    g = parse_ratfunc(text, F, var)
    if not g.den.is_one():
        raise ParseError("expected a polynomial", text.strip(), 0)
    return g.num


def _place_handler(F, var):
    def handle(ev, node):
        if node.__class__.__name__ == "Name" and node.id == "inf":
            return Divisor.point(Place.infinity())
        seg = ev.src[node.col_offset:node.end_col_offset]
        off = ev.pos[node.col_offset]
        try:
            f = parse_ratfunc(seg.replace("**", "^"), F, var)
        except ParseError as e:
            raise ParseError(e.msg, e.token, (e.pos or 0) + off) from None
        if not f.den.is_one() or f.num.deg() < 1:
            ev.fail(node, "a place is a nonconstant polynomial")
        p = f.num.monic()
        if not is_irreducible(p):
            ev.fail(node, "place polynomial is not irreducible")
        return Divisor.point(Place(p, check=False))
    return handle


def parse_divisor(text, F, var="x"):
    """Parse sums like "2*inf", "[x] + [inf]", "2*[x^2+x+1] - [x+1]"."""
    env = {"inf": Divisor.point(Place.infinity())}
    ev = Evaluator(text, env, lambda k: k, place=_place_handler(F, var))
    val = ev.run()
    if isinstance(val, int):
        if val == 0:
            return Divisor()
        raise ParseError("expected a divisor", text.strip(), 0)
    return val


def parse_modulus(text, F, var="x"):
    D = parse_divisor(text, F, var)
    try:
        return Modulus.of(D)
    except ValueError as e:
        raise ParseError(str(e), text.strip(), 0) from None


# -- divisors of functions

def divisor_of(g):
    if g.is_zero():
        raise ZeroFunction("divisor of the zero function")
    out = {}
    for f, sign in ((g.num, 1), (g.den, -1)):
        if f.deg() > 0:
            for pi, e in factor(f):
                v = Place(pi, check=False)
                out[v] = out.get(v, 0) + sign * e
    out[Place.infinity()] = g.den.deg() - g.num.deg()
    return Divisor(out)


def function_of_cycle(z, F, var="x"):
    """A function whose divisor agrees with z away from infinity."""
    g = RatFunc(Poly(F, (1,), var))
    for v, k in z.items():
        if v.poly is not None:
            g = g * RatFunc(v.poly) ** k
    return g


# -- local expansions

@lru_cache(maxsize=None)
def residue_field(v, F):
    """(k(v), embedding table of F, code of the chosen root of pi_v)."""
    if v.poly is None:
        return F, list(range(F.q)), None
    L = GF(F.p, F.n * v.degree)
    emb = L.embed_from(F)
    root = min(Poly(L, [emb[c] for c in v.poly.c]).roots())
    return L, emb, root


@lru_cache(maxsize=None)
def _x_series(v, F, N):
    """x as a series in the uniformizer pi_v, to absolute precision N."""
    L, emb, alpha = residue_field(v, F)
    a = L.elem(alpha)
    if v.degree == 1:
        return LaurentSeries(L, {0: a, 1: L.one()}, INF)
    # P(T) = pi(alpha + T); solve P(T) = s for T by fixed-point iteration
    X = Poly(L, (alpha, 1))
    P = Poly(L, ())
    for c in reversed(v.poly.c):
        P = P * X + Poly(L, (emb[c],))
    c1 = L.elem(P.c[1])
    c1inv = c1.inverse()
    s = LaurentSeries(L, {1: L.one()}, N)
    T = LaurentSeries.zero(L, N)
    higher = [(k, L.elem(P.c[k])) for k in range(2, P.deg() + 1) if P.c[k]]
    for _ in range(N):
        acc = s
        Tk = T
        k_prev = 1
        for k, ck in higher:
            while k_prev < k:
                Tk = Tk * T
                k_prev += 1
            acc = acc - Tk * ck
        T = acc * c1inv
    return T + a


def _expand_poly(f, v, F, N):
    L, emb, _ = residue_field(v, F)
    X = _x_series(v, F, N)
    acc = LaurentSeries.zero(L, N)
    for c in reversed(f.c):
        acc = acc * X
        if c:
            acc = acc + LaurentSeries.const(L, L.elem(emb[c]), prec=N)
    return acc


def expand(g, v, N):
    """Expansion of g in k(v)((t)) with t = pi_v (or 1/x at infinity), absolute precision N."""
    F = g.F
    L, emb, _ = residue_field(v, F)
    if g.is_zero():
        return LaurentSeries.zero(L, N)
    if v.poly is None:
        def at_inf(f):
            return LaurentSeries(L, {-k: L.elem(emb[c]) for k, c in enumerate(f.c) if c}, INF)
        num, den = at_inf(g.num), at_inf(g.den)
        if len(den.c) == 1:
            return (num * den.inverse()).truncate(N)
        return num * den.inverse(prec=N - num.valuation())
    vn, vd = _ord_poly(g.num, v.poly), _ord_poly(g.den, v.poly)
    R = N - (vn - vd)
    if R <= 0:
        return LaurentSeries.zero(L, N)
    num = _expand_poly(g.num, v, F, vn + R)
    den = _expand_poly(g.den, v, F, vd + R)
    return (num / den).truncate(N)


def in_congruence(g, D):
    """True iff g is congruent to 1 modulo D at every place of its support."""
    if g.is_zero():
        raise ZeroFunction("zero is not a unit")
    for v, n in D.items():
        if v.ord(g) != 0:
            return False
        e = expand(g, v, n)
        one = LaurentSeries.const(e.E, e.E.one(), prec=n)
        if not (e - one).c == {}:
            return False
    return True


def in_congruence_exact(g, D):
    """Polynomial-arithmetic version of in_congruence (no series)."""
    diff = g.num - g.den
    for v, n in D.items():
        if v.poly is None:
            if diff and g.den.deg() - diff.deg() < n:
                return False
        elif diff and _ord_poly(diff, v.poly) < n:
            return False
    return True


def all_places(F, max_deg):
    out = [Place.infinity()]
    from ..algebra.poly import irreducibles
    for d in range(1, max_deg + 1):
        out.extend(Place(pi, check=False) for pi in irreducibles(F, d))
    return sorted(out)


def moduli(F, max_deg):
    """Every modulus of degree <= max_deg, in a fixed order."""
    places = all_places(F, max_deg)
    out = []

    def rec(i, cur, left):
        if cur:
            out.append(Modulus(dict(cur)))
        for j in range(i, len(places)):
            v = places[j]
            for n in range(1, left // v.degree + 1):
                cur[v] = n
                rec(j + 1, cur, left - n * v.degree)
                del cur[v]

    rec(0, {}, max_deg)
    return out
