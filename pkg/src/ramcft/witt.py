"""Witt vectors of length s <= 3 in characteristic p.

Components are kept in display order (a_{s-1}, ..., a_1, a_0), where a_i
carries weight p^i in the filtrations.  This is the usual index order
(x_0, ..., x_{s-1}) with x_j = a_{s-1-j}: the first component is the
Teichmuller-like one, and V prepends a zero at the front.
"""

import threading
from itertools import product

from .errors import (BudgetExceeded, InsufficientPrecision, LengthMismatch,
                     LengthOverflow, NonTermination, NotAPthPower)
from .localfield import INF, LaurentSeries, coeff_pth_root

MAX_LENGTH = 3
MAX_P_LENGTH3 = 17


# -- integer polynomials in 2s variables: dict exponent-tuple -> int

def _ip_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _ip_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _ip_pow(a, e, nvars):
    r = {(0,) * nvars: 1}
    b = a
    while e:
        if e & 1:
            r = _ip_mul(r, b)
        e >>= 1
        if e:
            b = _ip_mul(b, b)
    return r


def _ip_var(k, nvars):
    e = [0] * nvars
    e[k] = 1
    return {tuple(e): 1}


def ghost_poly(p, n, offset, nvars):
    """w_n in the variables offset, ..., offset+n."""
    out = {}
    for i in range(n + 1):
        term = _ip_pow(_ip_var(offset + i, nvars), p ** (n - i), nvars)
        out = _ip_add(out, {k: v * p ** i for k, v in term.items()})
    return out


class UniversalPolys:
    """Integer polynomials S_n, P_n for Witt addition and multiplication,
    solved from the ghost equations, with mod-p copies."""

    def __init__(self, p, s):
        if s > MAX_LENGTH or (s == MAX_LENGTH and p > MAX_P_LENGTH3):
            raise LengthOverflow(f"W_{s} in characteristic {p} is not supported")
        self.p, self.s = p, s
        nv = 2 * s
        self.sums, self.prods = [], []
        for n in range(s):
            wx = ghost_poly(p, n, 0, nv)
            wy = ghost_poly(p, n, s, nv)
            tot_s = _ip_add(wx, wy)
            tot_p = _ip_mul(wx, wy)
            for i in range(n):
                ps = _ip_pow(self.sums[i], p ** (n - i), nv)
                pp = _ip_pow(self.prods[i], p ** (n - i), nv)
                tot_s = _ip_add(tot_s, {k: v * p ** i for k, v in ps.items()}, -1)
                tot_p = _ip_add(tot_p, {k: v * p ** i for k, v in pp.items()}, -1)
            for tot in (tot_s, tot_p):
                for v in tot.values():
                    assert v % p ** n == 0
            self.sums.append({k: v // p ** n for k, v in tot_s.items()})
            self.prods.append({k: v // p ** n for k, v in tot_p.items()})
        self.sums_mod = [_reduce(f, p) for f in self.sums]
        self.prods_mod = [_reduce(f, p) for f in self.prods]
        # carry part of S_n: S_n - X_n - Y_n, used for negation
        self.carries_mod = []
        for n in range(s):
            xn = [0] * nv
            xn[n] = 1
            yn = [0] * nv
            yn[s + n] = 1
            self.carries_mod.append([(c, e) for c, e in self.sums_mod[n]
                                     if e != tuple(xn) and e != tuple(yn)])

    def check_ghost(self):
        """Verify w_n(S) = w_n(X) + w_n(Y) and w_n(P) = w_n(X) w_n(Y) over Z."""
        p, s, nv = self.p, self.s, 2 * self.s
        for n in range(s):
            lhs_s, lhs_p = {}, {}
            for i in range(n + 1):
                a = _ip_pow(self.sums[i], p ** (n - i), nv)
                b = _ip_pow(self.prods[i], p ** (n - i), nv)
                lhs_s = _ip_add(lhs_s, {k: v * p ** i for k, v in a.items()})
                lhs_p = _ip_add(lhs_p, {k: v * p ** i for k, v in b.items()})
            wx, wy = ghost_poly(p, n, 0, nv), ghost_poly(p, n, s, nv)
            if lhs_s != _ip_add(wx, wy) or lhs_p != _ip_mul(wx, wy):
                return False
        return True


def _reduce(f, p):
    return sorted(((v % p, k) for k, v in f.items() if v % p), key=lambda t: t[1])


_CACHE = {}
_LOCK = threading.Lock()


def universal_polys(p, s):
    key = (p, s)
    with _LOCK:
        if key not in _CACHE:
            _CACHE[key] = UniversalPolys(p, s)
        return _CACHE[key]


def _eval_terms(terms, vals, zero, one):
    cache = {}
    acc = None
    for c, e in terms:
        term = None
        for k, ek in enumerate(e):
            if ek:
                key = (k, ek)
                if key not in cache:
                    cache[key] = vals[k] ** ek
                term = cache[key] if term is None else term * cache[key]
        if term is None:
            term = one
        if c != 1:
            term = term * c
        acc = term if acc is None else acc + term
    return zero if acc is None else acc


class WittVector:
    """Length-s Witt vector; ``comps`` in display order (a_{s-1}, ..., a_0)."""

    __slots__ = ("comps", "p")

    def __init__(self, comps, p):
        comps = list(comps)
        if not 1 <= len(comps) <= MAX_LENGTH + 1:
            raise LengthOverflow(f"length {len(comps)}")
        self.comps = comps
        self.p = p

    @property
    def s(self):
        return len(self.comps)

    def a(self, i):
        return self.comps[self.s - 1 - i]

    @classmethod
    def from_a(cls, a_list, p):
        """Build from [a_0, a_1, ..., a_{s-1}]."""
        return cls(list(reversed(a_list)), p)

    @classmethod
    def single_slot(cls, s, i, val, zero, p):
        comps = [zero] * s
        comps[s - 1 - i] = val
        return cls(comps, p)

    def _check(self, o):
        if self.s != o.s:
            raise LengthMismatch(f"lengths {self.s} and {o.s}")

    def _zero_one(self):
        c = self.comps[0]
        if isinstance(c, LaurentSeries):
            return (LaurentSeries.zero(c.E, INF, c.var),
                    LaurentSeries.const(c.E, c.E.one(), c.var))
        z = c - c
        return z, z + 1

    def __add__(self, o):
        self._check(o)
        if self.s == 1:
            return WittVector([self.comps[0] + o.comps[0]], self.p)
        U = universal_polys(self.p, self.s)
        zero, one = self._zero_one()
        vals = self.comps + o.comps
        return WittVector([_eval_terms(t, vals, zero, one) for t in U.sums_mod], self.p)

    def __mul__(self, o):
        self._check(o)
        if self.s == 1:
            return WittVector([self.comps[0] * o.comps[0]], self.p)
        U = universal_polys(self.p, self.s)
        zero, one = self._zero_one()
        vals = self.comps + o.comps
        return WittVector([_eval_terms(t, vals, zero, one) for t in U.prods_mod], self.p)

    def __neg__(self):
        if self.s == 1 or self.p != 2:
            # for odd p, -1 is the Teichmuller lift of -1
            return WittVector([-c for c in self.comps], self.p)
        U = universal_polys(self.p, self.s)
        zero, one = self._zero_one()
        ys = []
        for n in range(self.s):
            vals = self.comps + ys + [zero] * (self.s - n)
            carry = _eval_terms(U.carries_mod[n], vals, zero, one)
            ys.append(-self.comps[n] - carry)
        return WittVector(ys, self.p)

    def __sub__(self, o):
        return self + (-o)

    def scalar(self, k):
        """Multiplication by the integer k >= 0 via repeated addition."""
        zero, _ = self._zero_one()
        acc = WittVector([zero] * self.s, self.p)
        base = self
        while k:
            if k & 1:
                acc = acc + base
            k >>= 1
            if k:
                base = base + base
        return acc

    def frobenius(self):
        return WittVector([c ** self.p for c in self.comps], self.p)

    def verschiebung(self):
        if self.s >= MAX_LENGTH:
            raise LengthOverflow("V beyond length 3")
        zero, _ = self._zero_one()
        return WittVector([zero] + self.comps, self.p)

    def restrict(self, s):
        """Image under the projection W_{s'} -> W_s (keep the first s)."""
        return WittVector(self.comps[:s], self.p)

    def map(self, f):
        return WittVector([f(c) for c in self.comps], self.p)

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, o):
        return isinstance(o, WittVector) and self.p == o.p and self.comps == o.comps

    def __hash__(self):
        return hash(tuple(str(c) for c in self.comps))

    def agrees_with(self, o):
        return self.s == o.s and all(a.agrees_with(b) for a, b in zip(self.comps, o.comps))

    def __str__(self):
        return "[" + "; ".join(str(c) for c in self.comps) + "]"

    __repr__ = __str__


def zero_vector(s, E, p, var="t"):
    return WittVector([LaurentSeries.zero(E, INF, var) for _ in range(s)], p)


def witt_add(v, w):
    return v + w


def witt_mul(v, w):
    return v * w


def frobenius(w):
    return w.frobenius()


def verschiebung(w):
    return w.verschiebung()


# -- filtrations

def _val(a):
    """(lower bound for the valuation, whether it is exact)."""
    if a.c:
        return min(a.c), True
    return a.prec, a.prec == INF


def _holds(w, bounds):
    for i in range(w.s):
        v, exact = _val(w.a(i))
        if v * w.p ** i >= bounds[i]:
            continue
        if exact:
            return False
        raise InsufficientPrecision(f"valuation of a_{i} not determined")
    return True


def ord_p(m, p):
    k = 0
    while m and m % p == 0:
        m //= p
        k += 1
    return k


def in_fillog(w, m):
    return _holds(w, [-m] * w.s)


def in_fil(w, m):
    if m < 1:
        raise ValueError("in_fil needs m >= 1")
    sp = min(w.s, ord_p(m, w.p))
    return _holds(w, [-(m - 1) if i >= sp else -m for i in range(w.s)])


def is_integral(w):
    return _holds(w, [0] * w.s)


def log_weight(w):
    """m_log = max_i -p^i v(a_i), at least 0."""
    best = 0
    for i in range(w.s):
        v, exact = _val(w.a(i))
        if v < 0:
            if not exact:
                raise InsufficientPrecision(f"valuation of a_{i} not determined")
            best = max(best, -v * w.p ** i)
    return best


def _offending(w):
    """Components whose leading term can be lowered by (1-F)."""
    out = []
    p = w.p
    for i in range(w.s):
        a = w.a(i)
        v, exact = _val(a)
        if v >= 0:
            continue
        if not exact:
            raise InsufficientPrecision(f"valuation of a_{i} not determined")
        if v % p:
            continue
        try:
            c = coeff_pth_root(a.c[v])
        except NotAPthPower:
            continue
        out.append((-v * p ** i, i, v, c))
    return out


def best_form(w):
    """Remove leading terms c^p t^(pk) with k < 0 by adding (1-F) of single-slot
    vectors, heaviest log-weight first."""
    cap = 10 * (log_weight(w) + w.s)
    for _ in range(cap + 1):
        off = _offending(w)
        if not off:
            return w
        _, i, v, c = max(off, key=lambda t: (t[0], t[1]))
        a = w.a(i)
        y = WittVector.single_slot(w.s, i, LaurentSeries.monomial(a.E, v // w.p, c, a.var),
                                   LaurentSeries.zero(a.E, INF, a.var), w.p)
        w = w + (y - y.frobenius())
    raise NonTermination("best_form exceeded its iteration cap")


def box_conductor(w):
    """0 if integral, else the least m >= 1 with in_fil(w, m)."""
    if is_integral(w):
        return 0
    m = 1
    while not in_fil(w, m):
        m += 1
    return m


def artin_conductor(w):
    b = best_form(w)
    if is_integral(b):
        return 0
    m = log_weight(b)
    if in_fil(b, m):
        return m
    assert in_fil(b, m + 1)
    return m + 1


# -- exhaustive oracle

def polar_parts(F, budget, var="t", with_constant=False):
    """All Laurent polynomials with exponents in [-budget, -1] (and 0 if
    with_constant) and coefficients in F."""
    exps = list(range(-budget, 0)) + ([0] if with_constant else [])
    out = []
    for cs in product(range(F.q), repeat=len(exps)):
        out.append(LaurentSeries(F, {e: F.elem(c) for e, c in zip(exps, cs) if c}, INF, var))
    return out


def _best_last_valuation(u, F, budget, memo):
    """max over x (poles <= budget) of v(u + x - x^p), capped at 0."""
    polar = tuple(sorted((k, a.c) for k, a in u.c.items() if k < 0))
    if not polar:
        return 0
    if polar in memo:
        return memo[polar]
    p = F.p
    if -polar[0][0] > p * budget:
        memo[polar] = polar[0][0]
        return polar[0][0]
    target = {k: c for k, c in polar}
    best = polar[0][0]
    exps = list(range(-budget, 0))
    for cs in product(range(F.q), repeat=budget):
        d = dict(target)
        for e, c in zip(exps, cs):
            if c:
                d[e] = F.add(d.get(e, 0), c)
                d[e * p] = F.sub(d.get(e * p, 0), F.frob(c))
        neg = [k for k, c in d.items() if c and k < 0]
        v = min(neg) if neg else 0
        if v > best:
            best = v
            if best == 0:
                break
    memo[polar] = best
    return best


def conductor_oracle(w, pole_budget, F, memo=None):
    """Brute-force minimum of box_conductor(w + (1-F)v) over v whose
    components are Laurent polynomials over F with poles <= pole_budget.

    The last component of v enters linearly (as V^{s-1}), so it is optimized
    through the exhaustive one-component search; the other components are
    enumerated outright.
    """
    if F.q > 4 or pole_budget > 6 or w.s > 2:
        raise BudgetExceeded("conductor_oracle is limited to q <= 4, budget <= 6, s <= 2")
    memo = {} if memo is None else memo
    s, p = w.s, w.p
    a0 = w.a(0)
    E, var = a0.E, a0.var
    zero = LaurentSeries.zero(E, INF, var)
    with_const = F.q > F.p
    if s == 1:
        heads = [w]
    else:
        heads = []
        for x0 in polar_parts(F, pole_budget, var, with_const):
            y = WittVector([x0, zero], p)
            heads.append(w + (y - y.frobenius()))
    best = None
    for u in heads:
        v = _best_last_valuation(u.a(0), F, pole_budget, memo)
        last = zero if v >= 0 else LaurentSeries.monomial(E, v, 1, var)
        cand = WittVector(u.comps[:-1] + [last], p)
        c = box_conductor(cand)
        if best is None or c < best:
            best = c
    return best


# -- ghost-lift oracle

def _lp_add(a, b, k=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + k * c
    return {e: c for e, c in out.items() if c}


def _lp_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _lp_pow(a, n):
    r = {0: 1}
    while n:
        if n & 1:
            r = _lp_mul(r, a)
        n >>= 1
        if n:
            a = _lp_mul(a, a)
    return r


def _ghost(xs, p, n):
    out = {}
    for j in range(n + 1):
        out = _lp_add(out, _lp_pow(xs[j], p ** (n - j)), p ** j)
    return out


def ghost_oracle(v, w, op="add"):
    """v + w (or v * w) computed through integer lifts and ghost components.

    Components must be exact Laurent polynomials over a prime field.  The
    lifts live in Z[t, 1/t], where the ghost map is injective, so the
    components of the result are recovered by exact division by p^n and then
    reduced mod p.  No universal polynomial is used.
    """
    if v.s != w.s:
        raise LengthMismatch(f"lengths {v.s} and {w.s}")
    p, s = v.p, v.s
    a0 = v.comps[0]
    E, var = a0.E, a0.var
    if getattr(E, "n", 1) != 1:
        raise ValueError("ghost oracle needs prime-field coefficients")
    for c in v.comps + w.comps:
        if c.prec != INF:
            raise InsufficientPrecision("ghost oracle needs exact components")
    xs = [{k: int(c.c) for k, c in a.c.items()} for a in v.comps]
    ys = [{k: int(c.c) for k, c in a.c.items()} for a in w.comps]
    zs = []
    for n in range(s):
        gx, gy = _ghost(xs, p, n), _ghost(ys, p, n)
        r = _lp_add(gx, gy) if op == "add" else _lp_mul(gx, gy)
        for j in range(n):
            r = _lp_add(r, _lp_pow(zs[j], p ** (n - j)), -p ** j)
        assert all(c % p ** n == 0 for c in r.values())
        zs.append({e: c // p ** n for e, c in r.items()})
    comps = [LaurentSeries(E, {e: E(c % p) for e, c in z.items()}, INF, var) for z in zs]
    return WittVector(comps, p)


def parse_witt(text, E, p, default_prec=None, var="t"):
    """Parse '[a_{s-1}; ...; a_0]' with series entries."""
    from .algebra.expr import split_top
    from .errors import ParseError
    from .localfield import parse_series
    t = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError("a Witt vector is written [a_{s-1}; ...; a_0]", t[:1] or "<end>", lead)
    comps = []
    off = lead + 1
    for part in split_top(t[1:-1], ";"):
        try:
            comps.append(parse_series(part, E, var, default_prec))
        except ParseError as e:
            raise ParseError(e.msg, e.token, (e.pos or 0) + off) from None
        off += len(part) + 1
    if len(comps) > MAX_LENGTH:
        raise ParseError(f"Witt length above {MAX_LENGTH}", t, lead)
    return WittVector(comps, p)
