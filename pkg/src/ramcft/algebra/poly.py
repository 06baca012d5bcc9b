"""Dense univariate polynomials over a FiniteField, with factorization."""

import random
from functools import lru_cache
from itertools import product

from ..errors import NotAPthPower, ZeroPolynomial
from .ff import FieldElem


def _strip(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Coefficients are field codes, low degree first."""

    __slots__ = ("F", "c", "var")

    def __init__(self, F, coeffs=(), var="x"):
        self.F = F
        self.c = _strip(coeffs)
        self.var = var

    @classmethod
    def gen(cls, F, var="x"):
        return cls(F, (0, 1), var)

    @classmethod
    def const(cls, F, a, var="x"):
        return cls(F, (_code(F, a),), var)

    @classmethod
    def from_elems(cls, F, elems, var="x"):
        return cls(F, [_code(F, a) for a in elems], var)

    @classmethod
    def monomial(cls, F, k, a=1, var="x"):
        return cls(F, [0] * k + [_code(F, a)], var)

    def _new(self, cs):
        return Poly(self.F, cs, self.var)

    @property
    def parent(self):
        return self.F

    def deg(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_one(self):
        return self.c == (1,)

    def is_const(self):
        return len(self.c) <= 1

    def lc(self):
        return self.c[-1] if self.c else 0

    def coeff(self, k):
        return self.F.elem(self.c[k] if 0 <= k < len(self.c) else 0)

    def coeffs(self):
        return [self.F.elem(a) for a in self.c]

    def monic(self):
        if not self.c or self.c[-1] == 1:
            return self
        inv = self.F.inv(self.c[-1])
        return self._new([self.F.mul(a, inv) for a in self.c])

    def _coerce(self, o):
        if isinstance(o, Poly):
            return o
        if isinstance(o, (int, FieldElem)):
            return Poly.const(self.F, o, self.var)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        F = self.F
        if F.n == 1:
            p = F.p
            out = [(x + y) % p for x, y in zip(a, b)] + list(a[len(b):])
        else:
            out = [F.add(x, y) for x, y in zip(a, b)] + list(a[len(b):])
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new([self.F.neg(a) for a in self.c])

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, a):
        return self.scale_code(_code(self.F, a))

    def scale_code(self, a):
        """Multiply by the field element with code a."""
        return self._new([self.F.mul(x, a) for x in self.c])

    def __mul__(self, o):
        if isinstance(o, (int, FieldElem)):
            return self.scale(o)
        if not isinstance(o, Poly):
            return NotImplemented
        a, b = self.c, o.c
        if not a or not b:
            return self._new(())
        F = self.F
        if F.n == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return self._new([v % p for v in out])
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = self._new((1,))
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, o):
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        r = list(self.c)
        db = len(o.c) - 1
        if len(r) <= db:
            return self._new(()), self
        inv = F.inv(o.c[-1])
        qt = [0] * (len(r) - db)
        b = o.c
        if F.n == 1:
            p = F.p
            for k in range(len(r) - 1, db - 1, -1):
                c = r[k] % p
                if c:
                    c = c * inv % p
                    qt[k - db] = c
                    for i in range(db + 1):
                        r[k - db + i] -= c * b[i]
            return self._new(qt), self._new([v % p for v in r[:db]])
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = F.mul(c, inv)
                qt[k - db] = c
                for i in range(db + 1):
                    if b[i]:
                        r[k - db + i] = F.sub(r[k - db + i], F.mul(c, b[i]))
        return self._new(qt), self._new(r[:db])

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def exact_div(self, o):
        qt, r = divmod(self, o)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return qt

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.F == o.F and self.c == o.c
        if isinstance(o, (int, FieldElem)):
            return self.c == Poly.const(self.F, o).c
        return NotImplemented

    def __hash__(self):
        return hash((self.F.key, self.c))

    def sort_key(self):
        return (len(self.c), tuple(reversed(self.c)))

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def __call__(self, a):
        """Evaluate at a code (int) or FieldElem of the same field."""
        if isinstance(a, FieldElem):
            return self.F.elem(self.eval_code(a.c))
        return self.eval_code(a)

    def eval_code(self, a):
        F = self.F
        acc = 0
        for x in reversed(self.c):
            acc = F.add(F.mul(acc, a), x)
        return acc

    def eval_in(self, L, a):
        """Evaluate at a code a of an extension field L."""
        emb = L.embed_from(self.F)
        acc = 0
        for x in reversed(self.c):
            acc = L.add(L.mul(acc, a), emb[x])
        return acc

    def derivative(self):
        F = self.F
        return self._new([F.smul(k, a) for k, a in enumerate(self.c)][1:])

    def powmod(self, e, m):
        r = self._new((1,)) % m
        b = self % m
        while e:
            if e & 1:
                r = (r * b) % m
            b = (b * b) % m
            e >>= 1
        return r

    def pth_root(self):
        """The polynomial r with r^p = self, when one exists."""
        p = self.F.p
        if any(a for k, a in enumerate(self.c) if k % p):
            raise NotAPthPower(str(self))
        return self._new([self.F.pth_root(a) for a in self.c[::p]])

    def frobenius_coeffs(self):
        """Apply a -> a^p to every coefficient."""
        return self._new([self.F.frob(a) for a in self.c])

    def __repr__(self):
        return f"Poly({self.F!r}, {self})"

    def __str__(self):
        return render_poly(self.coeffs(), self.var)

    def factor(self):
        return factor(self)

    def is_irreducible(self):
        return is_irreducible(self)

    def roots(self):
        return roots(self)


def _code(F, a):
    if isinstance(a, FieldElem):
        return F(a).c if a.F != F else a.c
    return F.from_int(int(a))


def render_poly(elems, var):
    terms = []
    for k in range(len(elems) - 1, -1, -1):
        a = elems[k]
        if a.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        s = str(a)
        if not mono:
            terms.append(s)
        elif a.is_one():
            terms.append(mono)
        elif a.F.n > 1 and a.n_terms > 1:
            terms.append(f"({s})*{mono}")
        else:
            terms.append(f"{s}*{mono}")
    return " + ".join(terms) if terms else "0"


def gcd(a, b):
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = a._new((1,)), a._new(())
    t0, t1 = a._new(()), a._new((1,))
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if not r0:
        return r0, s0, t0
    inv = a.F.elem(a.F.inv(r0.lc()))
    return r0 * inv, s0 * inv, t0 * inv


def invmod(a, m):
    g, s, _ = xgcd(a % m, m)
    if not g.is_one():
        raise ZeroDivisionError("not invertible modulo")
    return s % m


def squarefree_decomposition(f):
    """Monic f -> list of (squarefree g, multiplicity)."""
    out = []
    if f.deg() < 1:
        return out
    c = gcd(f, f.derivative())
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        z = w.exact_div(y)
        if not z.is_one():
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if not c.is_one():
        p = f.F.p
        for g, k in squarefree_decomposition(c.pth_root()):
            out.append((g, k * p))
    return out


def distinct_degree(f):
    """Squarefree monic f -> list of (product of degree-d factors, d)."""
    out = []
    x = Poly.gen(f.F, f.var)
    h = x % f
    q = f.F.q
    i = 1
    rest = f
    while rest.deg() >= 2 * i:
        h = h.powmod(q, rest)
        g = gcd(h - x, rest)
        if not g.is_one():
            out.append((g, i))
            rest = rest.exact_div(g)
            h = h % rest
        i += 1
    if rest.deg() > 0:
        out.append((rest, rest.deg()))
    return out


def equal_degree(f, d, rng=None):
    """Split a squarefree monic product of degree-d irreducibles."""
    if f.deg() == d:
        return [f]
    rng = rng or random.Random(0)
    F = f.F
    q = F.q
    n = f.deg()
    while True:
        a = Poly(F, [rng.randrange(q) for _ in range(n)], f.var)
        if a.deg() < 1:
            continue
        if F.p == 2:
            t = a % f
            b = t
            for _ in range(F.n * d - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = a.powmod((q ** d - 1) // 2, f) - 1
        g = gcd(b, f)
        if 0 < g.deg() < n:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor(f):
    """Monic irreducible factors with multiplicities, sorted."""
    if f.is_zero():
        raise ZeroPolynomial("factor of zero polynomial")
    out = []
    for g, k in squarefree_decomposition(f.monic()):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d):
                out.append((irr, k))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def is_irreducible(f):
    if f.deg() < 1:
        return False
    if f.deg() == 1:
        return True
    g = f.monic()
    if not gcd(g, g.derivative()).is_one():
        return False
    dd = distinct_degree(g)
    return len(dd) == 1 and dd[0][1] == g.deg()


def roots(f):
    """Sorted distinct roots (codes) of f in its coefficient field."""
    if f.deg() < 1:
        return []
    F = f.F
    x = Poly.gen(F, f.var)
    g = gcd(x.powmod(F.q, f.monic()) - x, f)
    if g.deg() < 1:
        return []
    out = [(-h).c[0] if h.deg() == 1 else None for h in equal_degree(g, 1)]
    return sorted(out)


def irreducibles(F, d, var="x"):
    """All monic irreducible polynomials of degree d over F, sorted."""
    return list(_irreducibles(F, d, var))


@lru_cache(maxsize=None)
def _irreducibles(F, d, var):
    out = []
    for tail in product(range(F.q), repeat=d):
        f = Poly(F, list(reversed(tail)) + [1], var)
        if is_irreducible(f):
            out.append(f)
    out.sort(key=Poly.sort_key)
    return tuple(out)
