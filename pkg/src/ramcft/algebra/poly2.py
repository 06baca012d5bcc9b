"""Bivariate polynomials and rational functions over a finite field.

A Poly2 maps (i, j) -> code for the monomial x^i y^j.  Greatest common
divisors go through content and primitive part in F[x][y]; factorization is
bounded (see factor2).
"""

from itertools import product

from ..errors import ZeroFunction, ZeroPolynomial
from .ff import FieldElem
from .poly import Poly, factor, gcd, render_poly

DEGREE_CAP = 24
TRIAL_LIMIT = 20000


class Poly2:
    __slots__ = ("F", "t")

    def __init__(self, F, terms=None):
        self.F = F
        self.t = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def x(cls, F):
        return cls(F, {(1, 0): 1})

    @classmethod
    def y(cls, F):
        return cls(F, {(0, 1): 1})

    @classmethod
    def const(cls, F, a):
        return cls(F, {(0, 0): _code(F, a)})

    @classmethod
    def from_x_poly(cls, f):
        return cls(f.F, {(i, 0): a for i, a in enumerate(f.c)})

    @classmethod
    def from_y_poly(cls, f):
        return cls(f.F, {(0, j): a for j, a in enumerate(f.c)})

    @property
    def parent(self):
        return self.F

    def is_zero(self):
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def is_one(self):
        return self.t == {(0, 0): 1}

    def is_const(self):
        return all(k == (0, 0) for k in self.t)

    def deg(self):
        return max((i + j for i, j in self.t), default=-1)

    def deg_x(self):
        return max((i for i, _ in self.t), default=-1)

    def deg_y(self):
        return max((j for _, j in self.t), default=-1)

    def lead_key(self):
        return max(self.t, key=lambda k: (k[0] + k[1], k[0]))

    def lc(self):
        return self.t[self.lead_key()] if self.t else 0

    def normalize(self):
        """Scale so the leading coefficient is 1."""
        if not self.t:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return self.scale_code(self.F.inv(lc))

    def scale(self, a):
        return self.scale_code(_code(self.F, a))

    def scale_code(self, a):
        """Multiply by the field element with code a."""
        mul = self.F.mul
        return Poly2(self.F, {k: mul(v, a) for k, v in self.t.items()})

    def _coerce(self, o):
        if isinstance(o, Poly2):
            return o
        if isinstance(o, (int, FieldElem)):
            return Poly2.const(self.F, o)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        out = dict(self.t)
        add = self.F.add
        for k, v in o.t.items():
            out[k] = add(out.get(k, 0), v)
        return Poly2(self.F, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.F.neg
        return Poly2(self.F, {k: neg(v) for k, v in self.t.items()})

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

    def __mul__(self, o):
        if isinstance(o, (int, FieldElem)):
            return self.scale(o)
        if not isinstance(o, Poly2):
            return NotImplemented
        out = {}
        add, mul = self.F.add, self.F.mul
        for (i, j), a in self.t.items():
            for (k, l), b in o.t.items():
                key = (i + k, j + l)
                out[key] = add(out.get(key, 0), mul(a, b))
        return Poly2(self.F, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = Poly2.const(self.F, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self.F == o.F and self.t == o.t

    def __hash__(self):
        return hash((self.F.key, tuple(sorted(self.t.items()))))

    def sort_key(self):
        return (self.deg(), tuple(sorted(self.t.items(), reverse=True)))

    # -- views as univariate polynomials with polynomial coefficients
    def as_y_poly(self):
        """List indexed by y-degree of Poly in x."""
        n = self.deg_y()
        rows = [[0] * (self.deg_x() + 1) for _ in range(n + 1)]
        for (i, j), a in self.t.items():
            rows[j][i] = a
        return [Poly(self.F, r, "x") for r in rows]

    @classmethod
    def from_y_coeffs(cls, F, coeffs):
        t = {}
        for j, c in enumerate(coeffs):
            for i, a in enumerate(c.c):
                if a:
                    t[(i, j)] = a
        return cls(F, t)

    def swap(self):
        return Poly2(self.F, {(j, i): a for (i, j), a in self.t.items()})

    def content_y(self):
        """gcd over F[x] of the y-coefficients (monic)."""
        g = Poly(self.F, (), "x")
        for c in self.as_y_poly():
            g = gcd(g, c) if c else g
            if g.is_one():
                break
        return g

    def primitive_part_y(self):
        if not self.t:
            return self
        c = self.content_y()
        if c.is_one():
            return self
        return Poly2.from_y_coeffs(self.F, [a.exact_div(c) for a in self.as_y_poly()])

    def mul_x_poly(self, c):
        return Poly2.from_y_coeffs(self.F, [a * c for a in self.as_y_poly()])

    def divmod_exact(self, o):
        """Exact division in F[x][y]; returns quotient or None."""
        if not o.t:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.t:
            return self
        a = self.as_y_poly()
        b = o.as_y_poly()
        db = len(b) - 1
        lb = b[-1]
        if len(a) - 1 < db:
            return None
        qt = [Poly(self.F, (), "x") for _ in range(len(a) - db)]
        for k in range(len(a) - 1, db - 1, -1):
            if not a[k]:
                continue
            c, r = divmod(a[k], lb)
            if r:
                return None
            qt[k - db] = c
            for i in range(db + 1):
                a[k - db + i] = a[k - db + i] - c * b[i]
        if any(a[:db]):
            return None
        return Poly2.from_y_coeffs(self.F, qt)

    def exact_div(self, o):
        r = self.divmod_exact(o)
        if r is None:
            raise ArithmeticError("inexact bivariate division")
        return r

    def divides(self, o):
        return o.divmod_exact(self) is not None

    def diff_x(self):
        sm = self.F.smul
        return Poly2(self.F, {(i - 1, j): sm(i, a) for (i, j), a in self.t.items() if i})

    def diff_y(self):
        sm = self.F.smul
        return Poly2(self.F, {(i, j - 1): sm(j, a) for (i, j), a in self.t.items() if j})

    def pth_root(self):
        p = self.F.p
        return Poly2(self.F, {(i // p, j // p): self.F.pth_root(a) for (i, j), a in self.t.items()})

    def eval_in(self, L, a, b):
        """Value at (a, b), codes of an extension field L of F."""
        emb = L.embed_from(self.F)
        acc = 0
        apow = {}
        bpow = {}
        for (i, j), c in self.t.items():
            if i not in apow:
                apow[i] = L.pow(a, i)
            if j not in bpow:
                bpow[j] = L.pow(b, j)
            acc = L.add(acc, L.mul(emb[c], L.mul(apow[i], bpow[j])))
        return acc

    def subs_y(self, b):
        """Substitute y = b (a code of F); returns Poly in x."""
        out = {}
        F = self.F
        for (i, j), c in self.t.items():
            out[i] = F.add(out.get(i, 0), F.mul(c, F.pow(b, j)))
        n = max(out, default=-1)
        return Poly(F, [out.get(i, 0) for i in range(n + 1)], "x")

    def subs_x(self, a):
        """Substitute x = a (a code of F); returns Poly in y."""
        return _subs_x(self, a)

    def top_form(self):
        """Homogeneous part of top total degree."""
        d = self.deg()
        return Poly2(self.F, {k: v for k, v in self.t.items() if k[0] + k[1] == d})

    def __repr__(self):
        return f"Poly2({self})"

    def __str__(self):
        if not self.t:
            return "0"
        terms = []
        for (i, j) in sorted(self.t, key=lambda k: (-(k[0] + k[1]), -k[0])):
            a = self.F.elem(self.t[(i, j)])
            mono = "*".join(m for m in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}")) if m)
            s = str(a)
            if not mono:
                terms.append(s)
            elif a.is_one():
                terms.append(mono)
            elif a.F.n > 1 and a.n_terms > 1:
                terms.append(f"({s})*{mono}")
            else:
                terms.append(f"{s}*{mono}")
        return " + ".join(terms)


def _subs_x(f, a):
    out = {}
    F = f.F
    for (i, j), c in f.t.items():
        out[j] = F.add(out.get(j, 0), F.mul(c, F.pow(a, i)))
    n = max(out, default=-1)
    return Poly(F, [out.get(j, 0) for j in range(n + 1)], "y")


def _code(F, a):
    if isinstance(a, FieldElem):
        return F(a).c if a.F != F else a.c
    return F.from_int(int(a))


def _prem(a, b):
    """Pseudo-remainder of a by b as polynomials in y over F[x]."""
    A = a.as_y_poly()
    B = b.as_y_poly()
    db = len(B) - 1
    lb = B[-1]
    while len(A) - 1 >= db and any(A):
        while A and not A[-1]:
            A.pop()
        if len(A) - 1 < db:
            break
        lead = A[-1]
        k = len(A) - 1 - db
        A = [c * lb for c in A]
        for i in range(db + 1):
            A[k + i] = A[k + i] - lead * B[i]
        A.pop()
    return Poly2.from_y_coeffs(a.F, A)


def gcd2(a, b):
    """Normalized gcd in F[x, y]."""
    if not a.t:
        return b.normalize()
    if not b.t:
        return a.normalize()
    ca, cb = a.content_y(), b.content_y()
    c = gcd(ca, cb)
    a, b = a.primitive_part_y(), b.primitive_part_y()
    if a.deg_y() < b.deg_y():
        a, b = b, a
    while b.t and b.deg_y() > 0:
        r = _prem(a, b)
        a, b = b, r.primitive_part_y()
    if not b.t:
        g = a.primitive_part_y()
    else:
        g = Poly2.const(a.F, 1)
    return (g.mul_x_poly(c)).normalize()


def resultant_y(a, b):
    """Resultant with respect to y, a Poly in x (fraction-free Bareiss)."""
    A = a.as_y_poly()
    B = b.as_y_poly()
    m, n = len(A) - 1, len(B) - 1
    F = a.F
    zero = Poly(F, (), "x")
    if m < 0 or n < 0:
        return zero
    if m == 0:
        return A[0] ** n
    if n == 0:
        return B[0] ** m
    size = m + n
    M = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(A)):
            row[i + k] = c
        M.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(B)):
            row[i + k] = c
        M.append(row)
    return _bareiss_det(M, F)


def _bareiss_det(M, F):
    n = len(M)
    M = [list(r) for r in M]
    sign = 1
    prev = Poly(F, (1,), "x")
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return Poly(F, (), "x")
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


class Factor2:
    """Result of factor2: irreducible factors with multiplicity, and a flag
    that is True when some factor could not be proven irreducible."""

    def __init__(self, unit, factors, assumed):
        self.unit = unit
        self.factors = factors
        self.assumed_irreducible = assumed

    def __iter__(self):
        return iter(self.factors)


def _proves_irreducible(g):
    """Specialization proof: g(a, y) irreducible of full y-degree for some a."""
    F = g.F
    n = g.deg_y()
    lcy = g.as_y_poly()[-1]
    for a in range(F.q):
        if lcy.eval_code(a) == 0:
            continue
        h = _subs_x(g, a)
        if h.deg() == n and h.is_irreducible():
            return True
    m = g.deg_x()
    lcx = g.swap().as_y_poly()[-1]
    for b in range(F.q):
        if lcx.eval_code(b) == 0:
            continue
        h = g.subs_y(b)
        if h.deg() == m and h.is_irreducible():
            return True
    return False


def _find_factor(g):
    """Trial division by candidates of total degree <= deg(g)//2.

    Returns a proper factor, None if none exists, or False if the candidate
    space exceeds TRIAL_LIMIT.
    """
    F = g.F
    D = g.deg()
    for k in range(1, D // 2 + 1):
        monos = [(i, j) for i in range(k + 1) for j in range(k + 1 - i)]
        if F.q ** (len(monos) - 1) > TRIAL_LIMIT:
            return False
        probes = list(range(min(F.q, 3)))
        for lead in sorted((m for m in monos if m[0] + m[1] == k), key=lambda m: (m[0], m[1])):
            rest = [m for m in monos if (m[0] + m[1], m[0]) < (lead[0] + lead[1], lead[0])]
            for cs in product(range(F.q), repeat=len(rest)):
                h = Poly2(F, dict(zip(rest, cs)))
                h.t[lead] = 1
                if h.deg_y() > g.deg_y() or h.deg_x() > g.deg_x():
                    continue
                ok = True
                for a in probes:
                    hu = _subs_x(h, a)
                    if hu.deg() > 0 and _subs_x(g, a) % hu:
                        ok = False
                        break
                if ok and h.divides(g):
                    return h
    return None


def factor2(f):
    """Factor a nonzero Poly2 into normalized irreducibles (bounded search)."""
    if not f.t:
        raise ZeroPolynomial("factor of zero polynomial")
    if f.deg() > DEGREE_CAP:
        raise ValueError(f"total degree exceeds cap {DEGREE_CAP}")
    F = f.F
    unit = F.elem(f.lc())
    out = {}
    assumed = False

    def add(h, k):
        h = h.normalize()
        out[h] = out.get(h, 0) + k

    def split(g, k):
        nonlocal assumed
        if g.deg() <= 0:
            return
        cy = g.content_y()
        if cy.deg() > 0:
            for h, e in factor(cy):
                add(Poly2.from_x_poly(h), k * e)
            g = g.primitive_part_y()
        cx = g.swap().content_y()
        if cx.deg() > 0:
            for h, e in factor(cx):
                add(Poly2.from_y_poly(Poly(F, h.c, "y")), k * e)
            g = g.swap().primitive_part_y().swap()
        if g.deg() <= 0:
            return
        dx, dy = g.diff_x(), g.diff_y()
        if not dx.t and not dy.t:
            split(g.pth_root(), k * F.p)
            return
        d = gcd2(g, dy) if dy.t else gcd2(g, dx)
        if d.deg() > 0:
            split(d, k)
            split(g.exact_div(d), k)
            return
        if g.deg_x() <= 1 or g.deg_y() <= 1 or _proves_irreducible(g):
            add(g, k)
            return
        h = _find_factor(g)
        if h is False:
            assumed = True
            add(g, k)
        elif h is None:
            add(g, k)
        else:
            split(h, k)
            split(g.exact_div(h), k)

    split(f, 1)
    facs = sorted(out.items(), key=lambda t: t[0].sort_key())
    return Factor2(unit, facs, assumed)


class RatFunc2:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        F = num.F
        if den is None:
            den = Poly2.const(F, 1)
        if not den.t:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if not num.t:
                den = Poly2.const(F, 1)
            elif not den.is_const():
                g = gcd2(num, den)
                if g.deg() > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc()
            if lc != 1:
                inv = F.inv(lc)
                num, den = num.scale_code(inv), den.scale_code(inv)
        self.num = num
        self.den = den

    @property
    def F(self):
        return self.num.F

    def _coerce(self, o):
        if isinstance(o, RatFunc2):
            return o
        if isinstance(o, Poly2):
            return RatFunc2(o)
        if isinstance(o, (int, FieldElem)):
            return RatFunc2(Poly2.const(self.F, o))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc2(self.num + o.num, self.den)
        return RatFunc2(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc2(-self.num, self.den, reduce=False)

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

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc2(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.t:
            raise ZeroFunction("inverse of zero")
        return RatFunc2(self.den, self.num)

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc2(self.num ** e, self.den ** e, reduce=False)

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return not self.num.t

    def __bool__(self):
        return bool(self.num.t)

    def __repr__(self):
        return f"RatFunc2({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.t) > 1:
            ns = f"({ns})"
        ds = str(self.den)
        if len(self.den.t) > 1 or not self.den.is_const():
            ds = f"({ds})"
        return f"{ns}/{ds}"
