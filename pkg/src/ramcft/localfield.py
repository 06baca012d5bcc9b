"""Truncated Laurent series E((t)), differential forms and residues.

E is a FiniteField, a RationalFunctionField in u, or a LaurentField (series
in u) for the two-dimensional local field F_q((u))((t)).  A series carries the
precision N it is trusted to (math.inf for exact Laurent polynomials).
"""

import math
from dataclasses import dataclass

from .algebra.expr import Evaluator
from .algebra.ff import FieldElem, FiniteField
from .algebra.ratfunc import RatFunc, RationalFunctionField
from .errors import InsufficientPrecision, NotAPthPower, NotInFiltration, ParseError

INF = math.inf
PREC_CAP = 256


def is_perfect(E):
    return isinstance(E, FiniteField)


def coeff_derivative(c):
    if isinstance(c, FieldElem):
        return c.F.zero()
    return c.derivative()


def coeff_pth_root(c):
    if isinstance(c, FieldElem):
        return c.pth_root()
    return c.pth_root()


def coeff_str(c):
    s = str(c)
    if c.n_terms > 1 or "/" in s:
        return f"({s})"
    return s


class LaurentField:
    """Coefficient descriptor for F_q((u)), used as E in E((t))."""

    def __init__(self, F, var="u"):
        self.F = F
        self.var = var
        self.key = ("laurent", F.key, var)

    def __eq__(self, o):
        return isinstance(o, LaurentField) and self.key == o.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{self.F!r}(({self.var}))"

    @property
    def char(self):
        return self.F.p

    def zero(self):
        return LaurentSeries(self.F, {}, INF, self.var)

    def one(self):
        return LaurentSeries(self.F, {0: self.F.one()}, INF, self.var)

    def gen(self):
        return LaurentSeries(self.F, {1: self.F.one()}, INF, self.var)

    def __call__(self, x):
        if isinstance(x, LaurentSeries):
            return x
        return LaurentSeries.const(self.F, self.F(x), self.var)


class BigO:
    """The O(t^N) marker during parsing."""

    def __init__(self, N):
        self.N = N

    def __neg__(self):
        return self

    def __add__(self, o):
        if isinstance(o, BigO):
            return BigO(min(self.N, o.N))
        return NotImplemented

    def __mul__(self, o):
        if isinstance(o, BigO):
            return BigO(self.N + o.N)
        if isinstance(o, LaurentSeries):
            return BigO(self.N + o.val_bound())
        return self

    __rmul__ = __mul__


class LaurentSeries:
    __slots__ = ("E", "c", "prec", "var")

    def __init__(self, E, coeffs, prec=INF, var="t"):
        self.E = E
        self.prec = prec
        self.var = var
        self.c = {k: v for k, v in coeffs.items() if k < prec and not v.is_zero()}

    @classmethod
    def const(cls, E, a, var="t", prec=INF):
        a = E(a) if not _is_elem_of(a, E) else a
        return cls(E, {0: a}, prec, var)

    @classmethod
    def monomial(cls, E, k, a=1, var="t", prec=INF):
        a = E(a) if not _is_elem_of(a, E) else a
        return cls(E, {k: a}, prec, var)

    @classmethod
    def zero(cls, E, prec=INF, var="t"):
        return cls(E, {}, prec, var)

    @property
    def parent(self):
        return LaurentField(self.E, self.var) if isinstance(self.E, FiniteField) else None

    def _new(self, coeffs, prec):
        return LaurentSeries(self.E, coeffs, prec, self.var)

    # -- basic accessors
    def valuation(self):
        return min(self.c) if self.c else INF

    def val_bound(self):
        """Valuation lower bound: the precision for a zero-to-precision series."""
        return min(self.c) if self.c else self.prec

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_exact(self):
        return self.prec == INF

    def coeff(self, k):
        if k >= self.prec:
            raise InsufficientPrecision(f"coefficient of {self.var}^{k} beyond precision {self.prec}")
        a = self.c.get(k)
        return a if a is not None else self.E.zero()

    def lead(self):
        if not self.c:
            raise InsufficientPrecision("zero to current precision")
        return self.c[min(self.c)]

    def truncate(self, N):
        return self._new(self.c, min(self.prec, N))

    def shift(self, k):
        """Multiply by var^k."""
        return self._new({e + k: a for e, a in self.c.items()}, self.prec + k)

    def map_coeffs(self, f):
        return self._new({e: f(a) for e, a in self.c.items()}, self.prec)

    def terms(self):
        return sorted(self.c.items())

    @property
    def n_terms(self):
        return 2 if len(self.c) != 1 or not self.is_exact() else 1

    # -- arithmetic
    def _coerce(self, o):
        if isinstance(o, LaurentSeries) and o.var == self.var:
            return o
        if isinstance(o, int) or _is_elem_of(o, self.E):
            return LaurentSeries.const(self.E, o, self.var)
        if isinstance(o, FieldElem) and isinstance(self.E, (RationalFunctionField, LaurentField)):
            return LaurentSeries.const(self.E, self.E(o), self.var)
        return None

    def __add__(self, o):
        if isinstance(o, BigO):
            return self.truncate(o.N)
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        out = {k: v for k, v in self.c.items() if k < prec}
        for k, v in o.c.items():
            if k < prec:
                out[k] = out[k] + v if k in out else v
        return self._new(out, prec)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.c.items()}, self.prec)

    def __sub__(self, o):
        if isinstance(o, BigO):
            return self.truncate(o.N)
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
        if isinstance(o, BigO):
            return BigO(o.N + self.val_bound())
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        prec = min(self.prec + o.val_bound(), o.prec + self.val_bound())
        if not self.c or not o.c:
            return self._new({}, prec)
        E = self.E
        if isinstance(E, FiniteField):
            # multiply on codes, wrapping only the result
            acc = {}
            oc = [(j, b.c) for j, b in o.c.items()]
            if E.n == 1:
                # prime field: integer products, one reduction at the end
                for i, a in self.c.items():
                    a = a.c
                    for j, b in oc:
                        k = i + j
                        if k < prec:
                            acc[k] = acc.get(k, 0) + a * b
                p = E.p
                return self._new({k: FieldElem(E, c % p) for k, c in acc.items() if c % p}, prec)
            mul, add = E.mul, E.add
            for i, a in self.c.items():
                a = a.c
                for j, b in oc:
                    k = i + j
                    if k < prec:
                        acc[k] = add(acc[k], mul(a, b)) if k in acc else mul(a, b)
            return self._new({k: FieldElem(E, c) for k, c in acc.items() if c}, prec)
        out = {}
        for i, a in self.c.items():
            for j, b in o.c.items():
                k = i + j
                if k < prec:
                    ab = a * b
                    out[k] = out[k] + ab if k in out else ab
        return self._new(out, prec)

    __rmul__ = __mul__

    def inverse(self, prec=None):
        if not self.c:
            raise InsufficientPrecision("inverse of a series that is zero to precision")
        v = min(self.c)
        if self.prec == INF:
            if len(self.c) == 1:
                return self._new({-v: _inv(self.c[v])}, INF)
            if prec is None:
                raise InsufficientPrecision("inverse of an exact non-monomial series needs a precision")
            rel = prec + v
        else:
            rel = self.prec - v
            if prec is not None:
                rel = min(rel, prec + v)
        if rel <= 0:
            raise InsufficientPrecision("no trusted term in inverse")
        u = [self.c.get(v + i, None) for i in range(rel)]
        zero = self.E.zero()
        u = [a if a is not None else zero for a in u]
        u0inv = _inv(u[0])
        w = [u0inv]
        for k in range(1, rel):
            s = zero
            for i in range(1, k + 1):
                if not u[i].is_zero() and not w[k - i].is_zero():
                    s = s + u[i] * w[k - i]
            w.append(-(u0inv * s))
        return self._new({k - v: a for k, a in enumerate(w)}, rel - v)

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if o.prec == INF and len(o.c) > 1 and self.prec != INF:
            return self * o.inverse(prec=self.prec - o.valuation() - self.val_bound())
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        p = self.E.char
        if e == 0:
            return LaurentSeries.const(self.E, self.E.one(), self.var)
        if e % p == 0:
            return self.frobenius() ** (e // p)
        r = None
        b = self
        while e:
            if e & 1:
                r = b if r is None else r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def frobenius(self):
        p = self.E.char
        return self._new({k * p: a ** p for k, a in self.c.items()}, self.prec * p)

    def pth_root(self):
        p = self.E.char
        if any(k % p for k in self.c):
            raise NotAPthPower(str(self))
        prec = self.prec if self.prec == INF else -(-self.prec // p)
        return self._new({k // p: coeff_pth_root(a) for k, a in self.c.items()}, prec)

    def derivative(self):
        """d/dvar, termwise."""
        return self._new({k - 1: a * k for k, a in self.c.items() if k % self.E.char}, self.prec - 1)

    def coeff_derivative(self):
        return self._new({k: coeff_derivative(a) for k, a in self.c.items()}, self.prec)

    # -- comparison
    def __eq__(self, o):
        o2 = self._coerce(o)
        if o2 is None:
            return NotImplemented
        return self.prec == o2.prec and self.c == o2.c

    def __hash__(self):
        return hash((tuple(sorted(self.c.items())), self.prec))

    def agrees_with(self, o):
        """Equality on the common precision."""
        N = min(self.prec, o.prec)
        return self.truncate(N).c == o.truncate(N).c

    # -- rendering
    def __repr__(self):
        return f"LaurentSeries({self})"

    def __str__(self):
        t = self.var
        if not self.c:
            return "0" if self.prec == INF else f"O({t}^{self.prec})"
        v = min(self.c)
        if self.prec == INF and len(self.c) == 1:
            a = self.c[v]
            mono = _mono(t, v)
            if not mono:
                return str(a)
            return mono if a.is_one() else f"{coeff_str(a)}*{mono}"
        parts = []
        for k in sorted(self.c):
            a = self.c[k]
            mono = _mono(t, k - v)
            if not mono:
                parts.append(str(a))
            elif a.is_one():
                parts.append(mono)
            else:
                parts.append(f"{coeff_str(a)}*{mono}")
        if self.prec != INF:
            parts.append(f"O({t}^{self.prec - v})")
        body = " + ".join(parts)
        return body if v == 0 else f"{_mono(t, v)}*({body})"

    def is_one(self):
        return self.prec == INF and len(self.c) == 1 and 0 in self.c and self.c[0].is_one()


def _mono(t, k):
    return "" if k == 0 else (t if k == 1 else f"{t}^{k}")


def _inv(a):
    if isinstance(a, LaurentSeries):
        return a.inverse()
    return a.inverse() if hasattr(a, "inverse") else 1 / a


def _is_elem_of(a, E):
    if isinstance(E, FiniteField):
        return isinstance(a, FieldElem) and a.F == E
    if isinstance(E, RationalFunctionField):
        return isinstance(a, RatFunc)
    if isinstance(E, LaurentField):
        return isinstance(a, LaurentSeries) and a.var == E.var
    return False


# -- differential forms

class DifferentialForm:
    """alpha*dt + beta*du; beta is None when E is perfect."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta=None):
        if beta is not None:
            N = min(alpha.prec, beta.prec)
            alpha, beta = alpha.truncate(N), beta.truncate(N)
        self.alpha = alpha
        self.beta = beta

    @property
    def prec(self):
        return self.alpha.prec

    def __add__(self, o):
        beta = None
        if self.beta is not None or o.beta is not None:
            beta = _or_zero(self.beta, self.alpha) + _or_zero(o.beta, o.alpha)
        return DifferentialForm(self.alpha + o.alpha, beta)

    def __neg__(self):
        return DifferentialForm(-self.alpha, None if self.beta is None else -self.beta)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, f):
        return DifferentialForm(self.alpha * f, None if self.beta is None else self.beta * f)

    def is_zero(self):
        return self.alpha.is_zero() and (self.beta is None or self.beta.is_zero())

    def __str__(self):
        s = f"({self.alpha})*dt"
        if self.beta is not None and not self.beta.is_zero():
            s += f" + ({self.beta})*du"
        return s

    __repr__ = __str__


def _or_zero(b, like):
    return b if b is not None else LaurentSeries.zero(like.E, like.prec, like.var)


@dataclass(frozen=True)
class GradedForm:
    """Class in gr_m of differentials: leading pair (c_dt, c_du) at t^-m."""

    m: int
    c_dt: object
    c_du: object

    def is_zero(self):
        return self.c_dt.is_zero() and self.c_du.is_zero()

    def __add__(self, o):
        if self.m != o.m:
            raise ValueError("graded forms at different levels")
        return GradedForm(self.m, self.c_dt + o.c_dt, self.c_du + o.c_du)

    def __eq__(self, o):
        return isinstance(o, GradedForm) and self.m == o.m and self.c_dt == o.c_dt and self.c_du == o.c_du

    def __hash__(self):
        return hash((self.m, str(self.c_dt), str(self.c_du)))

    def lead(self):
        return [str(self.c_dt), str(self.c_du)]


def d_form(a):
    """Exterior derivative of a series: alpha = da/dt, beta = termwise u-derivative."""
    alpha = a.derivative()
    if is_perfect(a.E):
        return DifferentialForm(alpha)
    beta = a.coeff_derivative()
    return DifferentialForm(alpha, beta)


def residue(w):
    if w.alpha.prec < 0:
        raise InsufficientPrecision("residue needs the t^-1 coefficient")
    return w.alpha.coeff(-1)


def form_grade(w, m):
    zero = w.alpha.E.zero()
    pair = []
    for s in (w.alpha, w.beta):
        if s is None:
            pair.append(zero)
            continue
        if s.c and min(s.c) < -m:
            raise NotInFiltration(f"pole of order {-min(s.c)} exceeds {m}")
        if s.prec <= -m:
            raise InsufficientPrecision("graded coefficient beyond precision")
        pair.append(s.coeff(-m))
    return GradedForm(m, pair[0], pair[1])


# -- parsing

def series_env(E, var="t"):
    env = {var: LaurentSeries.monomial(E, 1, E.one(), var)}
    if isinstance(E, FiniteField):
        if E.n > 1:
            env["g"] = LaurentSeries.const(E, E.gen, var)
    else:
        env["u"] = LaurentSeries.const(E, E.gen(), var)
        if E.F.n > 1:
            env["g"] = LaurentSeries.const(E, E(E.F.gen), var)
    return env


def parse_series(text, E, var="t", default_prec=None):
    """Parse e.g. 't^-3*(1 + 2*t + O(t^5))'.  An O-term is required unless
    default_prec is given."""
    seen = []

    def big_o(ev, args):
        if len(args) != 1:
            ev.fail(args[0] if args else None, "O takes one argument")
        node = args[0]
        import ast
        if isinstance(node, ast.Name) and node.id == var:
            N = 1
        elif isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow) and isinstance(node.left, ast.Name) and node.left.id == var:
            N = ev.int_value(node.right)
        else:
            ev.fail(node, f"O expects {var}^N")
        seen.append(N)
        return BigO(N)

    ev = Evaluator(text, series_env(E, var), lambda k: LaurentSeries.const(E, E(k), var), {"O": big_o})
    val = ev.run()
    if isinstance(val, BigO):
        val = LaurentSeries.zero(E, val.N, var)
    if not seen:
        if default_prec is None:
            raise ParseError("missing O(t^N) precision marker", text.strip()[-1:] or "<end>", len(text))
        val = val.truncate(default_prec)
    return val


def parse_E(text):
    """Parse a residue-field descriptor: 'F3', 'F9', 'F3(u)', 'F3((u))'."""
    import re
    m = re.fullmatch(r"\s*F(\d+)(\(\(u\)\)|\(u\))?\s*", text)
    if not m:
        raise ParseError("residue field must look like F9 or F3(u)", text, 0)
    q = int(m.group(1))
    p, n = _prime_power(q)
    from .algebra.ff import GF
    F = GF(p, n)
    if m.group(2) == "(u)":
        return RationalFunctionField(F, "u")
    if m.group(2) == "((u))":
        return LaurentField(F, "u")
    return F


def _prime_power(q):
    from .algebra.ff import is_prime, prime_factors
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ParseError("not a prime power", str(q), 0)
    p = fs[0]
    n = 0
    while q > 1:
        q //= p
        n += 1
    assert is_prime(p)
    return p, n


def with_precision(fn, start, cap=PREC_CAP):
    """Call fn(N) for N = start, 2*start, ... until it stops raising
    InsufficientPrecision; the cap bounds the retries."""
    N = max(start, 1)
    while True:
        try:
            return fn(N)
        except InsufficientPrecision:
            if N >= cap:
                raise
            N = min(2 * N, cap)
