"""Rational functions in one variable over a finite field, kept reduced."""

from ..errors import NotAPthPower, ZeroFunction
from .ff import FieldElem
from .poly import Poly, gcd


class RationalFunctionField:
    def __init__(self, F, var="x"):
        self.F = F
        self.var = var
        self.key = ("ratfunc", F.key, var)

    def __eq__(self, o):
        return isinstance(o, RationalFunctionField) and self.key == o.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{self.F!r}({self.var})"

    @property
    def char(self):
        return self.F.p

    def zero(self):
        return RatFunc(Poly(self.F, (), self.var))

    def one(self):
        return RatFunc(Poly(self.F, (1,), self.var))

    def gen(self):
        return RatFunc(Poly.gen(self.F, self.var))

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        return RatFunc(Poly.const(self.F, x, self.var))


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = Poly(num.F, (1,), num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = Poly(num.F, (1,), num.var)
            else:
                g = gcd(num, den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.lc()
                if lc != 1:
                    inv = num.F.elem(num.F.inv(lc))
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def F(self):
        return self.num.F

    @property
    def var(self):
        return self.num.var

    @property
    def parent(self):
        return RationalFunctionField(self.F, self.var)

    def _coerce(self, o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, Poly):
            return RatFunc(o)
        if isinstance(o, (int, FieldElem)):
            return RatFunc(Poly.const(self.F, o, self.var))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

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
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroFunction("inverse of zero")
        return RatFunc(self.den, self.num)

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
        return RatFunc(self.num ** e, self.den ** e, reduce=False)

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_poly(self):
        return self.den.is_one()

    def derivative(self):
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def pth_root(self):
        """r with r^p = self; exists iff the derivative vanishes."""
        if not self.derivative().is_zero():
            raise NotAPthPower(str(self))
        return RatFunc(self.num.pth_root(), self.den.pth_root(), reduce=False)

    def frobenius(self):
        return self ** self.F.p

    def degree(self):
        return self.num.deg() - self.den.deg()

    def __call__(self, a):
        den = self.den(a)
        if den.is_zero() if isinstance(den, FieldElem) else den == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num(a) / den if isinstance(a, FieldElem) else self.F.div(self.num(a), den)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.c) > 1 and sum(1 for a in self.num.c if a) > 1:
            ns = f"({ns})"
        ds = str(self.den)
        if sum(1 for a in self.den.c if a) > 1 or (self.den.deg() >= 1 and not self.den.c[-1] == 1):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    @property
    def n_terms(self):
        if self.den.is_one():
            return sum(1 for a in self.num.c if a)
        return 2
