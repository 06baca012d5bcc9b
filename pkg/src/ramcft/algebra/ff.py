"""Finite fields F_{p^n} with integer-coded elements.

The element d_0 + d_1 z + ... + d_{n-1} z^{n-1} of F_p[z]/(m) is coded as the
integer d_0 + d_1 p + ... + d_{n-1} p^{n-1}.  The modulus m is primitive, so
z (exposed as ``gen``) generates the multiplicative group.
"""

from functools import lru_cache
from itertools import product

from ..errors import FieldMismatch
from .conway import CONWAY

TABLE_LIMIT = 1 << 17


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """F_{p^n} as F_p[z]/(modulus); modulus given low-to-high and monic."""

    def __init__(self, p, n=1, modulus=None, tables=True):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if modulus is None:
            modulus = default_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self.key = (p, n, modulus)
        self._exp = self._log = self._zech = None
        if tables and n > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()
        self._embeddings = {}

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    @property
    def char(self):
        return self.p

    # -- coordinate helpers
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.n):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds):
        c = 0
        for d in reversed(ds):
            c = c * self.p + d % self.p
        return c

    def _mul_z(self, a):
        p, n, m = self.p, self.n, self.modulus
        ds = [0] + self.digits(a)
        top = ds.pop()
        if top:
            for i in range(n):
                ds[i] = (ds[i] - top * m[i]) % p
        return self.from_digits(ds)

    def _poly_mul(self, a, b):
        p, n, m = self.p, self.n, self.modulus
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * m[i]
        return self.from_digits(prod[:n])

    def _build_tables(self):
        q = self.q
        exp = [0] * (q - 1)
        log = [-1] * q
        c = 1
        for k in range(q - 1):
            if log[c] >= 0:
                return  # modulus not primitive; fall back to polynomial arithmetic
            exp[k] = c
            log[c] = k
            c = self._mul_z(c)
        p = self.p
        zech = [0] * (q - 1)
        for k in range(q - 1):
            c = exp[k]
            d0 = c % p
            c1 = c - d0 + (d0 + 1) % p
            zech[k] = log[c1] if c1 else -1
        self._exp, self._log, self._zech = exp, log, zech

    # -- arithmetic on codes
    def add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log[a], self._log[b]
            z = self._zech[(lb - la) % (self.q - 1)]
            return 0 if z < 0 else self._exp[(la + z) % (self.q - 1)]
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if self.n == 1:
            return (-a) % self.p
        if self.p == 2 or a == 0:
            return a
        if self._log is not None:
            return self._exp[(self._log[a] + (self.q - 1) // 2) % (self.q - 1)]
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.n == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._poly_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.n == 1:
            return pow(a, e, self.p)
        if self._log is not None:
            return self._exp[self._log[a] * e % (self.q - 1)]
        r = 1
        while e:
            if e & 1:
                r = self._poly_mul(r, a)
            a = self._poly_mul(a, a)
            e >>= 1
        return r

    def smul(self, k, a):
        """Integer multiple k*a."""
        k %= self.p
        if k == 0 or a == 0:
            return 0
        if self.n == 1:
            return k * a % self.p
        return self.from_digits([k * x for x in self.digits(a)])

    def frob(self, a):
        return self.pow(a, self.p)

    def pth_root(self, a):
        return self.pow(a, self.q // self.p)

    def trace(self, a):
        """Absolute trace to F_p, returned as an int in [0, p)."""
        s = 0
        for _ in range(self.n):
            s = self.add(s, a)
            a = self.frob(a)
        return s

    def log(self, a):
        if a == 0:
            raise ZeroDivisionError("log of zero")
        if self._log is not None:
            return self._log[a]
        g = self.gen_code
        c, k = 1, 0
        while c != a:
            c = self.mul(c, g)
            k += 1
        return k

    def from_int(self, k):
        return k % self.p

    @property
    def gen_code(self):
        return self._mul_z(1) if self.n > 1 else (-self.modulus[0]) % self.p

    # -- element-level API
    def __call__(self, x):
        if isinstance(x, FieldElem):
            if x.F is self:
                return x
            if x.F.q == x.F.p:
                return FieldElem(self, x.c)
            return FieldElem(self, self.embed_from(x.F)[x.c])
        return FieldElem(self, self.from_int(int(x)))

    def elem(self, code):
        return FieldElem(self, code)

    def zero(self):
        return FieldElem(self, 0)

    def one(self):
        return FieldElem(self, 1)

    @property
    def gen(self):
        return FieldElem(self, self.gen_code)

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    def is_subfield_of(self, other):
        return self.p == other.p and other.n % self.n == 0

    def embed_from(self, K):
        """Code table of a fixed embedding K -> self.

        Conway-compatible pairs use z_K -> z^((Q-1)/(q-1)); otherwise the
        least-coded root of K's modulus.
        """
        if K.key in self._embeddings:
            return self._embeddings[K.key]
        if not K.is_subfield_of(self):
            raise FieldMismatch(f"{K} does not embed in {self}")
        if K.n == 1:
            table = list(range(K.p))
        else:
            k = (self.q - 1) // (K.q - 1)
            beta = self.pow(self.gen_code, k)
            if self._eval_prime_poly(K.modulus, beta) != 0:
                roots = [c for c in range(self.q) if self._eval_prime_poly(K.modulus, c) == 0]
                beta = min(roots)
            powers = [1]
            for _ in range(K.n - 1):
                powers.append(self.mul(powers[-1], beta))
            table = []
            for c in range(K.q):
                acc = 0
                for d, bp in zip(K.digits(c), powers):
                    if d:
                        acc = self.add(acc, self.smul(d, bp))
                table.append(acc)
        self._embeddings[K.key] = table
        return table

    def _eval_prime_poly(self, coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.from_int(c))
        return acc


class FieldElem:
    __slots__ = ("F", "c")

    def __init__(self, F, c):
        self.F = F
        self.c = c

    @property
    def parent(self):
        return self.F

    def _other(self, o):
        if isinstance(o, FieldElem):
            if o.F is not self.F and o.F != self.F:
                raise FieldMismatch(f"{o.F} vs {self.F}")
            return o.c
        if isinstance(o, int):
            return self.F.from_int(o)
        return None

    def __add__(self, o):
        c = self._other(o)
        if c is None:
            return NotImplemented
        return FieldElem(self.F, self.F.add(self.c, c))

    __radd__ = __add__

    def __sub__(self, o):
        c = self._other(o)
        if c is None:
            return NotImplemented
        return FieldElem(self.F, self.F.sub(self.c, c))

    def __rsub__(self, o):
        c = self._other(o)
        if c is None:
            return NotImplemented
        return FieldElem(self.F, self.F.sub(c, self.c))

    def __neg__(self):
        return FieldElem(self.F, self.F.neg(self.c))

    def __mul__(self, o):
        c = self._other(o)
        if c is None:
            return NotImplemented
        return FieldElem(self.F, self.F.mul(self.c, c))

    __rmul__ = __mul__

    def __truediv__(self, o):
        c = self._other(o)
        if c is None:
            return NotImplemented
        return FieldElem(self.F, self.F.div(self.c, c))

    def __rtruediv__(self, o):
        c = self._other(o)
        if c is None:
            return NotImplemented
        return FieldElem(self.F, self.F.div(c, self.c))

    def __pow__(self, e):
        return FieldElem(self.F, self.F.pow(self.c, e))

    def inverse(self):
        return FieldElem(self.F, self.F.inv(self.c))

    def __eq__(self, o):
        if isinstance(o, FieldElem):
            return self.F == o.F and self.c == o.c
        if isinstance(o, int):
            return self.c == self.F.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.F.key, self.c))

    def __lt__(self, o):
        return self.c < o.c

    def __bool__(self):
        return self.c != 0

    def is_zero(self):
        return self.c == 0

    def is_one(self):
        return self.c == 1

    def frobenius(self):
        return FieldElem(self.F, self.F.frob(self.c))

    def pth_root(self):
        return FieldElem(self.F, self.F.pth_root(self.c))

    def trace(self):
        return self.F.trace(self.c)

    def __repr__(self):
        return f"FieldElem({self.F!r}, {self})"

    def __str__(self):
        F = self.F
        if F.n == 1:
            return str(self.c)
        ds = F.digits(self.c)
        terms = []
        for i in range(F.n - 1, -1, -1):
            d = ds[i]
            if not d:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mono:
                terms.append(str(d))
            elif d == 1:
                terms.append(mono)
            else:
                terms.append(f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    @property
    def n_terms(self):
        return sum(1 for d in self.F.digits(self.c) if d)


def is_primitive_modulus(p, modulus):
    n = len(modulus) - 1
    if modulus[0] % p == 0:
        return False
    F = FiniteField(p, n, modulus, tables=False)
    q1 = p ** n - 1
    z = F.gen_code
    if F.pow(z, q1) != 1:
        return False
    return all(F.pow(z, q1 // r) != 1 for r in prime_factors(q1))


def first_primitive(p, n):
    for tail in product(range(p), repeat=n):
        mod = tuple(reversed(tail)) + (1,)
        if is_primitive_modulus(p, mod):
            return mod
    raise ValueError("no primitive polynomial found")


def default_modulus(p, n):
    if (p, n) in CONWAY:
        return CONWAY[(p, n)]
    return first_primitive(p, n)


@lru_cache(maxsize=None)
def GF(p, n=1):
    return FiniteField(p, n)
