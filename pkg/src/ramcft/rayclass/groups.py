"""C(P^1, D)^0 as a quotient of local unit groups, with explicit generators."""

from dataclasses import dataclass, field
from itertools import product

from ..algebra.poly import Poly, gcd, invmod, irreducibles
from ..algebra.ratfunc import RatFunc
from ..errors import BudgetExceeded
from ..snf import inverse_unimodular, smith_normal_form
from .places import Divisor, Place, divisor_of, function_of_cycle

MAX_UNITS = 200000


@dataclass
class FinAbGroup:
    """Invariant factors d_1 | d_2 | ... (each >= 2) and named generators.

    Each generator carries a zero-cycle on U representing it, the function
    whose divisor is that cycle (when known), and its order.
    """
    invariants: list
    generators: list = field(default_factory=list)
    deg_bound: int = None
    converged: bool = True

    @property
    def order(self):
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def is_trivial(self):
        return not self.invariants


def closed_form_order(D, q):
    num = 1
    for v, n in D.items():
        d = v.degree
        num *= q ** (d * n) - q ** (d * (n - 1))
    return num // (q - 1)


class UnitModel:
    """prod_{v in |D|} (O_v / m_v^{n_v})^x with componentwise residues.

    A finite component is a residue modulo pi^n in F_q[x]; the component at
    infinity is a power series in t = 1/x modulo t^n.  Elements are tuples
    of coefficient-code tuples.
    """

    def __init__(self, D, F):
        self.D = D
        self.F = F
        self.comps = []
        for v, n in D.items():
            if v.poly is None:
                self.comps.append((v, n, None, n))
            else:
                self.comps.append((v, n, v.poly ** n, v.degree * n))
        self.size = 1
        for v, n, _, _ in self.comps:
            d = v.degree
            self.size *= F.q ** (d * n) - F.q ** (d * (n - 1))

    def _pad(self, cs, L):
        return tuple(cs[:L]) + (0,) * (L - len(cs[:L]))

    def one(self):
        return tuple(self._pad((1,), L) for _, _, _, L in self.comps)

    def _mul_comp(self, k, a, b):
        F = self.F
        v, n, mod, L = self.comps[k]
        if mod is not None:
            return self._pad((Poly(F, a) * Poly(F, b) % mod).c, L)
        out = [0] * L
        for i, x in enumerate(a):
            if x:
                for j in range(L - i):
                    if b[j]:
                        out[i + j] = F.add(out[i + j], F.mul(x, b[j]))
        return tuple(out)

    def mul(self, a, b):
        return tuple(self._mul_comp(k, x, y) for k, (x, y) in enumerate(zip(a, b)))

    def scale(self, a, c):
        F = self.F
        return tuple(tuple(F.mul(c, x) for x in comp) for comp in a)

    def canon(self, a):
        return min(self.scale(a, c) for c in range(1, self.F.q))

    def units(self):
        """All elements of the unit group, as a list."""
        if self.size > MAX_UNITS:
            raise BudgetExceeded(f"unit group of order {self.size} exceeds {MAX_UNITS}")
        F = self.F
        per = []
        for v, n, mod, L in self.comps:
            opts = []
            for cs in product(range(F.q), repeat=L):
                if mod is None:
                    ok = cs[0] != 0
                else:
                    ok = bool(Poly(F, cs) % v.poly)
                if ok:
                    opts.append(cs)
            per.append(opts)
        return [tuple(t) for t in product(*per)]

    def residue(self, g):
        """Image of a function that is a unit at every place of |D|."""
        F = self.F
        out = []
        for v, n, mod, L in self.comps:
            if mod is not None:
                r = g.num * invmod(g.den % mod, mod) % mod
                out.append(self._pad(r.c, L))
            else:
                if g.num.deg() != g.den.deg():
                    raise ValueError("not a unit at infinity")
                a = tuple(reversed(g.num.c))
                b = tuple(reversed(g.den.c))
                out.append(_series_div(F, a, b, L))
        return tuple(out)


def _series_div(F, a, b, L):
    """Coefficients of a/b mod t^L for b(0) != 0."""
    a = list(a[:L]) + [0] * (L - len(a[:L]))
    b = list(b[:L]) + [0] * (L - len(b[:L]))
    inv0 = F.inv(b[0])
    out = []
    for k in range(L):
        s = a[k]
        for i in range(1, k + 1):
            if b[i] and out[k - i]:
                s = F.sub(s, F.mul(b[i], out[k - i]))
        out.append(F.mul(s, inv0))
    return tuple(out)


class RayClassGroup:
    """Structure of C(P^1, D)^0 computed from the local unit groups."""

    def __init__(self, D, F):
        self.D = D
        self.F = F
        self.model = UnitModel(D, F)
        self._build()

    def _build(self):
        m = self.model
        elems = sorted({m.canon(a) for a in m.units()})
        self.n_elems = len(elems)
        one = m.canon(m.one())
        table = {one: ()}
        gens, rels = [], []
        for cand in elems:
            if cand in table:
                continue
            k = len(gens)
            gens.append(cand)
            power, e = cand, 1
            while power not in table:
                power = m.canon(m.mul(power, cand))
                e += 1
            rel = [-c for c in table[power]] + [0] * (k - len(table[power]))
            rels.append(rel + [e])
            new = {}
            for h, vec in table.items():
                cur = h
                vec = tuple(vec) + (0,) * (k - len(vec))
                for j in range(e):
                    new[cur] = vec + (j,)
                    cur = m.canon(m.mul(cur, cand))
            table = new
            if len(table) == self.n_elems:
                break
        self.table = table
        self.basis = gens
        k = len(gens)
        R = [r + [0] * (k - len(r)) for r in rels]
        if k:
            _, Dm, V = smith_normal_form(R)
            diag = [Dm[i][i] for i in range(k)]
            Vinv = inverse_unimodular(V)
        else:
            diag, V, Vinv = [], [], []
        self.V = V
        self.diag = diag
        self.keep = [j for j, d in enumerate(diag) if d > 1]
        self.invariants = [diag[j] for j in self.keep]
        self.gen_elems = []
        for j in self.keep:
            el = one
            for i, c in enumerate(Vinv[j]):
                el = m.canon(m.mul(el, self._power(gens[i], c % self.n_elems)))
            self.gen_elems.append(el)

    def _power(self, a, e):
        m = self.model
        r = m.canon(m.one())
        while e:
            if e & 1:
                r = m.canon(m.mul(r, a))
            a = m.canon(m.mul(a, a))
            e >>= 1
        return r

    @property
    def order(self):
        return self.n_elems

    def dlog(self, elem):
        """Coordinates of a unit-group element in the invariant-factor basis."""
        vec = self.table[self.model.canon(elem)]
        vec = list(vec) + [0] * (len(self.basis) - len(vec))
        out = []
        for j in self.keep:
            s = sum(c * self.V[i][j] for i, c in enumerate(vec))
            out.append(s % self.diag[j])
        return tuple(out)

    def class_of_function(self, g):
        return self.dlog(self.model.residue(g))

    def class_of_cycle(self, z):
        """Class of a degree-zero cycle supported on U."""
        if z.degree() != 0:
            raise ValueError("cycle must have degree zero")
        for v in z.support():
            if self.D.mult(v):
                raise ValueError(f"cycle meets |D| at {v}")
        return self.class_of_function(function_of_cycle(z, self.F))

    def lift(self, elem):
        """A function g, unit along |D|, whose residue is elem up to scalars."""
        F = self.F
        m = self.model
        fin = [(c, comp) for c, comp in zip(m.comps, elem) if c[2] is not None]
        inf = [(c, comp) for c, comp in zip(m.comps, elem) if c[2] is None]
        M = Poly(F, (1,))
        for (v, n, mod, L), _ in fin:
            M = M * mod
        if not inf:
            P = _crt([(Poly(F, comp), mod) for (v, n, mod, L), comp in fin], F)
            return RatFunc(P if P else Poly(F, (1,)))
        (_, ninf, _, _), a_inf = inf[0]
        d = _auxiliary_place(self.D, F)
        k = 1
        while k * d.deg() < M.deg() + ninf - 1:
            k += 1
        E = k * d.deg()
        dk = d ** k
        top = _series_mul(F, a_inf, tuple(reversed(dk.c)), ninf)
        T = Poly(F, [0] * (E - ninf + 1) + list(reversed(top)))
        if fin:
            R = _crt([(Poly(F, comp) * dk - T, mod) for (v, n, mod, L), comp in fin], F)
        else:
            R = Poly(F, ())
        return RatFunc(T + R, dk)

    def generators(self):
        out = []
        for j, el in enumerate(self.gen_elems):
            g = self.lift(el)
            z = divisor_of(g)
            z = Divisor({v: k for v, k in z.m.items()})
            out.append({"name": f"e{j + 1}", "order": self.invariants[j],
                        "cycle": z, "function": g})
        return out

    def group(self):
        return FinAbGroup(list(self.invariants), self.generators())


def _series_mul(F, a, b, L):
    out = [0] * L
    for i, x in enumerate(a[:L]):
        if x:
            for j, y in enumerate(b[:L - i]):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _crt(pairs, F):
    """Polynomial P with P = r_i mod m_i, deg P < sum deg m_i."""
    P = Poly(F, ())
    M = Poly(F, (1,))
    for r, m in pairs:
        # P + M*h = r mod m
        h = (r - P) * invmod(M % m, m) % m
        P = P + M * h
        M = M * m
    return P % M


def _auxiliary_place(D, F):
    """Least monic irreducible not in |D| (used to make functions units at infinity)."""
    d = 1
    while True:
        for pi in irreducibles(F, d):
            if not D.mult(Place(pi, check=False)):
                return pi
        d += 1


def ray_class_group(D, F):
    return RayClassGroup(D, F).group()


def reduction_map(big, small):
    """Check the surjection C(X,D')^0 -> C(X,D)^0 for D <= D' on generators.

    Each generator cycle of the larger group (supported on U') is classed in
    the smaller group in two ways: through its function's residues and
    through the cycle itself.  Returns (orders divide, images agree, images
    generate).
    """
    divides = big.order % small.order == 0
    images = []
    agree = True
    for gen in big.generators():
        z = gen["cycle"]
        via_cycle = small.class_of_cycle(z)
        via_function = small.class_of_function(gen["function"])
        agree = agree and via_cycle == via_function
        images.append(via_cycle)
    span = {tuple(0 for _ in small.invariants)}
    frontier = list(span)
    while frontier:
        nxt = []
        for a in frontier:
            for b in images:
                c = tuple((x + y) % d for x, y, d in zip(a, b, small.invariants))
                if c not in span:
                    span.add(c)
                    nxt.append(c)
        frontier = nxt
    return divides, agree, len(span) == small.order
