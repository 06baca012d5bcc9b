"""C(P^1, D)^0 from its definition: places of U modulo divisors of congruence functions.

Generators are the places of U of degree <= B.  A congruence function with
numerator and denominator of degree <= B is, up to a constant, a quotient
n/n' of monic polynomials coprime to D whose residues agree (after scaling,
when infinity is not in |D|).  Bucketing the monic polynomials of degree <= B
by that residue key therefore yields a spanning set of the relation lattice:
div(n) - div(rep(key(n))).  The lattice is kept in Hermite form keyed so that
high-degree places pivot first; the torsion of the quotient is the degree-0
part.
"""

from functools import lru_cache

from ..algebra.poly import Poly, irreducibles
from ..errors import BudgetExceeded
from ..snf import inverse_unimodular, smith_normal_form
from .groups import FinAbGroup
from .places import Divisor, Place

MAX_DEG_BOUND = 6


@lru_cache(maxsize=None)
def monic_factored(F, d):
    """All monic polynomials of degree d with their factorizations ((pi, e), ...)."""
    if d == 0:
        return [(Poly(F, (1,)), ())]
    out = []
    for k in range(1, d + 1):
        for pi in irreducibles(F, k):
            for e in range(1, d // k + 1):
                for m, fac in monic_factored(F, d - k * e):
                    # keep factors in increasing order so each product appears once
                    if fac and not (fac[-1][0].sort_key() < pi.sort_key()):
                        continue
                    out.append((m * pi ** e, fac + ((pi, e),)))
    out.sort(key=lambda t: t[0].sort_key())
    return out


class _Lattice:
    """Row lattice in echelon form; columns compare by their sort keys."""

    def __init__(self):
        self.rows = {}

    def insert(self, r):
        while r:
            c = min(r)
            a = r[c]
            b = self.rows.get(c)
            if b is None:
                if a < 0:
                    r = {k: -x for k, x in r.items()}
                self.rows[c] = r
                return
            bc = b[c]
            if a % bc == 0:
                r = _comb(1, r, -(a // bc), b)
                continue
            g, s, t = _xgcd(bc, a)
            self.rows[c] = _comb(s, b, t, r)
            r = _comb(a // g, b, -(bc // g), r)

    def reduce(self):
        cols = sorted(self.rows)
        for c in cols:
            p = self.rows[c]
            pc = p[c]
            for c2 in cols:
                if c2 >= c:
                    break
                h = self.rows[c2]
                if c in h:
                    q = h[c] // pc
                    if q:
                        self.rows[c2] = _comb(1, h, -q, p)

    def quotient(self, columns):
        """(invariant factors, free rank, generator vectors over `columns`)."""
        self.reduce()
        units = {c for c, r in self.rows.items() if r[c] == 1}
        cols = [c for c in columns if c not in units]
        idx = {c: i for i, c in enumerate(cols)}
        M = []
        for c, r in sorted(self.rows.items()):
            if c in units:
                continue
            row = [0] * len(cols)
            for k, x in r.items():
                row[idx[k]] = x
            M.append(row)
        n = len(cols)
        if not M:
            return [], n, []
        _, D, V = smith_normal_form(M)
        diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
        rank = sum(1 for d in diag if d)
        Vinv = inverse_unimodular(V)
        invs, gens = [], []
        for j, d in enumerate(diag):
            if d > 1:
                invs.append(d)
                gens.append({cols[i]: x for i, x in enumerate(Vinv[j]) if x})
        return invs, n - rank, gens


def _comb(s, a, t, b):
    out = {}
    for k, x in a.items():
        out[k] = s * x
    for k, x in b.items():
        out[k] = out.get(k, 0) + t * x
    return {k: x for k, x in out.items() if x}


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class PlacePresentation:
    """Incremental presentation of C(P^1, D) by places of degree <= B."""

    def __init__(self, D, F):
        self.D = D
        self.F = F
        self.M = D.finite_part(F)
        self.n_inf = D.n_inf()
        self.inf_in_U = self.n_inf == 0
        self.lattice = _Lattice()
        self.columns = []
        self.place_of = {}
        self.buckets = {}
        self.col_of = {}
        self.B = 0

    def _col(self, v):
        return (-v.degree, len(self.place_of))

    def _key(self, n):
        """Residue key of a monic polynomial n; (key, scalar) with scalar*n canonical."""
        F = self.F
        L = self.M.deg()
        r = (n % self.M).c if L else ()
        r = tuple(r) + (0,) * (L - len(r))
        if self.inf_in_U:
            best = None
            for c in range(1, F.q):
                cand = tuple(F.mul(c, x) for x in r)
                if best is None or cand < best[0]:
                    best = (cand, c)
            return best
        d = n.deg()
        top = tuple(n.c[d - i] if d - i >= 0 else 0 for i in range(self.n_inf))
        return (d, r, top), 1

    def grow(self):
        """Add places and monic polynomials of the next degree."""
        F = self.F
        self.B += 1
        B = self.B
        new_cols = []
        if B == 1 and self.inf_in_U:
            new_cols.append(Place.infinity())
        for pi in irreducibles(F, B):
            v = Place(pi, check=False)
            if not self.D.mult(v):
                new_cols.append(v)
        cols = []
        for v in new_cols:
            c = (-v.degree, len(self.place_of))
            self.place_of[c] = v
            self.col_of[v] = c
            cols.append(c)
        self.columns = sorted(cols + self.columns)
        inf_col = self.col_of.get(Place.infinity())
        for n, fac in monic_factored(F, B):
            if any(self.D.mult(Place(pi, check=False)) for pi, _ in fac):
                continue
            key, c = self._key(n)
            vec = {}
            for pi, e in fac:
                vec[self.col_of[Place(pi, check=False)]] = e
            if inf_col is not None:
                vec[inf_col] = -n.deg()
            rep = self.buckets.get(key)
            if rep is None:
                self.buckets[key] = (n, c, vec)
                continue
            rel = dict(vec)
            for k, x in rep[2].items():
                rel[k] = rel.get(k, 0) - x
            rel = {k: x for k, x in rel.items() if x}
            if rel:
                self.lattice.insert(rel)

    def structure(self):
        invs, free, gens = self.lattice.quotient(self.columns)
        cycles = []
        for g in gens:
            z = Divisor({self.place_of[c]: x for c, x in g.items()})
            cycles.append(z)
        return invs, free, cycles


def ray_class_oracle(D, F, deg_bound=MAX_DEG_BOUND, adaptive=True):
    """Degree-0 part of the place presentation with generators of degree <= deg_bound.

    With adaptive=True the bound grows from 1 and stops at the first
    B > deg D where the free rank is 1 and the torsion equals that at B - 1;
    the bound used is recorded on the result (converged False if deg_bound
    was reached first).
    """
    if deg_bound > MAX_DEG_BOUND:
        raise BudgetExceeded(f"deg_bound {deg_bound} exceeds {MAX_DEG_BOUND}")
    pres = PlacePresentation(D, F)
    prev = None
    result = None
    while pres.B < deg_bound:
        pres.grow()
        invs, free, cycles = pres.structure()
        result = (invs, free, cycles)
        if adaptive and pres.B > D.degree() and free == 1 and prev == (invs, 1):
            break
        prev = (invs, free)
    invs, free, cycles = result
    converged = free == 1 and (not adaptive or prev == (invs, 1))
    gens = [{"name": f"e{j + 1}", "order": d, "cycle": z, "function": None}
            for j, (d, z) in enumerate(zip(invs, cycles))]
    return FinAbGroup(list(invs), gens, deg_bound=pres.B, converged=converged)
