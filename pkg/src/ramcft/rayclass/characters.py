"""Artin-Schreier-Witt characters of F_q(x): conductors, Frobenius values,
Schmid symbols and the factorization check through C(P^1, D)."""

import random
from dataclasses import dataclass
from itertools import product

from ..algebra.expr import split_top
from ..algebra.poly import Poly, gcd, irreducibles
from ..algebra.ratfunc import RatFunc
from ..errors import InsufficientPrecision, ParseError, RamifiedPlace, ZeroFunction
from ..localfield import with_precision
from ..witt import WittVector, artin_conductor, best_form, is_integral
from .oracle import monic_factored
from .places import Divisor, Modulus, Place, divisor_of, expand, parse_ratfunc, residue_field

MAX_S = 2


@dataclass(frozen=True)
class ASWCharacter:
    """chi = delta_s(f) for f in W_s(F_q(x)); comps in display order."""
    comps: tuple

    @property
    def s(self):
        return len(self.comps)

    @property
    def F(self):
        return self.comps[0].F

    @property
    def p(self):
        return self.F.p

    def __post_init__(self):
        if not 1 <= len(self.comps) <= MAX_S:
            raise ValueError(f"Witt length must be 1..{MAX_S}")

    def __str__(self):
        if self.s == 1:
            return str(self.comps[0])
        return "[" + "; ".join(str(c) for c in self.comps) + "]"

    def is_trivial_form(self):
        return all(c.is_zero() for c in self.comps)


def parse_character(text, F, s=None):
    t = text.strip()
    if t.startswith("[") and t.endswith("]"):
        parts = split_top(t[1:-1], ";")
        comps = []
        off = 1
        for part in parts:
            try:
                comps.append(parse_ratfunc(part, F))
            except ParseError as e:
                raise ParseError(e.msg, e.token, (e.pos or 0) + off) from None
            off += len(part) + 1
    else:
        comps = [parse_ratfunc(t, F)]
    if s is not None and len(comps) != s:
        if len(comps) == 1 and s > 1:
            zero = RatFunc(Poly(F, ()))
            comps = [zero] * (s - 1) + comps
        else:
            raise ParseError(f"expected {s} Witt components", t, 0)
    if len(comps) > MAX_S:
        raise ParseError(f"Witt length above {MAX_S}", t, 0)
    return ASWCharacter(tuple(comps))


# -- conductors

def pole_places(chi):
    out = set()
    for c in chi.comps:
        if c.den.deg() > 0:
            for v, k in divisor_of(RatFunc(c.den)).items():
                if v.poly is not None:
                    out.add(v)
        if c.num.deg() > c.den.deg():
            out.add(Place.infinity())
    return sorted(out)


def local_vector(chi, v, N):
    return WittVector([expand(c, v, N) for c in chi.comps], chi.p)


def local_conductor(chi, v):
    pole = max(-min(v.ord(c), 0) if not c.is_zero() else 0 for c in chi.comps)
    start = 2 * pole * chi.p ** chi.s + 8
    return with_precision(lambda N: artin_conductor(local_vector(chi, v, N)), start)


def global_conductor(chi):
    return Divisor({v: local_conductor(chi, v) for v in pole_places(chi)})


# -- Frobenius

def witt_to_int(w, p):
    """W_s(F_p) -> Z/p^s, sum of p^i times Teichmuller lifts of the standard components."""
    s = w.s
    mod = p ** s
    total = 0
    for i, c in enumerate(w.comps):
        x = int(c.c) if hasattr(c, "c") else int(c)
        total += p ** i * pow(x, p ** (s - 1), mod)
    return total % mod


def _value_at(c, v):
    """Value of a RatFunc regular at v, in k(v)."""
    L, emb, alpha = residue_field(v, c.F)
    if v.poly is None:
        if c.num.deg() < c.den.deg() or c.is_zero():
            return L.zero()
        return L.elem(emb[c.num.lc()]) / L.elem(emb[c.den.lc()])
    return L.elem(c.num.eval_in(L, alpha)) / L.elem(c.den.eval_in(L, alpha))


def _local_values(chi, v):
    if all(v.ord(c) >= 0 for c in chi.comps if not c.is_zero()):
        return [_value_at(c, v) for c in chi.comps]

    # not regular: pass to an integral representative of the local class
    def attempt(N):
        b = best_form(local_vector(chi, v, N))
        if not is_integral(b):
            raise RamifiedPlace(f"chi is ramified at {v}")
        return [a.coeff(0) for a in b.comps]
    pole = max(-min(v.ord(c), 0) for c in chi.comps if not c.is_zero())
    return with_precision(attempt, 2 * pole * chi.p ** chi.s + 8)


def frobenius_eval(chi, v):
    """chi(Frob_v) in Z/p^s via the Witt trace of f(v)."""
    vals = _local_values(chi, v)
    w = WittVector(vals, chi.p)
    L = vals[0].F
    tr = w
    cur = w
    for _ in range(L.n - 1):
        cur = cur.frobenius()
        tr = tr + cur
    return witt_to_int(tr, chi.p)


def eval_on_cycle(chi, z, cache=None):
    mod = chi.p ** chi.s
    total = 0
    for v, k in z.items():
        if cache is not None and v in cache:
            val = cache[v]
        else:
            val = frobenius_eval(chi, v)
            if cache is not None:
                cache[v] = val
        total += k * val
    return total % mod


# -- Schmid symbol

def schmid_local(a, b, v):
    """Tr_{k(v)/F_p} Res_v(a db/b)."""
    if b.is_zero():
        raise ZeroFunction("b must be nonzero")
    if a.is_zero():
        return 0
    va, vb = v.ord(a), v.ord(b)

    def attempt(N):
        A = expand(a, v, va + N)
        Bs = expand(b, v, vb + N)
        r = A * (Bs.derivative() / Bs)
        return r.coeff(-1)
    res = with_precision(attempt, max(2, 2 - va))
    return res.trace()


def schmid_places(a, b):
    out = set(divisor_of(a).support()) | set(divisor_of(b).support())
    out.add(Place.infinity())
    return sorted(out)


def schmid_terms(a, b):
    return [(v, schmid_local(a, b, v)) for v in schmid_places(a, b)]


def schmid_reciprocity_check(a, b):
    if a.is_zero() or b.is_zero():
        raise ZeroFunction("symbols need nonzero functions")
    return sum(t for _, t in schmid_terms(a, b)) % a.F.p == 0


# -- congruence sampling and the factorization check

def _rand_poly(F, d, rng, monic=False):
    cs = [rng.randrange(F.q) for _ in range(d)]
    cs.append(1 if monic else rng.randrange(1, F.q))
    return Poly(F, cs)


def sample_congruence(D, F, rng, spread=3):
    """Random g = n/d with n = d + M*h, congruent to 1 modulo D."""
    M = D.finite_part(F)
    ninf = D.n_inf()
    while True:
        hdeg = rng.randint(0, spread)
        h = _rand_poly(F, hdeg, rng)
        if ninf:
            ddeg = M.deg() + hdeg + ninf + rng.randint(0, 1)
        else:
            ddeg = rng.randint(0, spread + 1)
        d = _rand_poly(F, ddeg, rng, monic=True)
        if M.deg() and not gcd(d, M).is_one():
            continue
        n = d + M * h
        if n.is_zero():
            continue
        return RatFunc(n, d)


@dataclass
class FactorizationReport:
    passed: bool
    trials: int
    counterexample: object = None
    value: int = 0

    def __bool__(self):
        return self.passed


def factorization_check(chi, D, trials, rng=None, samples=None):
    """chi must vanish on div(g) for g congruent to 1 modulo D."""
    if rng is None:
        rng = random.Random(0)
    cache = {}
    F = chi.F
    if samples is None:
        samples = [sample_congruence(D, F, rng) for _ in range(trials)]
    for g, z in _with_divisors(samples):
        val = eval_on_cycle(chi, z, cache)
        if val:
            return FactorizationReport(False, trials, g, val)
    return FactorizationReport(True, trials)


def _with_divisors(samples):
    for item in samples:
        if isinstance(item, tuple):
            yield item
        else:
            yield item, divisor_of(item)


def congruence_samples(D, F, trials, rng):
    """Shared (g, div g) samples so many characters can reuse factorizations."""
    out = []
    for _ in range(trials):
        g = sample_congruence(D, F, rng)
        out.append((g, divisor_of(g)))
    return out


def find_violation(chi, D, max_deg=4):
    """Search congruence functions with num/den of degree <= max_deg on which chi is nonzero.

    Monic n coprime to D are bucketed by residue key; any two in one bucket
    give a congruence function n/(c n'), so chi separates a bucket exactly
    when it takes two values on it.
    """
    F = chi.F
    M = D.finite_part(F)
    ninf = D.n_inf()
    cache = {}
    buckets = {}
    for deg in range(max_deg + 1):
        for n, fac in monic_factored(F, deg):
            if any(D.mult(Place(pi, check=False)) for pi, _ in fac):
                continue
            L = M.deg()
            r = tuple((n % M).c) if L else ()
            r = r + (0,) * (L - len(r))
            if ninf:
                top = tuple(n.c[deg - i] if deg - i >= 0 else 0 for i in range(ninf))
                key, c = (deg, r, top), 1
            else:
                key, c = min((tuple(F.mul(c, x) for x in r), c) for c in range(1, F.q))
            z = Divisor({Place(pi, check=False): e for pi, e in fac})
            if not ninf:
                z = z + Divisor.point(Place.infinity(), -deg)
            val = eval_on_cycle(chi, z, cache)
            if key not in buckets:
                buckets[key] = (n, c, val)
                continue
            n0, c0, val0 = buckets[key]
            if val != val0:
                cn = Poly.const(F, F.elem(c))
                c0n = Poly.const(F, F.elem(c0))
                return RatFunc(n * cn, n0 * c0n)
    return None


# -- enumeration of characters

def _reduced_polar_parts(F, v, n):
    """Sum_{k <= n, p does not divide k} A_k / pi^k, deg A_k < deg pi, A_n != 0."""
    p = F.p
    ks = [k for k in range(1, n + 1) if k % p]
    if n % p == 0:
        return []
    d = v.degree
    choices = []
    for k in ks:
        opts = [cs for cs in product(range(F.q), repeat=d)]
        if k == n:
            opts = [cs for cs in opts if any(cs)]
        choices.append(opts)
    out = []
    for pick in product(*choices):
        f = RatFunc(Poly(F, ()))
        for k, cs in zip(ks, pick):
            A = Poly(F, cs)
            if A.is_zero():
                continue
            if v.poly is None:
                f = f + RatFunc(A * Poly.monomial(F, k))
            else:
                f = f + RatFunc(A, v.poly ** k)
        out.append(f)
    return out


def characters_up_to(F, max_cond_deg):
    """All s = 1 characters with conductor degree <= max_cond_deg, as reduced
    polar parts plus a constant representative of F_q / (F - 1)F_q."""
    p = F.p
    places = [Place.infinity()]
    for d in range(1, max_cond_deg // 2 + 1):
        places.extend(Place(pi, check=False) for pi in irreducibles(F, d))
    places.sort()
    consts = _constant_classes(F)
    configs = []

    def rec(i, cur, left):
        configs.append(list(cur))
        for j in range(i, len(places)):
            v = places[j]
            for n in range(1, left // v.degree):
                if n % p == 0:
                    continue
                cost = (n + 1) * v.degree
                if cost > left:
                    break
                cur.append((v, n))
                rec(j + 1, cur, left - cost)
                cur.pop()

    rec(0, [], max_cond_deg)
    out = []
    for conf in configs:
        parts = [_reduced_polar_parts(F, v, n) for v, n in conf]
        for pick in product(*parts):
            base = RatFunc(Poly(F, ()))
            for f in pick:
                base = base + f
            for c in consts:
                out.append(ASWCharacter((base + c,)))
    return out


def _constant_classes(F):
    """Constants representing F_q / (F - 1)F_q: one per value of the absolute trace."""
    reps = {}
    for c in range(F.q):
        t = F.trace(c)
        if t not in reps:
            reps[t] = c
    return [RatFunc(Poly(F, (reps[t],))) for t in sorted(reps)]
