"""Seeded property sweeps shared by the selftest command and the acceptance suite.

Every sweep compares two independent routes (or checks an identity) on
instances drawn from random.Random(f"{seed}/{label}") and returns a
SweepResult.  Exhaustive sweeps take ``sample`` to restrict them to a seeded
subset.
"""

import random
from dataclasses import dataclass, field

from .algebra.ff import GF
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc
from .errors import RamcftError
from .localfield import INF, GradedForm, LaurentSeries
from .rsw import refined_artin, surject_preimage
from .witt import (WittVector, artin_conductor, best_form, conductor_oracle, ghost_oracle,
                   in_fil, in_fillog, polar_parts)

MAX_FAILURES = 5


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def fail(self, msg):
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(msg)
        else:
            self.notes["more_failures"] = self.notes.get("more_failures", 0) + 1

    def to_dict(self):
        return {"name": self.name, "checked": self.checked, "passed": self.passed,
                "failures": list(self.failures), "notes": dict(self.notes)}


def rng_for(seed, label):
    return random.Random(f"{seed}/{label}")


def _subset(items, sample, rng):
    if sample is None or sample >= len(items):
        return items
    return [items[i] for i in sorted(rng.sample(range(len(items)), sample))]


def random_laurent(F, rng, lo=-3, hi=2):
    return LaurentSeries(F, {k: F.elem(rng.randrange(F.q)) for k in range(lo, hi + 1)}, INF)


def random_witt(F, s, rng, lo=-3, hi=2):
    return WittVector([random_laurent(F, rng, lo, hi) for _ in range(s)], F.p)


# -- Witt vectors

def witt_ring(seed=0, trials=500, cases=((2, 2), (2, 3), (3, 2), (5, 2))):
    res = SweepResult("witt_ring")
    for p, s in cases:
        F = GF(p)
        rng = rng_for(seed, f"witt/{p}/{s}")
        zero = WittVector([LaurentSeries.zero(F)] * s, p)
        for _ in range(trials):
            u, v, w = (random_witt(F, s, rng, -2, 1) for _ in range(3))
            checks = {
                "oracle_add": u + v == ghost_oracle(u, v, "add"),
                "oracle_mul": u * v == ghost_oracle(u, v, "mul"),
                "assoc_add": (u + v) + w == u + (v + w),
                "comm_add": u + v == v + u,
                "assoc_mul": (u * v) * w == u * (v * w),
                "comm_mul": u * v == v * u,
                "distrib": u * (v + w) == u * v + u * w,
                "zero": u + zero == u and (u - u).is_zero(),
            }
            res.checked += 1
            bad = [k for k, ok in checks.items() if not ok]
            if bad:
                res.fail(f"p={p} s={s} u={u} v={v} w={w}: {','.join(bad)}")
            # F V = p on W_{s-1} -> W_s, against p-fold addition
            short = u.restrict(s - 1)
            ext = WittVector(short.comps + [LaurentSeries.zero(F)], p)
            if short.verschiebung().frobenius() != ext.scalar(p):
                res.fail(f"F(V(u)) != p*u for p={p} s={s} u={short}")
    return res


def filtration_boxes(seed=0, trials=1000, cases=((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2))):
    res = SweepResult("filtration_boxes")
    for p, s in cases:
        F = GF(p)
        rng = rng_for(seed, f"fil/{p}/{s}")
        for _ in range(trials):
            w = random_witt(F, s, rng, -rng.randint(0, 6), 1)
            m = rng.randint(1, 3 * p ** (s - 1) * 6)
            res.checked += 1
            if in_fil(w, m) and not in_fillog(w, m):
                res.fail(f"fil_{m} not in fil^log_{m}: {w}")
            if in_fillog(w, m) and not in_fil(w, m + 1):
                res.fail(f"fil^log_{m} not in fil_{m + 1}: {w}")
            if m % p and in_fil(w, m) != in_fillog(w, m - 1):
                res.fail(f"fil_{m} != fil^log_{m - 1}: {w}")
    return res


def _budget_vectors(F, s, budget):
    """All vectors of polar Laurent polynomials with p^i * pole(a_i) <= budget."""
    p = F.p
    with_const = F.q > p
    per = [polar_parts(F, budget // p ** i, with_constant=with_const and i == 0) for i in range(s)]
    out = [[]]
    for i in range(s):
        out = [rest + [a] for rest in out for a in per[i]]
    # out holds [a_0, ..., a_{s-1}]
    return [WittVector.from_a(a, p) for a in out]


def conductor_vs_oracle(seed=0, qs=(2, 3), ss=(1, 2), budget=4, sample=None):
    res = SweepResult("conductor_vs_oracle")
    for q in qs:
        F = GF(*_pn(q))
        for s in ss:
            rng = rng_for(seed, f"cond/{q}/{s}")
            memo = {}
            for w in _subset(_budget_vectors(F, s, budget), sample, rng):
                res.checked += 1
                a, o = artin_conductor(w), conductor_oracle(w, budget, F, memo)
                if a != o:
                    res.fail(f"q={q} w={w}: artin {a}, oracle {o}")
    return res


def rsw_injective(seed=0, qs=(2, 3), budget=6, levels=(2, 6), sample=None):
    res = SweepResult("rsw_injective")
    for q in qs:
        F = GF(*_pn(q))
        p = F.p
        for s in (1, 2, 3) if p == 2 else (1, 2):
            rng = rng_for(seed, f"inj/{q}/{s}")
            for w in _subset(_budget_vectors(F, s, budget), sample, rng):
                if best_form(w) != w:
                    continue
                m = artin_conductor(w)
                if not levels[0] <= m <= levels[1]:
                    continue
                res.checked += 1
                g = refined_artin(w)
                if g.is_zero() or g.m != m:
                    res.fail(f"q={q} w={w}: zero refined conductor at level {m}")
    return res


def rsw_surjective(qs=(2, 3, 5), levels=range(2, 7)):
    res = SweepResult("rsw_surjective")
    for q in qs:
        F = GF(*_pn(q))
        for m in levels:
            for c in range(1, F.q):
                g = GradedForm(m, F.elem(c), F.zero())
                res.checked += 1
                try:
                    w = surject_preimage(g, F)
                except RamcftError as e:
                    res.fail(f"q={q} m={m} c={c}: {e}")
                    continue
                if artin_conductor(w) != m or refined_artin(w) != g:
                    res.fail(f"q={q} m={m} c={c}: round trip through {w} failed")
    return res


def _pn(q):
    for p in (2, 3, 5, 7, 11, 13, 17):
        n, r = 0, q
        while r % p == 0:
            r //= p
            n += 1
        if r == 1 and n:
            return p, n
    raise ValueError(f"unsupported field size {q}")


# -- ray classes and reciprocity

def rayclass_compare(seed=0, qs=(2, 3, 4), max_deg=4, sample=None):
    from .rayclass import closed_form_order, ray_class_group
    from .rayclass.oracle import ray_class_oracle
    from .rayclass.places import moduli
    res = SweepResult("rayclass_compare")
    for q in qs:
        F = GF(*_pn(q))
        rng = rng_for(seed, f"rayclass/{q}")
        for D in _subset(moduli(F, max_deg), sample, rng):
            res.checked += 1
            G = ray_class_group(D, F)
            H = ray_class_oracle(D, F)
            n = closed_form_order(D, q)
            if G.invariants != H.invariants or G.order != n or H.order != n or not H.converged:
                res.fail(f"q={q} D={D}: units {G.invariants}, oracle {H.invariants} "
                         f"(bound {H.deg_bound}), closed form {n}")
    return res


def reciprocity(seed=0, qs=(2, 3), max_cond_deg=5, trials=100, sample=None, negative=True):
    from .rayclass import (congruence_samples, eval_on_cycle, factorization_check,
                           find_violation, global_conductor)
    from .rayclass.characters import characters_up_to
    from .rayclass.places import Divisor, Modulus, divisor_of, in_congruence_exact
    res = SweepResult("reciprocity")
    skipped = 0
    for q in qs:
        F = GF(*_pn(q))
        rng = rng_for(seed, f"reciprocity/{q}")
        pool = {}
        for chi in _subset(characters_up_to(F, max_cond_deg), sample, rng):
            D = global_conductor(chi)
            if D.is_zero():
                skipped += 1
                continue
            D = Modulus.of(D)
            if D not in pool:
                pool[D] = congruence_samples(D, F, trials, rng_for(seed, f"reciprocity/{q}/{D}"))
            res.checked += 1
            rep = factorization_check(chi, D, trials, samples=pool[D])
            if not rep:
                res.fail(f"q={q} chi={chi} D={D}: value {rep.value} on g={rep.counterexample}")
            if not negative:
                continue
            v = D.support()[0]
            D2 = Modulus.of(D - Divisor.point(v))
            g = find_violation(chi, D2, 4)
            ok = g is not None and max(g.num.deg(), g.den.deg()) <= 4 and \
                in_congruence_exact(g, D2) and eval_on_cycle(chi, divisor_of(g)) != 0
            if not ok:
                res.fail(f"q={q} chi={chi}: no violation found below D={D}")
    res.notes["unramified_skipped"] = skipped
    return res


def random_ratfunc(F, rng, max_deg=4):
    def poly(monic=False):
        d = rng.randint(0, max_deg)
        cs = [rng.randrange(F.q) for _ in range(d)] + [1 if monic else rng.randrange(1, F.q)]
        return Poly(F, cs)
    return RatFunc(poly(), poly(monic=True))


def schmid(seed=0, trials=200, qs=(2, 3, 5), max_deg=4):
    from .rayclass import schmid_reciprocity_check
    res = SweepResult("schmid")
    for q in qs:
        F = GF(*_pn(q))
        rng = rng_for(seed, f"schmid/{q}")
        for _ in range(trials):
            a, b = random_ratfunc(F, rng, max_deg), random_ratfunc(F, rng, max_deg)
            res.checked += 1
            if not schmid_reciprocity_check(a, b):
                res.fail(f"q={q} a={a} b={b}")
    return res


# -- surfaces

def gersten(seed=0, trials=100, qs=(2, 3), max_deg=3):
    from .k2surface import gersten_check
    from .k2surface.curves import field
    from .k2surface.sampling import gersten_pair
    res = SweepResult("gersten")
    resampled = 0
    for q in qs:
        F = field(*_pn(q))
        rng = rng_for(seed, f"gersten/{q}")
        for _ in range(trials):
            a, b, k = gersten_pair(F, rng, max_deg)
            resampled += k
            res.checked += 1
            if not gersten_check(a, b):
                res.fail(f"q={q} a={a} b={b}")
            if not gersten_check(a, b, strict=False):
                res.fail(f"q={q} a={a} b={b} (tame cycle)")
    res.notes["resampled"] = resampled
    return res


def claim_tables(seed=0, trials=12, ps=(3, 5)):
    from .k2surface.curves import field
    from .k2surface.sampling import claim1_instance, claim2_instance
    res = SweepResult("claim_tables")
    for p in ps:
        F = field(p, 1)
        for name, make in (("claim1", claim1_instance), ("claim2", claim2_instance)):
            rng = rng_for(seed, f"{name}/{p}")
            for _ in range(trials):
                args, rep = make(F, rng)
                res.checked += 1
                if not rep.passed:
                    bad = [r.label for r in rep.rows if not r.match]
                    res.fail(f"{name} p={p} args={[str(a) for a in args]}: rows {bad}")
    return res


def mu_checks(seed=0, trials=20, ps=(3, 5)):
    from .k2surface import mu_transformation_check, nu_shape_check
    from .k2surface.curves import field
    from .k2surface.sampling import mu_instance
    res = SweepResult("mu_checks")
    for p in ps:
        F = field(p, 1)
        rng = rng_for(seed, f"mu/{p}")
        for _ in range(trials):
            alpha, beta, pi, f, u, v = mu_instance(F, rng)
            res.checked += 1
            t = mu_transformation_check(alpha, beta, pi, f, u, v)
            n = nu_shape_check(alpha, beta, pi, f)
            if not t["passed"] or not n["passed"]:
                res.fail(f"p={p} alpha={alpha} beta={beta} pi={pi} f={f} u={u} v={v}")
    return res
