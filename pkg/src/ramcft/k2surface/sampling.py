"""Seeded random instances for the symbol sweeps."""

from ..algebra.poly2 import Poly2, RatFunc2
from ..errors import CommonComponent, DegenerateConfiguration
from .symbols import boundary


def random_poly2(F, rng, max_deg=3, min_deg=1):
    while True:
        d = rng.randint(min_deg, max_deg)
        P = Poly2(F, {(i, j): rng.randrange(F.q) for i in range(d + 1) for j in range(d + 1 - i)})
        if P.deg() >= min_deg:
            return P


def gersten_pair(F, rng, max_deg=3, tries=100):
    """(a, b, resampled) with div(a), div(b) sharing no component off infinity."""
    for k in range(tries):
        a = RatFunc2(random_poly2(F, rng, max_deg))
        if rng.random() < 0.3:
            a = a / RatFunc2(random_poly2(F, rng, max_deg))
        b = RatFunc2(random_poly2(F, rng, max_deg))
        try:
            boundary(a, b, expand=False)
        except CommonComponent:
            continue
        return a, b, k
    raise RuntimeError("no admissible pair found")


def _unit(F, rng, x):
    c = rng.randrange(1, F.q)
    if rng.random() < 0.5:
        return Poly2.const(F, c)
    return Poly2.const(F, c) + x.scale_code(rng.randrange(F.q))


def coordinates(F, rng):
    """(pi, f) = (y + b x^2, x + a y^2): a system of parameters at the origin."""
    x, y = Poly2.x(F), Poly2.y(F)
    pi = y + (x * x).scale_code(rng.randrange(F.q)) if rng.random() < 0.5 else y
    f = x + (y * y).scale_code(rng.randrange(F.q)) if rng.random() < 0.5 else x
    return pi, f


def claim1_instance(F, rng):
    from .tables import claim1_table
    x = Poly2.x(F)
    while True:
        pi, f = coordinates(F, rng)
        u1, u2 = _unit(F, rng, x), _unit(F, rng, x)
        h = Poly2.const(F, rng.randrange(F.q)) + x.scale_code(rng.randrange(F.q))
        alpha = pi * h
        try:
            return (pi, f, u1, u2, alpha), claim1_table(F, pi, f, u1, u2, alpha)
        except DegenerateConfiguration:
            continue


def claim2_instance(F, rng):
    from .tables import claim2_table
    x = Poly2.x(F)
    while True:
        pi, f = coordinates(F, rng)
        u = _unit(F, rng, x)
        alpha = Poly2.const(F, rng.randrange(F.q)) + Poly2.y(F).scale_code(rng.randrange(F.q))
        e = rng.randint(2, 3)
        try:
            return (pi, f, u, alpha, e), claim2_table(F, pi, f, u, alpha, e)
        except DegenerateConfiguration:
            continue


def mu_instance(F, rng, m=2):
    """(alpha, beta, pi, f, u, v) with alpha, beta in (pi^m) and u, v units at the origin."""
    x, y = Poly2.x(F), Poly2.y(F)
    pi, f = coordinates(F, rng)
    pm = pi ** m
    alpha = pm * random_poly2(F, rng, 1, 0)
    beta = pm * random_poly2(F, rng, 1, 0)
    u, v = _unit(F, rng, x), _unit(F, rng, y)
    return alpha, beta, pi, f, u, v
