"""Tame symbols, the boundary of a symbol {a, b} and the Gersten cancellation test."""

from dataclasses import dataclass, field

from ..algebra.expr import evaluate
from ..algebra.poly2 import Poly2, RatFunc2
from ..errors import CommonComponent, DegenerateConfiguration, ParseError, ZeroFunction
from .curves import (CurveFunction, PrimeDivisor, as_ratfunc, branch, divisor_on_curve,
                     expand_on_branch, ord_along, points_over, prime_divisors)


def parse_ratfunc2(text, F):
    """Parse a rational function in x, y (and g, the generator of F when F is not prime)."""
    def wrap(p):
        return RatFunc2(p)

    def const(k):
        return RatFunc2(Poly2.const(F, k))

    env = {"x": wrap(Poly2.x(F)), "y": wrap(Poly2.y(F))}
    if F.n > 1:
        env["g"] = wrap(Poly2.const(F, F.gen))
    val = evaluate(text, env, const)
    if isinstance(val, int):
        val = const(val)
    return val


def parse_poly2(text, F):
    g = parse_ratfunc2(text, F)
    if not g.den.is_one():
        raise ParseError("expected a polynomial", text.strip(), 0)
    return g.num


def tame_symbol(a, b, Z):
    """(-1)^(vw) a^w / b^v restricted to Z, v = ord_Z(a), w = ord_Z(b)."""
    a, b = as_ratfunc(a), as_ratfunc(b)
    if a.is_zero() or b.is_zero():
        raise ZeroFunction("tame symbol of zero")
    v, w = ord_along(Z, a), ord_along(Z, b)
    cand = a ** w / b ** v
    if v * w % 2:
        cand = -cand
    return CurveFunction(Z, cand)


@dataclass
class LocalUnit:
    point: object
    uniformizer: object
    expansion: object

    def to_dict(self):
        return {"point": str(self.point), "uniformizer": self.uniformizer,
                "expansion": None if self.expansion is None else str(self.expansion)}


@dataclass
class IdeleTerm:
    """coefficient * {unit}_Z, with the unit's expansions at the points of Z over C."""

    carrier: PrimeDivisor
    coefficient: int
    unit: CurveFunction
    local: list = field(default_factory=list)

    def to_dict(self):
        return {"carrier": str(self.carrier), "coefficient": self.coefficient,
                "unit": str(self.unit.rep), "local": [u.to_dict() for u in self.local]}


@dataclass
class FormalIdeleElem:
    terms: list
    cycle: dict

    def cycle_is_zero(self):
        return not any(self.cycle.values())

    def to_dict(self):
        return {"terms": [t.to_dict() for t in self.terms],
                "cycle": {str(p): k for p, k in sorted(self.cycle.items())}}


def _add_cycle(acc, cyc, k=1):
    for p, m in cyc.items():
        acc[p] = acc.get(p, 0) + k * m
    return acc


def normalize_c(C):
    C = list(C) if C else []
    if PrimeDivisor.infinity() not in C:
        C.append(PrimeDivisor.infinity())
    return C


def local_units(unit, C, prec):
    out = []
    for pt in points_over(unit.Z, C):
        try:
            br = branch(unit.Z, pt, prec)
            out.append(LocalUnit(pt, br.uniformizer, expand_on_branch(unit, br)))
        except DegenerateConfiguration:
            out.append(LocalUnit(pt, None, None))
    return out


def _supports(a, b, C):
    da, _ = prime_divisors(a)
    db, _ = prime_divisors(b)
    da = {Z: k for Z, k in da.items() if Z not in C}
    db = {Z: k for Z, k in db.items() if Z not in C}
    return da, db


def boundary(a, b, C=None, prec=8, expand=True):
    """The four restriction terms of d{a, b} off C, with their zero-cycle on U."""
    a, b = as_ratfunc(a), as_ratfunc(b)
    C = normalize_c(C)
    da, db = _supports(a, b, C)
    common = [Z for Z in da if Z in db]
    if common:
        raise CommonComponent(f"div(a) and div(b) share {', '.join(map(str, common))}")
    terms = []
    cycle = {}
    for Z in sorted(set(da) | set(db)):
        if Z in db:
            k, unit = db[Z], CurveFunction(Z, a)
        else:
            k, unit = -da[Z], CurveFunction(Z, b)
        loc = local_units(unit, C, prec) if expand else []
        terms.append(IdeleTerm(Z, k, unit, loc))
        _add_cycle(cycle, divisor_on_curve(unit, C), k)
    cycle = {p: k for p, k in cycle.items() if k}
    return FormalIdeleElem(terms, cycle)


def tame_cycle(a, b, C=None):
    """Sum over curves Z not in C of div on Z cap U of the tame symbol at Z."""
    a, b = as_ratfunc(a), as_ratfunc(b)
    C = normalize_c(C)
    da, db = _supports(a, b, C)
    cycle = {}
    for Z in sorted(set(da) | set(db)):
        _add_cycle(cycle, divisor_on_curve(tame_symbol(a, b, Z), C))
    return {p: k for p, k in cycle.items() if k}


def gersten_check(a, b, C=None, strict=True):
    """True when the zero-cycle part of d{a, b} vanishes.

    strict follows the boundary's hypothesis (no shared components, else
    CommonComponent); strict=False uses tame symbols on every curve.
    """
    if strict:
        return boundary(a, b, C, expand=False).cycle_is_zero()
    return not tame_cycle(a, b, C)
