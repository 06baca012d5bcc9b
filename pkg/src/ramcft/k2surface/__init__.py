"""Symbols on the projective plane: tame symbols, boundaries, the Gersten
cancellation test, explicit boundary tables and the mu_{pi,f} emitter."""

from .curves import (ClosedPoint, CurveFunction, CurvePoint, PrimeDivisor, branch,
                     divisor_on_curve, expand_on_branch, intersection_number,
                     intersection_points, ord_along, points_at_infinity, prime_divisors,
                     restrict)
from .symbols import (FormalIdeleElem, IdeleTerm, LocalUnit, boundary, gersten_check,
                      parse_poly2, parse_ratfunc2, tame_cycle, tame_symbol)
from .tables import (TableReport, TableRow, claim1_table, claim2_table, mu_symbol,
                     mu_transformation_check, nu_shape_check)

__all__ = [
    "ClosedPoint", "CurveFunction", "CurvePoint", "PrimeDivisor", "branch",
    "divisor_on_curve", "expand_on_branch", "intersection_number", "intersection_points",
    "ord_along", "points_at_infinity", "prime_divisors", "restrict",
    "FormalIdeleElem", "IdeleTerm", "LocalUnit", "boundary", "gersten_check",
    "parse_poly2", "parse_ratfunc2", "tame_cycle", "tame_symbol",
    "TableReport", "TableRow", "claim1_table", "claim2_table", "mu_symbol",
    "mu_transformation_check", "nu_shape_check",
]
