"""Class field theory with modulus on the projective line over F_q."""

from .characters import (ASWCharacter, FactorizationReport, characters_up_to,
                         congruence_samples, eval_on_cycle, factorization_check,
                         find_violation, frobenius_eval, global_conductor,
                         local_conductor, parse_character, sample_congruence,
                         schmid_local, schmid_reciprocity_check, schmid_terms,
                         witt_to_int)
from .groups import (FinAbGroup, RayClassGroup, UnitModel, closed_form_order,
                     ray_class_group, reduction_map)
from .oracle import ray_class_oracle
from .places import (Divisor, Modulus, Place, all_places, divisor_of, expand,
                     in_congruence, in_congruence_exact, moduli, parse_divisor,
                     parse_modulus, parse_poly, parse_ratfunc)

__all__ = [
    "ASWCharacter", "Divisor", "FactorizationReport", "FinAbGroup", "Modulus",
    "Place", "RayClassGroup", "UnitModel", "all_places", "characters_up_to",
    "closed_form_order", "congruence_samples", "divisor_of", "eval_on_cycle",
    "expand", "factorization_check", "find_violation", "frobenius_eval",
    "global_conductor", "in_congruence", "in_congruence_exact",
    "local_conductor", "moduli", "parse_character", "parse_divisor",
    "parse_modulus", "parse_poly", "parse_ratfunc", "ray_class_group",
    "ray_class_oracle", "reduction_map", "sample_congruence", "schmid_local",
    "schmid_reciprocity_check", "schmid_terms", "witt_to_int",
]
