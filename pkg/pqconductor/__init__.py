from .arith import factor, is_perfect_square, is_prime, kronecker
from .curves import family_conductor, family_discriminant, invariants, reduction_type
from .diophantine import (
    exceptional_solutions,
    possible_B_values,
    residue_obstruction,
    solve_equation,
    two_torsion_obstructed,
)
from .existence import almost_prime_count, hl_constant, search_conductors, setzer_prime_search
from .nonexistence import congruence_candidates, forces_two_torsion, nonexistence_search
from .quadforms import (
    class_number_imaginary,
    fundamental_discriminant,
    h_divisible_by_3,
    narrow_class_number_real,
)

__all__ = [
    "almost_prime_count",
    "class_number_imaginary",
    "congruence_candidates",
    "exceptional_solutions",
    "factor",
    "family_conductor",
    "family_discriminant",
    "forces_two_torsion",
    "fundamental_discriminant",
    "h_divisible_by_3",
    "hl_constant",
    "invariants",
    "is_perfect_square",
    "is_prime",
    "kronecker",
    "narrow_class_number_real",
    "nonexistence_search",
    "possible_B_values",
    "reduction_type",
    "residue_obstruction",
    "search_conductors",
    "setzer_prime_search",
    "solve_equation",
    "two_torsion_obstructed",
]
