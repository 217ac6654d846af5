import itertools

import pytest
from pydantic import ValidationError

from pqconductor.arith import primes_up_to
from pqconductor.diophantine import (
    all_equations,
    equation_from_tag,
    exceptional_solutions,
    excluded_conductors,
    fuzz_obstructed_pair,
    possible_B_values,
    residue_obstruction,
    solve_equation,
    sweep_exceptional_solutions,
    to_setzer_system,
    two_torsion_obstructed,
)
from pqconductor.errors import InvalidInputError
from pqconductor.nonexistence import congruence_candidates
from pqconductor.schema import DiophEq, EquationTag, ObstructionKind, SearchBounds, Solution


def test_possible_B_values():
    assert possible_B_values(3, 5, 2) == sorted([1, 16, -16, -15, 48, -48, 80, -80, 240, -240])
    assert possible_B_values(3, 5, 1) == [-16, 1, 16]
    values = possible_B_values(17, 89, 2)
    assert 17 in values and 89 in values


def test_possible_B_values_congruences():
    for B in possible_B_values(151, 271, 6):
        assert B % 16 == 0 or B % 8 == 1


@pytest.mark.parametrize("p, q", [(3, 3), (4, 5), (2, 7), (9, 5)])
def test_possible_B_values_rejects(p, q):
    with pytest.raises(InvalidInputError):
        possible_B_values(p, q, 2)


def test_equation_tags():
    assert len(all_equations()) == 19
    with pytest.raises(ValidationError):
        DiophEq(tag="E8")
    with pytest.raises(ValidationError):
        DiophEq(tag=EquationTag.E1, signs=(1, 1))
    with pytest.raises(ValidationError):
        DiophEq(tag=EquationTag.E4, signs=(1, 2))


def test_equation_from_tag():
    assert equation_from_tag("E4", (1, -1)) == DiophEq(tag=EquationTag.E4, signs=(1, -1))
    assert equation_from_tag("E1").tag is EquationTag.E1
    for tag, signs in (("E8", None), ("E1", (1, 1)), ("E4", (1, 2))):
        with pytest.raises(InvalidInputError):
            equation_from_tag(tag, signs)


def test_describe():
    assert DiophEq(tag=EquationTag.E3).describe() == "A^2 + 64 = p^a q^b"
    eq = DiophEq(tag=EquationTag.E7, signs=(-1, 1))
    assert eq.describe() == "A^2 - 64 p^a q^b = 1"


def test_solve_equation_examples():
    small = SearchBounds(a_max=4, b_max=4)
    assert solve_equation(DiophEq(tag=EquationTag.E2), 3, 5, small) == [Solution(a=2, b=2)]
    assert solve_equation(DiophEq(tag=EquationTag.E3), 5, 29, SearchBounds(A_max=100)) == [
        Solution(A=9, a=1, b=1)
    ]
    tiny = SearchBounds(a_max=3, b_max=3)
    assert solve_equation(DiophEq(tag=EquationTag.E1), 47, 3, tiny) == [Solution(a=1, b=1)]


def test_solve_equation_signed():
    eq = DiophEq(tag=EquationTag.E6, signs=(-1, 1))
    # 22^2 - 4 * 3 * 19 = 256
    assert solve_equation(eq, 3, 19, SearchBounds(a_max=2, b_max=2)) == [
        Solution(A=22, a=1, b=1, signs=(-1, 1))
    ]


def test_solve_equation_rejects():
    with pytest.raises(InvalidInputError):
        solve_equation(DiophEq(tag=EquationTag.E1), 5, 5)


def test_exceptional_solutions():
    solutions = exceptional_solutions()
    assert (1, 9, 7) in solutions
    assert (-7, 3, 5) in solutions
    assert sorted(solutions) == sweep_exceptional_solutions()
    for A, p_power, q_power in solutions:
        assert A * A - 64 == -p_power * q_power
        assert A % 4 == 1


def test_excluded_conductors():
    assert excluded_conductors() == {15, 21, 39, 55}


def test_residue_obstruction_examples():
    assert residue_obstruction(DiophEq(tag=EquationTag.E1), 151, 271).kind is ObstructionKind.MOD3
    gaussian = residue_obstruction(DiophEq(tag=EquationTag.E3), 151, 271)
    assert gaussian.kind is ObstructionKind.GAUSSIAN_PRIME
    e2 = residue_obstruction(DiophEq(tag=EquationTag.E2), 151, 271)
    assert e2.kind is ObstructionKind.MOD16_FACTORIZATION
    for signs in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
        eq = DiophEq(tag=EquationTag.E4, signs=signs)
        assert residue_obstruction(eq, 7, 11) is None
        assert residue_obstruction(eq, 151, 271).kind is ObstructionKind.MOD3_MOD5
    assert residue_obstruction(DiophEq(tag=EquationTag.E1), 5, 13) is None


def test_two_torsion_obstructed():
    assert two_torsion_obstructed(151, 271)
    assert two_torsion_obstructed(31, 151)
    assert not two_torsion_obstructed(3, 5)
    assert not two_torsion_obstructed(151, 7)


def test_every_candidate_is_certified():
    for candidate in congruence_candidates(210000):
        assert two_torsion_obstructed(candidate.p, candidate.q)
        for eq in all_equations():
            for first, second in ((candidate.p, candidate.q), (candidate.q, candidate.p)):
                assert residue_obstruction(eq, first, second) is not None


def test_certificates_are_sound_on_small_pairs():
    # whenever a certificate exists, a bounded search finds nothing
    bounds = SearchBounds(a_max=6, b_max=6, A_max=10**5)
    primes = [p for p in primes_up_to(200).tolist() if p > 2]
    for p, q in itertools.permutations(primes, 2):
        for eq in all_equations():
            if residue_obstruction(eq, p, q) is not None:
                assert solve_equation(eq, p, q, bounds) == [], (eq, p, q)


def test_to_setzer_system_examples():
    e1 = to_setzer_system(DiophEq(tag=EquationTag.E1), Solution(a=1, b=1), 47, 3)
    assert (e1.A, e1.B, e1.alpha, e1.beta, e1.sign) == (190, 1, 1, 1, 1)
    assert e1.congruences_hold

    e2 = to_setzer_system(DiophEq(tag=EquationTag.E2), Solution(a=2, b=2), 3, 5)
    assert (e2.A, e2.B) == (17, 16)
    assert e2.congruences_hold

    e3 = to_setzer_system(DiophEq(tag=EquationTag.E3), Solution(A=9, a=1, b=1), 5, 29)
    assert (e3.A, e3.B, e3.alpha, e3.beta) == (9, -16, 1, 1)
    assert e3.congruences_hold and e3.divisibility_holds

    eq = DiophEq(tag=EquationTag.E6, signs=(-1, 1))
    e6 = to_setzer_system(eq, Solution(A=22, a=1, b=1, signs=(-1, 1)), 3, 19)
    assert (e6.A, e6.B, e6.alpha, e6.beta, e6.sign) == (22, 57, 2, 2, 1)
    assert e6.congruences_hold and e6.divisibility_holds


def test_every_small_solution_maps_to_a_setzer_system():
    bounds = SearchBounds(a_max=4, b_max=4, A_max=10**4)
    primes = [p for p in primes_up_to(60).tolist() if p > 2]
    found = 0
    for p, q in itertools.permutations(primes, 2):
        for eq in all_equations():
            for solution in solve_equation(eq, p, q, bounds):
                system = to_setzer_system(eq, solution, p, q)
                assert system.alpha >= 1 and system.beta >= 1
                found += 1
    assert found > 0


def test_fuzz_obstructed_pair():
    assert fuzz_obstructed_pair(151, 271, SearchBounds(a_max=8, b_max=8)) == []
    hits = fuzz_obstructed_pair(3, 5, SearchBounds(a_max=4, b_max=4))
    assert any(eq.tag is EquationTag.E2 for eq, _, _, _ in hits)


def test_every_candidate_below_ten_million_is_obstructed():
    candidates = congruence_candidates(10**7)
    assert len(candidates) == 697
    for candidate in candidates:
        p, q = candidate.p, candidate.q
        for eq in all_equations():
            assert residue_obstruction(eq, p, q) is not None, (eq.tag, p, q)
            assert residue_obstruction(eq, q, p) is not None, (eq.tag, q, p)
        assert fuzz_obstructed_pair(p, q) == [], (p, q)
