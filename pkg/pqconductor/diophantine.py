"""Equations a conductor pq curve with a rational 2-torsion point must satisfy.

Such a curve gives (A, B, alpha, beta) with

    B^2 (A^2 - 4B) = +/- 2^8 p^alpha q^beta,  alpha, beta >= 1,

A = 1 mod 4 and B = 0 mod 16, or A = 6 mod 8 and B = 1 mod 8, and neither p
nor q dividing both A and B. Splitting on B leaves the seven shapes in
EQUATION_SHAPES (up to swapping p and q) plus four exceptional solutions.

Solutions report A >= 0 since A only appears squared; to_setzer_system picks
the sign the congruences need.
"""

import logging
import math
from typing import List, Optional, Set, Tuple

from pydantic import ValidationError

from pqconductor.arith import cyclic_subgroup, factor, is_perfect_square, is_prime
from pqconductor.constants import ARITHMETIC_CAP
from pqconductor.errors import CrossCheckError, InvalidInputError
from pqconductor.schema import (
    DiophEq,
    EquationTag,
    Obstruction,
    ObstructionKind,
    SearchBounds,
    SetzerSystem,
    Solution,
)

logger = logging.getLogger(__name__)

ExceptionalSolution = Tuple[int, int, int]

# equations containing the product p^a q^b
_PRODUCT_TAGS = (EquationTag.E3, EquationTag.E6, EquationTag.E7)

_EXCEPTIONAL_SOLUTIONS: List[ExceptionalSolution] = [
    (-7, 3, 5),
    (-3, 5, 11),
    (1, 9, 7),
    (5, 3, 13),
]


def _require_pair(p: int, q: int) -> None:
    for value in (p, q):
        if value % 2 == 0 or not is_prime(value):
            raise InvalidInputError(f"{value} is not an odd prime")
    if p == q:
        raise InvalidInputError(f"p and q must be distinct, got {p} twice")


def possible_B_values(p: int, q: int, e_max: int) -> List[int]:
    """Every B the congruences allow, with exponents alpha, beta <= e_max."""
    _require_pair(p, q)
    if e_max < 1:
        raise InvalidInputError("e_max must be at least 1")
    halves = range(1, e_max // 2 + 1)
    odd_parts = {p**k for k in halves} | {q**k for k in halves}
    odd_parts |= {p**j * q**k for j in halves for k in halves}

    values = {1, 16, -16}
    for part in odd_parts:
        values.update({16 * part, -16 * part})
        # of +part and -part at most one is 1 mod 8
        values.update(v for v in (part, -part) if v % 8 == 1)
    return sorted(values)


def all_equations() -> List[DiophEq]:
    equations = []
    for tag in EquationTag:
        if tag.signed:
            equations.extend(
                DiophEq(tag=tag, signs=signs) for signs in DiophEq(tag=tag).sign_choices()
            )
        else:
            equations.append(DiophEq(tag=tag))
    return equations


def equation_from_tag(tag: str, signs: Optional[Tuple[int, int]] = None) -> DiophEq:
    """DiophEq for a tag such as "E4"; bad tags or signs raise InvalidInputError."""
    try:
        return DiophEq(tag=tag, signs=signs)
    except ValidationError as e:
        raise InvalidInputError(f"invalid equation {tag} with signs {signs}: {e}") from e


def _square_root_within(value: int, A_max: int) -> Optional[int]:
    if value < 0 or not is_perfect_square(value):
        return None
    root = math.isqrt(value)
    return root if root <= A_max else None


def _powers(base: int, count: int) -> Tuple[List[Tuple[int, int]], int]:
    """(exponent, base^exponent) for exponents 1..count below the cap, and the number cut."""
    powers = []
    value = 1
    for exponent in range(1, count + 1):
        value *= base
        if value > ARITHMETIC_CAP:
            return powers, count - exponent + 1
        powers.append((exponent, value))
    return powers, 0


def _solve(eq: DiophEq, p: int, q: int, bounds: SearchBounds) -> Tuple[List[Solution], int]:
    p_powers, p_cut = _powers(p, bounds.a_max)
    q_powers, q_cut = _powers(q, bounds.b_max)
    skipped = p_cut * bounds.b_max + q_cut * len(p_powers)
    tag = eq.tag
    solutions = []

    for signs in eq.sign_choices():
        s1, s2 = signs or (1, 1)
        for a, pa in p_powers:
            for b, qb in q_powers:
                if tag in _PRODUCT_TAGS and pa * qb > ARITHMETIC_CAP:
                    skipped += 1
                    continue

                if tag is EquationTag.E1:
                    if 16 * qb - pa == 1:
                        solutions.append(Solution(a=a, b=b))
                    continue
                if tag is EquationTag.E2:
                    if abs(pa - qb) == 16:
                        solutions.append(Solution(a=a, b=b))
                    continue

                if tag is EquationTag.E3:
                    square = pa * qb - 64
                elif tag is EquationTag.E4:
                    square = s2 * pa - s1 * 64 * qb
                elif tag is EquationTag.E5:
                    if (qb + s1) % 8:
                        continue
                    square = s2 * 256 * pa - s1 * 4 * qb
                elif tag is EquationTag.E6:
                    square = s2 * 256 - s1 * 4 * pa * qb
                else:
                    square = s2 - s1 * 64 * pa * qb
                A = _square_root_within(square, bounds.A_max)
                if A is not None:
                    solutions.append(Solution(A=A, a=a, b=b, signs=signs))
    return solutions, skipped


def solve_equation(
    eq: DiophEq, p: int, q: int, bounds: SearchBounds = SearchBounds()
) -> List[Solution]:
    """All solutions with a <= a_max, b <= b_max and |A| <= A_max.

    Exponent pairs whose powers exceed ARITHMETIC_CAP are skipped and counted
    in a warning.
    """
    _require_pair(p, q)
    solutions, skipped = _solve(eq, p, q, bounds)
    if skipped:
        logger.warning(
            f"{eq.tag.value} for (p, q) = ({p}, {q}): skipped {skipped} exponent pairs above 2^90"
        )
    return solutions


def exceptional_solutions() -> List[ExceptionalSolution]:
    """(A, p^alpha, q^beta) solving A^2 - 64 = -p^alpha q^beta, the B = 16 negative case."""
    return list(_EXCEPTIONAL_SOLUTIONS)


def sweep_exceptional_solutions() -> List[ExceptionalSolution]:
    found = []
    for A in range(-7, 8):
        if A % 4 != 1:
            continue
        factorization = factor(64 - A * A)
        if len(factorization.factors) != 2 or 2 in factorization.primes:
            continue
        (p, alpha), (q, beta) = factorization.factors
        found.append((A, p**alpha, q**beta))
    return sorted(found)


def excluded_conductors() -> Set[int]:
    excluded = set()
    for _, p_power, q_power in exceptional_solutions():
        p, q = factor(p_power).primes[0], factor(q_power).primes[0]
        excluded.add(p * q)
    return excluded


def _in_subgroup(p: int, q: int) -> bool:
    return p % 16 in cyclic_subgroup(q, 16)


def residue_obstruction(eq: DiophEq, p: int, q: int) -> Optional[Obstruction]:
    """A certificate that eq has no solution at all for (p, q), when one applies."""
    _require_pair(p, q)
    tag = eq.tag

    def certificate(kind: ObstructionKind, detail: str) -> Obstruction:
        return Obstruction(kind=kind, tag=tag, p=p, q=q, detail=detail)

    if tag is EquationTag.E1:
        if p % 3 == 1 and q % 3 == 1:
            return certificate(
                ObstructionKind.MOD3,
                "p = q = 1 mod 3, so 16 q^b - p^a = 1 - 1 = 0 mod 3, but the left side is 1",
            )
        return None

    if tag is EquationTag.E2:
        if p % 5 == 1 and q % 5 == 1 and not _in_subgroup(p, q) and not _in_subgroup(q, p):
            return certificate(
                ObstructionKind.MOD16_FACTORIZATION,
                f"{p % 16} is outside <{q % 16}> and {q % 16} is outside <{p % 16}> in (Z/16)^*, "
                "so p^a = q^b mod 16 forces a, b even; the larger power minus 16 then factors "
                "as (r - 4)(r + 4) with coprime factors, forcing r = 5, but p = q = 1 mod 5",
            )
        return None

    if tag is EquationTag.E3:
        if p % 4 == 3 and q % 4 == 3:
            return certificate(
                ObstructionKind.GAUSSIAN_PRIME,
                "p = q = 3 mod 4 stay prime in Z[i]; each divides A + 8i or A - 8i, "
                "hence divides 8, which is impossible",
            )
        return None

    if all(r % 3 == 1 and r % 5 == 1 for r in (p, q)):
        details = []
        for signs in eq.sign_choices():
            s1, s2 = signs
            if s1 > 0 and s2 < 0:
                details.append("(+,-): the left side is positive and the right side negative")
            elif s1 > 0:
                details.append("(+,+): A^2 = 0 mod 3 and A^2 = 2 mod 5, 2 is not a square mod 5")
            elif s2 < 0:
                details.append("(-,-): A^2 = 0 mod 3 and A^2 = 3 mod 5, 3 is not a square mod 5")
            else:
                details.append("(-,+): A^2 = 2 mod 3, 2 is not a square mod 3")
        return certificate(
            ObstructionKind.MOD3_MOD5,
            "p = q = 1 mod 15 reduces the equation to A^2 + s1 = s2 mod 3 and "
            "A^2 - s1 = s2 mod 5; " + "; ".join(details),
        )
    return None


def two_torsion_obstructed(p: int, q: int) -> bool:
    """Whether no curve of conductor pq can carry a rational point of order 2.

    True iff p = q = 31 mod 60 and p mod 16 lies outside the subgroup generated
    by q mod 16. A true answer is checked against residue_obstruction for every
    equation in both orders.
    """
    _require_pair(p, q)
    if not (p % 60 == 31 and q % 60 == 31 and not _in_subgroup(p, q)):
        return False
    for eq in all_equations():
        for first, second in ((p, q), (q, p)):
            if residue_obstruction(eq, first, second) is None:
                raise CrossCheckError(
                    f"no certificate for {eq.describe()} at (p, q) = ({first}, {second})"
                )
    return True


def _odd_part_sign(value: int) -> int:
    # the sign among +/- value that is 1 mod 4
    return 1 if value % 4 == 1 else -1


def to_setzer_system(eq: DiophEq, solution: Solution, p: int, q: int) -> SetzerSystem:
    """The (A, B, alpha, beta) system a solution of eq comes from."""
    a, b = solution.a, solution.b
    pa, qb = p**a, q**b
    s1, s2 = solution.signs or (1, 1)
    tag = eq.tag

    if tag is EquationTag.E1:
        return SetzerSystem(A=4 * pa + 2, B=1, alpha=a, beta=b, sign=1, p=p, q=q)
    if tag is EquationTag.E2:
        smaller = min(pa, qb)
        A = _odd_part_sign(smaller + 8) * (smaller + 8)
        return SetzerSystem(A=A, B=16, alpha=a, beta=b, sign=1, p=p, q=q)
    if solution.A is None:
        raise InvalidInputError(f"{tag.value} solutions carry A")
    A = solution.A

    if tag is EquationTag.E3:
        return SetzerSystem(A=_odd_part_sign(A) * A, B=-16, alpha=a, beta=b, sign=1, p=p, q=q)
    if tag is EquationTag.E4:
        return SetzerSystem(
            A=_odd_part_sign(A) * A, B=-s1 * 16 * qb, alpha=a, beta=2 * b, sign=s2, p=p, q=q
        )
    if tag is EquationTag.E5:
        A = -A if A % 8 == 2 else A
        return SetzerSystem(A=A, B=-s1 * qb, alpha=a, beta=2 * b, sign=s2, p=p, q=q)
    if tag is EquationTag.E6:
        A = -A if A % 8 == 2 else A
        return SetzerSystem(A=A, B=-s1 * pa * qb, alpha=2 * a, beta=2 * b, sign=s2, p=p, q=q)
    return SetzerSystem(
        A=_odd_part_sign(A) * A, B=-s1 * 16 * pa * qb, alpha=2 * a, beta=2 * b, sign=s2, p=p, q=q
    )


def fuzz_obstructed_pair(
    p: int, q: int, bounds: SearchBounds = SearchBounds()
) -> List[Tuple[DiophEq, int, int, Solution]]:
    """Exhaustive bounded search of every equation in both orders.

    Returns (equation, p, q, solution) for every hit; a certified pair yields
    nothing.
    """
    _require_pair(p, q)
    hits = []
    skipped = 0
    for first, second in ((p, q), (q, p)):
        for eq in all_equations():
            solutions, cut = _solve(eq, first, second, bounds)
            skipped += cut
            hits.extend((eq, first, second, solution) for solution in solutions)
    if skipped:
        logger.warning(f"(p, q) = ({p}, {q}): skipped {skipped} exponent pairs above 2^90")
    return hits
