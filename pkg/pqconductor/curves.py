"""Weierstrass models and the family y^2 + y = x^3 + a x^2 + b x + n.

The family discriminant is the degree 2 polynomial in n

    -432 n^2 + (-64 a^3 + 288 a b - 216) n + (-16 a^3 + 16 a^2 b^2 - 64 b^3 + 72 a b - 27)

with c4 = 16 a^2 - 48 b and polynomial discriminant 2^12 (a^2 - 3b)^3.
"""

import logging
from typing import Optional

from pqconductor.arith import factor, is_perfect_square, is_prime
from pqconductor.errors import InvalidInputError, UnsupportedPrimeError
from pqconductor.schema import (
    FamilyParams,
    Factorization,
    InvariantSet,
    QuadraticPoly,
    ReductionType,
    WeierstrassModel,
)

logger = logging.getLogger(__name__)


def invariants(model: WeierstrassModel) -> InvariantSet:
    a1, a2, a3, a4, a6 = model.as_tuple()
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return InvariantSet(b2=b2, b4=b4, b6=b6, b8=b8, c4=c4, c6=c6, delta=delta)


def family_model(params: FamilyParams) -> WeierstrassModel:
    return WeierstrassModel(a1=0, a2=params.a, a3=1, a4=params.b, a6=params.n)


def family_discriminant_poly(a: int, b: int) -> QuadraticPoly:
    return QuadraticPoly(
        c2=-432,
        c1=-64 * a**3 + 288 * a * b - 216,
        c0=-16 * a**3 + 16 * a * a * b * b - 64 * b**3 + 72 * a * b - 27,
    )


def family_discriminant(params: FamilyParams) -> int:
    return family_discriminant_poly(params.a, params.b)(params.n)


def family_c4(a: int, b: int) -> int:
    return 16 * a * a - 48 * b


def family_quadratic_discriminant(a: int, b: int) -> int:
    return 2**12 * (a * a - 3 * b) ** 3


def family_admissible(a: int, b: int) -> bool:
    if a % 3 == 0 and b % 3 == 0:
        return False
    # 2^12 (a^2 - 3b)^3 is a square iff a^2 - 3b is (0 included)
    return not is_perfect_square(a * a - 3 * b)


def discriminant_mod3(a: int, b: int) -> Optional[int]:
    """Delta(n) mod 3 when 3 | a, where it no longer depends on n."""
    if a % 3:
        return None
    return 2 * b**3 % 3


def is_minimal_by_exponent(delta: int) -> bool:
    if delta == 0:
        return False
    return all(exponent < 12 for _, exponent in factor(delta).factors)


def reduction_type(model: WeierstrassModel, p: int) -> ReductionType:
    """Reduction type at an odd prime, assuming the model is minimal at p."""
    if p == 2:
        raise UnsupportedPrimeError("reduction type at 2 is not supported")
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    inv = invariants(model)
    if inv.delta % p:
        return ReductionType.GOOD
    if inv.c4 % p:
        return ReductionType.MULTIPLICATIVE
    return ReductionType.ADDITIVE


def conductor_factorization(params: FamilyParams) -> Optional[Factorization]:
    """Factorization of Delta when the curve is semistable with squarefree Delta, else None."""
    delta = family_discriminant(params)
    if delta == 0 or delta % 2 == 0:
        return None
    factorization = factor(delta)
    if not factorization.is_squarefree:
        return None
    model = family_model(params)
    # exponents are all 1, so the model is minimal and every bad prime is odd
    for p in factorization.primes:
        if reduction_type(model, p) is not ReductionType.MULTIPLICATIVE:
            logger.debug(f"{params}: additive reduction at {p}")
            return None
    return factorization


def family_conductor(params: FamilyParams) -> Optional[int]:
    factorization = conductor_factorization(params)
    return None if factorization is None else abs(factorization.value)
