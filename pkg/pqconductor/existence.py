"""Conductor searches over the family and the prime-density side remarks."""

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from pqconductor.arith import factor, is_prime, kronecker, primes_up_to
from pqconductor.constants import TABLE1_CONDUCTORS
from pqconductor.curves import (
    conductor_factorization,
    family_admissible,
    family_discriminant_poly,
    family_model,
    invariants,
)
from pqconductor.errors import InvalidInputError
from pqconductor.schema import (
    ConductorRow,
    FamilyParams,
    HLResult,
    QuadraticPoly,
    SetzerPrimeHit,
)
from pqconductor.utils import run_parallel, split_into_blocks

logger = logging.getLogger(__name__)

# int64 evaluation of Delta(n) is exact while |a|, |b|, |n| stay below this
_INT64_SAFE_BOUND = 10_000


def _conductor_row(a: int, b: int, n: int, N_max: int) -> Optional[ConductorRow]:
    params = FamilyParams(a=a, b=b, n=n)
    factorization = conductor_factorization(params)
    if factorization is None:
        return None
    N = abs(factorization.value)
    if N > N_max or N == 1 or factorization.big_omega > 2:
        return None
    primes = factorization.primes
    p, q = (primes[0], primes[1]) if len(primes) == 2 else (primes[0], 1)
    return ConductorRow(a=a, b=b, n=n, delta=factorization.value, N=N, p=p, q=q)


def _small_discriminant_ns(poly: QuadraticPoly, n_range: range, N_max: int) -> Iterable[int]:
    if max(abs(n_range.start), abs(n_range.stop)) < _INT64_SAFE_BOUND:
        n = np.arange(n_range.start, n_range.stop, n_range.step, dtype=np.int64)
        values = (poly.c2 * n + poly.c1) * n + poly.c0
        return n[np.abs(values) <= N_max].tolist()
    return [n for n in n_range if abs(poly(n)) <= N_max]


def _search_block(task: Tuple[list, range, range, int]) -> List[ConductorRow]:
    a_values, b_range, n_range, N_max = task
    rows = []
    for a in a_values:
        for b in b_range:
            if not family_admissible(a, b):
                continue
            poly = family_discriminant_poly(a, b)
            if max(abs(a), abs(b)) >= _INT64_SAFE_BOUND:
                candidates = [n for n in n_range if abs(poly(n)) <= N_max]
            else:
                candidates = _small_discriminant_ns(poly, n_range, N_max)
            for n in candidates:
                row = _conductor_row(a, b, n, N_max)
                if row is not None:
                    rows.append(row)
    return rows


def search_conductors(
    a_range: range,
    b_range: range,
    n_range: range,
    N_max: int,
    workers: int = 1,
) -> List[ConductorRow]:
    if N_max < 1:
        raise InvalidInputError("N_max must be at least 1")
    logger.info(
        f"searching a in [{a_range.start}, {a_range.stop}), b in [{b_range.start}, "
        f"{b_range.stop}), n in [{n_range.start}, {n_range.stop}) for N <= {N_max}"
    )
    tasks = [
        (block, b_range, n_range, N_max)
        for block in split_into_blocks(a_range, max(1, workers) * 4)
    ]
    blocks = run_parallel(_search_block, tasks, workers=workers, desc="family search")
    unique = {(row.a, row.b, row.n): row for block in blocks for row in block}
    rows = sorted(unique.values(), key=lambda row: (row.N, row.a, row.b, row.n))
    logger.info(f"found {len(rows)} rows with {len({row.N for row in rows})} distinct conductors")
    return rows


def compare_with_table1(
    rows: Sequence[ConductorRow], expected: Iterable[int] = TABLE1_CONDUCTORS
) -> Tuple[List[int], List[ConductorRow]]:
    """Published conductors not found, and found rows whose N is not published.

    Every extra row is re-derived from the general invariant formulas before it
    is reported.
    """
    expected = set(expected)
    found = {row.N for row in rows}
    missing = sorted(expected - found)
    extras = []
    for row in rows:
        if row.N in expected:
            continue
        delta = invariants(family_model(FamilyParams(a=row.a, b=row.b, n=row.n))).delta
        if delta != row.delta:
            raise InvalidInputError(f"row {row} does not match the general discriminant {delta}")
        extras.append(row)
    for N in missing:
        logger.warning(f"published conductor {N} was not found")
    for row in extras:
        logger.info(
            f"extra conductor {row.N} from (a,b,n)=({row.a},{row.b},{row.n}), delta={row.delta}"
        )
    return missing, extras


def _require_admissible(a: int, b: int) -> None:
    if not family_admissible(a, b):
        raise InvalidInputError(f"(a, b) = ({a}, {b}) is not admissible")


def almost_prime_count(a: int, b: int, T: int) -> Tuple[int, int]:
    """(#n with |Delta(n)| prime, #n with exactly two prime factors), 1 <= n <= T."""
    _require_admissible(a, b)
    if T < 0:
        raise InvalidInputError("T must be nonnegative")
    poly = family_discriminant_poly(a, b)
    count1 = count2 = 0
    for n in range(1, T + 1):
        value = abs(poly(n))
        if value < 2:
            continue
        if is_prime(value):
            count1 += 1
        elif factor(value).big_omega == 2:
            count2 += 1
    return count1, count2


def quadratic_root_count(poly: QuadraticPoly, p: int) -> int:
    """Roots of poly mod p; the value p means the polynomial vanishes identically."""
    c2, c1, c0 = poly.c2 % p, poly.c1 % p, poly.c0 % p
    if c2 == c1 == c0 == 0:
        return p
    if p == 2:
        return sum(1 for n in range(2) if (c2 * n * n + c1 * n + c0) % 2 == 0)
    if c2 == 0:
        if c1:
            return 1
        return 0
    disc = (c1 * c1 - 4 * c2 * c0) % p
    if disc == 0:
        return 1
    return 1 + kronecker(disc, p)


def _local_factor(poly: QuadraticPoly, p: int) -> float:
    omega = quadratic_root_count(poly, p)
    return (1.0 - omega / p) / (1.0 - 1.0 / p)


def hl_partial_products(a: int, b: int, cutoffs: Sequence[int]) -> List[HLResult]:
    """Singular series of Delta(n) truncated at each cutoff, scaled by 1/sqrt(432).

    The 1/sqrt(432) turns the count of n into a count of conductors x, since
    |Delta(n)| is about 432 n^2.
    """
    _require_admissible(a, b)
    cutoffs = sorted(cutoffs)
    if not cutoffs or cutoffs[0] < 3:
        raise InvalidInputError("prime cutoffs must be at least 3")
    poly = family_discriminant_poly(a, b)
    results = []
    log_product = 0.0
    start = 0
    primes = primes_up_to(cutoffs[-1]).tolist()
    for cutoff in cutoffs:
        while start < len(primes) and primes[start] <= cutoff:
            log_product += math.log(_local_factor(poly, primes[start]))
            start += 1
        C = math.exp(log_product) / math.sqrt(432)
        results.append(HLResult(a=a, b=b, prime_cutoff=cutoff, C=C))
    return results


def hl_constant(a: int, b: int, prime_cutoff: int) -> HLResult:
    return hl_partial_products(a, b, [prime_cutoff])[0]


def predicted_prime_conductors(hl: HLResult, x: float) -> float:
    if x <= 2:
        return 0.0
    return hl.C * math.sqrt(x) / math.log(x)


def prime_conductor_count(a: int, b: int, x: int) -> int:
    poly = family_discriminant_poly(a, b)
    count = 0
    n = 1
    while 432 * n * n <= x + abs(poly.c1) * n + abs(poly.c0):
        value = abs(poly(n))
        if value <= x and is_prime(value):
            count += 1
        n += 1
    return count


def setzer_prime_search(limit: int) -> List[SetzerPrimeHit]:
    """Primes of the form u^2 + 64 up to limit."""
    if limit < 0:
        raise InvalidInputError("limit must be nonnegative")
    hits = []
    u = 0
    while u * u + 64 <= limit:
        if is_prime(u * u + 64):
            hits.append(SetzerPrimeHit(u=u, p=u * u + 64))
        u += 1
    return hits
