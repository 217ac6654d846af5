"""Conductors pq that no elliptic curve over Q can have.

p = 7 mod 16, q = 15 mod 16 and p, q = 1 mod 15 rule out a rational point of
order 2. If moreover no class number of Q(sqrt(+/-p)), Q(sqrt(+/-q)),
Q(sqrt(+/-pq)) is divisible by 3, every curve of conductor pq would need one,
so there is none.
"""

import itertools
import logging
import math
from typing import List, Sequence

from pqconductor.arith import is_prime, primes_up_to
from pqconductor.constants import P_RESIDUE_MOD_240, Q_RESIDUE_MOD_240
from pqconductor.diophantine import two_torsion_obstructed
from pqconductor.errors import CrossCheckError, InvalidInputError
from pqconductor.quadforms import field_class_data, h_divisible_by_3
from pqconductor.schema import SemiprimeCandidate, Verdict
from pqconductor.utils import run_parallel

logger = logging.getLogger(__name__)


def nonexistence_congruences(p: int, q: int) -> bool:
    """Ordered: p = 7 mod 16, q = 15 mod 16, p = q = 1 mod 15."""
    return p % 16 == 7 and q % 16 == 15 and p % 15 == 1 and q % 15 == 1


def two_torsion_congruences(p: int, q: int) -> bool:
    return two_torsion_obstructed(p, q)


def forces_two_torsion(factors: Sequence[int]) -> bool:
    """Whether every curve of conductor prod(factors) has a rational 2-torsion point.

    Needs 2 among the factors or every factor = +/-1 mod 8, and no class number
    of Q(sqrt(m)) divisible by 3 for m = +/- any nonempty subproduct.
    """
    factors = list(factors)
    if not factors or len(set(factors)) != len(factors):
        raise InvalidInputError(f"need a nonempty list of distinct primes, got {factors}")
    if not all(is_prime(p) for p in factors):
        raise InvalidInputError(f"{factors} contains a non-prime")
    if 2 not in factors and not all(p % 8 in (1, 7) for p in factors):
        return False
    for size in range(1, len(factors) + 1):
        for subset in itertools.combinations(factors, size):
            m = math.prod(subset)
            if h_divisible_by_3(m) or h_divisible_by_3(-m):
                return False
    return True


def congruence_candidates(limit: int) -> List[SemiprimeCandidate]:
    """Every N = pq < limit passing the congruences, ascending, p = 7 mod 16 first."""
    if limit < 1:
        raise InvalidInputError("limit must be at least 1")
    # 151 and 31 are also the least primes in their classes
    primes = primes_up_to((limit - 1) // Q_RESIDUE_MOD_240)
    ps = primes[primes % 240 == P_RESIDUE_MOD_240]
    qs = primes[(primes % 240 == Q_RESIDUE_MOD_240) & (primes <= (limit - 1) // P_RESIDUE_MOD_240)]

    candidates = []
    for p in ps.tolist():
        for q in qs[qs * p < limit].tolist():
            candidates.append(SemiprimeCandidate(N=p * q, p=p, q=q))
    candidates.sort(key=lambda candidate: candidate.N)
    logger.info(f"{len(candidates)} congruence candidates below {limit}")
    return candidates


def evaluate_candidate(candidate: SemiprimeCandidate) -> Verdict:
    p, q = candidate.p, candidate.q
    if not nonexistence_congruences(p, q):
        return Verdict(candidate=candidate, congruence_pass=False, nonexistent=False)
    class_data = []
    # small discriminants first
    for m in (-p, p, -q, q, p * q, -p * q):
        data = field_class_data(m)
        class_data.append(data)
        if data.div3:
            logger.debug(f"N={candidate.N}: h(Q(sqrt({m}))) = {data.h_value}")
            return Verdict(
                candidate=candidate, congruence_pass=True, class_data=class_data, nonexistent=False
            )
    return Verdict(
        candidate=candidate, congruence_pass=True, class_data=class_data, nonexistent=True
    )


def nonexistence_search(limit: int, workers: int = 1) -> List[Verdict]:
    """Verdicts for every congruence candidate below limit, ascending by N."""
    candidates = congruence_candidates(limit)
    verdicts = run_parallel(
        evaluate_candidate, candidates, workers=workers, desc="class numbers", chunksize=8
    )
    verdicts.sort(key=lambda verdict: verdict.candidate.N)
    for verdict in verdicts:
        candidate = verdict.candidate
        if verdict.nonexistent and not two_torsion_obstructed(candidate.p, candidate.q):
            raise CrossCheckError(f"N={candidate.N} passed without a 2-torsion obstruction")
    logger.info(
        f"{sum(verdict.nonexistent for verdict in verdicts)} of {len(verdicts)} candidates "
        f"below {limit} have no elliptic curve"
    )
    return verdicts
