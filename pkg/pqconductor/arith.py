"""Exact integer arithmetic shared by every other module."""

import logging
import math
from functools import lru_cache
from typing import Dict, FrozenSet

import numpy as np

from pqconductor.constants import (
    DEFAULT_FACTOR_EFFORT,
    MR_DETERMINISTIC_LIMIT,
    MR_EXTRA_WITNESSES,
    MR_WITNESSES,
    RHO_MAX_ITERATIONS,
    TRIAL_DIVISION_LIMIT,
)
from pqconductor.errors import IncompleteFactorizationError, InvalidInputError
from pqconductor.schema import Factorization

logger = logging.getLogger(__name__)


def primes_up_to(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime_mask = np.ones(limit + 1, dtype=bool)
    is_prime_mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime_mask[p]:
            is_prime_mask[p * p :: p] = False
    return np.flatnonzero(is_prime_mask).astype(np.int64)


@lru_cache(maxsize=1)
def _small_primes() -> tuple:
    return tuple(int(p) for p in primes_up_to(TRIAL_DIVISION_LIMIT))


def _strong_probable_prime(n: int, base: int, d: int, s: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin with a deterministic witness set below 2^64.

    Above 2^64 the answer uses a fixed set of 30 witnesses and is a probable
    prime verdict; no value this package needs gets that large.
    """
    if n < 2:
        return False
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    witnesses = MR_WITNESSES
    if n >= MR_DETERMINISTIC_LIMIT:
        witnesses = MR_WITNESSES + MR_EXTRA_WITNESSES
    return all(_strong_probable_prime(n, base, d, s) for base in witnesses)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    root = math.isqrt(n)
    return root * root == n


def _rho_split(n: int, c: int) -> int:
    """Brent's variant of Pollard rho with x -> x^2 + c, batched gcds.

    Returns a nontrivial factor, or n when this c fails.
    """
    y, r, q, g = 2, 1, 1, 1
    batch = 128
    iterations = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += batch
        r *= 2
        iterations += r
        if iterations > RHO_MAX_ITERATIONS:
            return n
    if g == n:
        # the batch overshot, walk it again one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split_cofactor(n: int, found: Dict[int, int], value: int, effort: int) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        for c in range(1, effort + 1):
            d = _rho_split(m, c)
            if 1 < d < m:
                stack.extend([d, m // d])
                break
        else:
            raise IncompleteFactorizationError(value, dict(found), m)


def factor(n: int, effort: int = DEFAULT_FACTOR_EFFORT) -> Factorization:
    """Complete factorization by trial division to 10^4, then Pollard rho.

    The rho retry schedule is deterministic (c = 1, 2, ..., effort), so the
    answer never depends on randomness. If every attempt fails on a composite
    cofactor an IncompleteFactorizationError is raised.
    """
    if n == 0:
        raise InvalidInputError("cannot factor 0")
    value = n
    n = abs(n)
    found: Dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            exponent = 0
            while n % p == 0:
                n //= p
                exponent += 1
            found[p] = exponent
    if n > 1:
        if n < TRIAL_DIVISION_LIMIT**2:
            found[n] = found.get(n, 0) + 1
        else:
            _split_cofactor(n, found, value, effort)
    return Factorization(value=value, factors=sorted(found.items()))


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return factor(n).is_squarefree


def kronecker(D: int, k: int) -> int:
    """The Kronecker symbol (D/k)."""
    if k == 0:
        return 1 if D in (1, -1) else 0
    result = 1
    if k < 0:
        k = -k
        if D < 0:
            result = -result
    if k % 2 == 0:
        if D % 2 == 0:
            return 0
        two = 1 if D % 8 in (1, 7) else -1
        while k % 2 == 0:
            k //= 2
            result *= two
    # Jacobi symbol for odd positive k
    a = D % k
    n = k
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_vector(D: int, ks) -> np.ndarray:
    """Elementwise kronecker(D, k) for an array of positive integers k."""
    k = np.array(ks, dtype=np.int64)
    if np.any(k <= 0):
        raise InvalidInputError("kronecker_vector needs positive k")
    result = np.ones(k.shape, dtype=np.int64)

    two = 0 if D % 2 == 0 else (1 if D % 8 in (1, 7) else -1)
    even = k % 2 == 0
    while even.any():
        k[even] //= 2
        result[even] *= two
        even = k % 2 == 0

    n = k.copy()
    a = np.mod(D, n)
    active = a != 0
    while active.any():
        halve = active & (a % 2 == 0)
        while halve.any():
            a[halve] //= 2
            flip = halve & ((n % 8 == 3) | (n % 8 == 5))
            result[flip] *= -1
            halve = active & (a % 2 == 0)
        flip = active & (a % 4 == 3) & (n % 4 == 3)
        result[flip] *= -1
        a_old = a[active]
        n_old = n[active]
        a[active] = n_old % a_old
        n[active] = a_old
        active = a != 0
    result[n != 1] = 0
    return result


def cyclic_subgroup(g: int, modulus: int) -> FrozenSet[int]:
    if math.gcd(g, modulus) != 1:
        raise InvalidInputError(f"{g} is not a unit mod {modulus}")
    powers = {1 % modulus}
    x = g % modulus
    while x not in powers:
        powers.add(x)
        x = x * g % modulus
    return frozenset(powers)
