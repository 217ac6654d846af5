import random

import numpy as np
import pytest
import sympy

from pqconductor.arith import (
    cyclic_subgroup,
    factor,
    is_perfect_square,
    is_prime,
    is_squarefree,
    kronecker,
    kronecker_vector,
    primes_up_to,
)
from pqconductor.errors import IncompleteFactorizationError, InvalidInputError


def test_is_prime_small_values():
    assert is_prime(2)
    assert is_prime(151)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(-7)


def test_is_prime_matches_sympy():
    for n in range(2000):
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.slow
def test_is_prime_matches_sieve():
    sieve = set(primes_up_to(10**6).tolist())
    for n in range(10**6 + 1):
        assert is_prime(n) == (n in sieve), n


def test_is_prime_strong_pseudoprimes():
    # 3215031751 fools bases 2, 3, 5 and 7
    assert not is_prime(561)
    assert not is_prime(3215031751)
    assert is_prime(2**61 - 1)
    assert not is_prime((2**61 - 1) * (2**31 - 1))


def test_factor_examples():
    assert factor(40921).as_dict() == {151: 1, 271: 1}
    assert factor(432).as_dict() == {2: 4, 3: 3}
    negative = factor(-19)
    assert negative.sign == -1
    assert negative.as_dict() == {19: 1}
    assert factor(1).factors == []


def test_factor_matches_sympy():
    for n in list(range(2, 3000)) + [2**32 + 1, 10**12 + 39, 3**20 * 7, 600851475143]:
        assert factor(n).as_dict() == sympy.factorint(n), n


def test_factor_needs_rho():
    n = 1000000007 * 998244353
    factorization = factor(n)
    assert factorization.factors == [(998244353, 1), (1000000007, 1)]
    assert factorization.reassemble() == n


def test_factor_without_rho_is_incomplete():
    n = 1000000007 * 998244353
    with pytest.raises(IncompleteFactorizationError) as excinfo:
        factor(n, effort=0)
    assert excinfo.value.cofactor == n
    assert excinfo.value.found == {}


def test_factor_zero():
    with pytest.raises(InvalidInputError):
        factor(0)


def test_is_perfect_square():
    assert is_perfect_square(0)
    assert is_perfect_square(1)
    assert is_perfect_square(10**30)
    assert not is_perfect_square(-32768)
    assert not is_perfect_square(10**30 + 1)


def test_is_squarefree():
    assert is_squarefree(-1)
    assert is_squarefree(40921)
    assert not is_squarefree(0)
    assert not is_squarefree(-27)


def test_kronecker_examples():
    assert kronecker(-23, 2) == 1
    assert kronecker(5, 5) == 0
    assert kronecker(-4, 3) == -1


def test_kronecker_matches_jacobi_on_odd_moduli():
    for D in range(-60, 61):
        for k in range(1, 80, 2):
            assert kronecker(D, k) == sympy.jacobi_symbol(D, k), (D, k)


def test_kronecker_is_multiplicative_in_k():
    rng = random.Random(11)
    for _ in range(10**4):
        D = rng.randint(-1000, 1000)
        k1 = rng.randint(1, 1000)
        k2 = rng.randint(1, 1000)
        assert kronecker(D, k1 * k2) == kronecker(D, k1) * kronecker(D, k2), (D, k1, k2)


def test_kronecker_vector_matches_scalar():
    ks = np.arange(1, 500)
    for D in (-23, -4, -3, 5, 8, 12, 229, -163684):
        expected = [kronecker(D, int(k)) for k in ks]
        assert kronecker_vector(D, ks).tolist() == expected


def test_kronecker_vector_rejects_nonpositive():
    with pytest.raises(InvalidInputError):
        kronecker_vector(5, [0, 1])


def test_primes_up_to():
    assert primes_up_to(1).tolist() == []
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10**6)) == 78498


def test_cyclic_subgroup():
    assert cyclic_subgroup(15, 16) == {1, 15}
    assert cyclic_subgroup(7, 16) == {1, 7}
    assert cyclic_subgroup(3, 16) == {1, 3, 9, 11}
    with pytest.raises(InvalidInputError):
        cyclic_subgroup(4, 16)
