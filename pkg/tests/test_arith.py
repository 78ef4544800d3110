import math

import pytest
from hypothesis import given, strategies as st

from humbert.arith import (
    FACTOR_BOUND,
    divisors,
    factor,
    fundamental_decomposition,
    is_fundamental_discriminant,
    is_prime,
    is_squarefree,
    kronecker,
    prime_divisors,
    sigma,
)


def smallest_prime_factor_sieve(limit):
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for k in range(p * p, limit + 1, p):
                if spf[k] == k:
                    spf[k] = p
    return spf


def test_factor_examples():
    assert factor(1) == []
    assert factor(160) == [(2, 5), (5, 1)]
    # trial-division oracle: 9991 = 97 * 103, both prime by direct division
    assert all(9991 % k for k in range(2, 97))
    assert 9991 == 97 * 103
    assert factor(9991) == [(97, 1), (103, 1)]


def test_factor_bound():
    with pytest.raises(ValueError, match="input too large"):
        factor(FACTOR_BOUND + 1)
    with pytest.raises(ValueError):
        factor(0)


def test_factor_multiplies_back_up_to_1e5():
    spf = smallest_prime_factor_sieve(10**5)
    for n in range(1, 10**5 + 1):
        pairs = factor(n)
        prod = 1
        for p, e in pairs:
            prod *= p**e
        assert prod == n
        # independent oracle via smallest-prime-factor sieve
        m = n
        oracle = {}
        while m > 1:
            p = spf[m]
            oracle[p] = oracle.get(p, 0) + 1
            m //= p
        assert dict(pairs) == oracle


def test_is_prime_against_trial_division():
    def trial(n):
        return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))

    for n in range(0, 5000):
        assert is_prime(n) == trial(n), n
    assert is_prime(2**61 - 1)
    assert not is_prime(2**62 + 1)
    with pytest.raises(ValueError):
        is_prime(2**64)


def brute_legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def test_kronecker_matches_legendre_for_odd_primes():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        for a in range(-50, 51):
            assert kronecker(a, p) == brute_legendre(a, p), (a, p)


def test_kronecker_examples():
    for n in (-7, -2, -1, 1, 2, 3, 10, 97):
        assert kronecker(1, n) == 1
    assert kronecker(-8, 5) == -1  # -8 = 2 mod 5, and 2 is not a square mod 5
    assert kronecker(-3, 2) == -1  # -3 = 5 mod 8
    assert kronecker(1, 0) == 1
    assert kronecker(-1, 0) == 1
    assert kronecker(5, 0) == 0
    assert kronecker(-4, 2) == 0
    assert kronecker(2, 2) == 0


@given(st.integers(-80, 80), st.integers(1, 60), st.integers(1, 60))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


@given(st.integers(-80, 80), st.integers(-80, 80), st.integers(1, 120))
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


def test_fundamental_decomposition_examples():
    assert fundamental_decomposition(-3) == (-3, 1)
    assert fundamental_decomposition(-12) == (-3, 2)
    # -160 = 4 * -40 and -40/4 = -10 = 2 mod 4, so -40 is fundamental
    assert fundamental_decomposition(-160) == (-40, 2)


def test_fundamental_decomposition_errors():
    for bad in (0, 4, -1, -2, -6, -10):
        if bad % 4 in (0, 1) and bad < 0:
            continue
        with pytest.raises(ValueError, match="not a discriminant"):
            fundamental_decomposition(bad)


def test_fundamental_decomposition_roundtrip():
    for d in range(-4, -10**4 - 1, -1):
        if d % 4 not in (0, 1):
            continue
        d0, f = fundamental_decomposition(d)
        assert f >= 1 and f * f * d0 == d
        assert is_fundamental_discriminant(d0)
        if d0 % 4 == 1:
            assert is_squarefree(-d0)
        else:
            m = d0 // 4
            assert m % 4 in (2, 3) and is_squarefree(-m)


def test_sigma():
    assert sigma(1) == 1
    assert sigma(6) == 12
    assert sigma(100) == sum(d for d in range(1, 101) if 100 % d == 0) == 217


def test_is_squarefree():
    assert is_squarefree(10)
    assert not is_squarefree(12)
    assert is_squarefree(1)


def test_divisors_and_prime_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert prime_divisors(60) == [2, 3, 5]
