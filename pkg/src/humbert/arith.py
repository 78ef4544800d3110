"""Exact integer kernel: factorization, Kronecker symbols, discriminant helpers.

Everything here works on plain Python ints (arbitrary precision) and
``fractions.Fraction``; no floating point anywhere.
"""

from __future__ import annotations

from functools import reduce

# Factoring is deterministic trial division; anything past this bound is
# rejected loudly instead of silently taking forever.
FACTOR_BOUND = 10**12

# Witnesses making Miller-Rabin deterministic below 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 2**64


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**64."""
    if n >= _MR_LIMIT:
        raise ValueError("input too large: primality test is deterministic only below 2**64")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor(n: int, bound: int = FACTOR_BOUND) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as a sorted list of (prime, exponent)."""
    if n < 1:
        raise ValueError("factor requires n >= 1")
    if n > bound:
        raise ValueError(f"input too large: factoring bound is {bound}")
    pairs: list[tuple[int, int]] = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
    # trial divisors 6k +/- 1
    d = 5
    while d * d <= m:
        for q in (d, d + 2):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                pairs.append((q, e))
        d += 6
    if m > 1:
        pairs.append((m, 1))
    assert reduce(lambda acc, pe: acc * pe[0] ** pe[1], pairs, 1) == n
    return pairs


def prime_divisors(n: int) -> list[int]:
    """Sorted list of primes dividing n >= 1."""
    return [p for p, _ in factor(n)]


def divisors(n: int) -> list[int]:
    """Sorted list of positive divisors of n >= 1."""
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    if n < 1:
        raise ValueError("sigma requires n >= 1")
    total = 1
    for p, e in factor(n):
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides n >= 1."""
    if n < 1:
        raise ValueError("is_squarefree requires n >= 1")
    return all(e == 1 for _, e in factor(n))


def _jacobi(a: int, m: int) -> int:
    # Jacobi symbol (a|m) for odd m > 0.
    assert m > 0 and m % 2 == 1
    a %= m
    sign = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                sign = -sign
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            sign = -sign
        a %= m
    return sign if m == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers a and n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # split off the even part of n; (a|2) = 0, 1, -1 for a even / +-1 / +-3 mod 8
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        if a % 2 == 0:
            return 0
        if e % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    return sign * _jacobi(a, n)


def is_discriminant(d: int) -> bool:
    """True iff d is a discriminant of a quadratic order (d = 0,1 mod 4)."""
    return d % 4 in (0, 1)


def is_fundamental_discriminant(d: int) -> bool:
    """True iff d is the discriminant of a maximal quadratic order."""
    if d == 1 or not is_discriminant(d):
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    m = d // 4
    return m % 4 in (2, 3) and is_squarefree(abs(m))


def fundamental_decomposition(d: int) -> tuple[int, int]:
    """Write a negative discriminant d as f**2 * d0 with d0 fundamental.

    Returns (d0, f).
    """
    if d >= 0 or not is_discriminant(d):
        raise ValueError(f"not a discriminant: {d}")
    # |d| = s^2 * k with k squarefree
    s = 1
    k = 1
    for p, e in factor(-d):
        s *= p ** (e // 2)
        if e % 2 == 1:
            k *= p
    if (-k) % 4 == 1:
        d0, f = -k, s
    else:
        # s is forced even here because d = 0,1 mod 4
        assert s % 2 == 0
        d0, f = -4 * k, s // 2
    assert f * f * d0 == d and is_fundamental_discriminant(d0)
    return d0, f
