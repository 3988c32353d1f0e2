"""Small exact integer helpers shared across the package."""

from __future__ import annotations

from math import gcd, isqrt


def euler_phi(n: int) -> int:
    """Euler's totient of a positive integer."""
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p in distinct_prime_factors(n):
        result -= result // p
    return result


def distinct_prime_factors(n: int) -> list[int]:
    """Distinct primes dividing n, ascending (empty for n = 1)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    primes = []
    m = n
    if m % 2 == 0:
        primes.append(2)
        while m % 2 == 0:
            m //= 2
    p = 3
    while p <= isqrt(m):
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 2
    if m > 1:
        primes.append(m)
    return primes


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d <= isqrt(n):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def coprime_residues(q: int) -> list[int]:
    """Residues a with 1 <= a < q and gcd(a, q) = 1, ascending."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    return [a for a in range(1, q) if gcd(a, q) == 1]
