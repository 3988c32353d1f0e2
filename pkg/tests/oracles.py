"""Independent reference implementations used as test oracles.

Everything here deliberately avoids the package's own kernels: Bernoulli
numbers come from mpmath's bernoulli(), zeta references from mpmath's zeta,
the lattice sum from a symmetric partial sum with hand-written
Euler-Maclaurin tails, and lattice checks from exact Fraction arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb

import mpmath as mp

# first 101 significant digits; cross-checked against an integer-arithmetic
# Machin evaluation before freezing
PI_100 = (
    "3."
    "1415926535897932384626433832795028841971693993751"
    "058209749445923078164062862089986280348253421170679"
)

# 40 significant digits of zeta(3), from mpmath
ZETA3_40 = "1.202056903159594285399738161511449990765"


def bernoulli_recurrence(n_max: int) -> list[Fraction]:
    """B_0..B_{n_max} straight from the defining recurrence
    sum_{j=0}^{n} C(n+1, j) B_j = 0 (B_1 = -1/2 convention)."""
    values = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = sum(Fraction(comb(n + 1, j)) * values[j] for j in range(n))
        values.append(-acc / (n + 1))
    return values


def mp_hurwitz(k: int, a: int, q: int, dps: int) -> mp.mpf:
    """zeta(k, a/q) via mpmath's own evaluator."""
    with mp.workdps(dps + 10):
        return mp.zeta(k, mp.mpf(a) / q)


def em_tail(k: int, y: Fraction, dps: int) -> mp.mpf:
    """sum_{n >= 0} (n + y)^(-k) for y >= 30 or so, by direct
    Euler-Maclaurin on mpmath primitives (mp.bernoulli), truncating when
    the corrections fall below the target."""
    with mp.workdps(dps + 15):
        yf = mp.mpf(y.numerator) / y.denominator
        total = yf ** (1 - k) / (k - 1) + yf ** (-k) / 2
        target = mp.mpf(10) ** (-(dps + 8))
        rising = mp.mpf(k)
        fact = mp.mpf(2)
        power = yf ** (-k - 1)
        j = 1
        while True:
            term = mp.bernoulli(2 * j) / fact * rising * power
            total += term
            if abs(term) < target:
                return +total
            j += 1
            assert j < 300, "tail did not converge; enlarge the window"
            rising *= (k + 2 * j - 3) * (k + 2 * j - 2)
            fact *= (2 * j - 1) * (2 * j)
            power /= yf * yf


def lattice_sum(k: int, z: Fraction, dps: int, window: int = 40) -> mp.mpf:
    """sum over all integers n of 1/(z + n)^k for z in (0, 1):
    symmetric partial sum plus Euler-Maclaurin tails on both sides."""
    assert 0 < z < 1 and k >= 2
    with mp.workdps(dps + 15):
        zf = mp.mpf(z.numerator) / z.denominator
        partial = mp.fsum((zf + n) ** (-k) for n in range(-window, window + 1))
        upper = em_tail(k, z + window + 1, dps)
        lower = (-1) ** k * em_tail(k, Fraction(window + 1) - z, dps)
        return +(partial + upper + lower)


def cyclotomic_by_moebius(q: int) -> tuple[int, ...]:
    """Phi_q as prod_{d | q} (x^(q/d) - 1)^(mu(d)), via exact Fraction
    polynomial multiplication and division; independent of the package's
    divide-out-the-divisors construction."""

    def moebius(n: int) -> int:
        result = 1
        m = n
        p = 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                result = -result
            p += 1
        if m > 1:
            result = -result
        return result

    def poly_mul(u, v):
        out = [Fraction(0)] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    out[i + j] += x * y
        return out

    def poly_div(u, v):
        u = list(u)
        quot = [Fraction(0)] * (len(u) - len(v) + 1)
        for shift in range(len(quot) - 1, -1, -1):
            c = u[shift + len(v) - 1] / v[-1]
            quot[shift] = c
            for i, d in enumerate(v):
                u[shift + i] -= c * d
        assert not any(u), "non-exact division in the Moebius oracle"
        return quot

    numer = [Fraction(1)]
    denom = [Fraction(1)]
    for d in range(1, q + 1):
        if q % d == 0:
            mu = moebius(d)
            binom = [Fraction(-1)] + [Fraction(0)] * (q // d - 1) + [Fraction(1)]
            if mu == 1:
                numer = poly_mul(numer, binom)
            elif mu == -1:
                denom = poly_mul(denom, binom)
    result = poly_div(numer, denom)
    assert all(c.denominator == 1 for c in result)
    return tuple(int(c) for c in result)


def shortest_vector_sq_2d(v1: tuple[int, int], v2: tuple[int, int], radius: int = 80) -> int:
    """Squared norm of the shortest nonzero lattice vector, by exhaustive
    search over small coefficient combinations."""
    best = None
    for s, t in product(range(-radius, radius + 1), repeat=2):
        if s == 0 and t == 0:
            continue
        x = s * v1[0] + t * v2[0]
        y = s * v1[1] + t * v2[1]
        norm = x * x + y * y
        if best is None or norm < best:
            best = norm
    return best
