"""Arbitrary-precision numeric kernels: pi, Bernoulli numbers, and
trigonometric values at rational multiples of pi.

Floating values are mpmath floats (an arbitrary-precision mantissa times a
power of two); exact quantities are ``fractions.Fraction``.  Every operation
takes an explicit ``precision_bits`` argument (at least MIN_PRECISION_BITS),
works internally with at least GUARD_BITS extra bits, and documents its final
error bound as a power of two relative to the requested precision.  All
returned values are immutable and all functions are pure, so concurrent use
on independent inputs is safe.
"""

from __future__ import annotations

import functools
from fractions import Fraction

import mpmath as mp

MIN_PRECISION_BITS = 16
GUARD_BITS = 32


def require_precision(precision_bits: int) -> None:
    if not isinstance(precision_bits, int) or precision_bits < MIN_PRECISION_BITS:
        raise ValueError(
            f"precision_bits must be an integer >= {MIN_PRECISION_BITS}, "
            f"got {precision_bits!r}"
        )


def _arctan_recip_fixed(x: int, work_bits: int) -> int:
    """arctan(1/x) scaled by 2**work_bits, by the alternating series in pure
    integer arithmetic.  Each term adds at most one ulp of truncation error."""
    power = (1 << work_bits) // x
    total = power
    xx = x * x
    j = 1
    sign = -1
    while power:
        power //= xx
        total += sign * (power // (2 * j + 1))
        j += 1
        sign = -sign
    return total


def _pi_machin_fixed(work_bits: int) -> int:
    """pi scaled by 2**work_bits via pi/4 = 4*arctan(1/5) - arctan(1/239)."""
    return 4 * (4 * _arctan_recip_fixed(5, work_bits) - _arctan_recip_fixed(239, work_bits))


@functools.lru_cache(maxsize=None)
def pi(precision_bits: int) -> mp.mpf:
    """pi with |result - pi| <= 2**(2 - precision_bits).

    Two independent routes are evaluated and compared before anything is
    returned: a fixed-point Machin arctangent combination and mpmath's
    internal algorithm (Chudnovsky-style binary splitting).  Disagreement
    beyond the working tolerance raises ArithmeticError rather than
    returning a value.  Results are cached per precision.
    """
    require_precision(precision_bits)
    work = precision_bits + GUARD_BITS
    fixed = _pi_machin_fixed(work + 16)
    with mp.workprec(work):
        machin = mp.ldexp(mp.mpf(fixed), -(work + 16))
        internal = +mp.pi
        if abs(machin - internal) > mp.ldexp(1, 8 - work):
            raise ArithmeticError("pi cross-check failed: the two routes disagree")
    with mp.workprec(precision_bits):
        return +internal


def _tangent_numbers(m: int) -> list[int]:
    """Tangent numbers T_1 .. T_m by the Seidel triangle, exact integers.

    tan x = sum_{n>=1} T_n x^(2n-1)/(2n-1)!.
    """
    if m < 1:
        return []
    t = [0] * (m + 1)
    t[1] = 1
    for n in range(2, m + 1):
        t[n] = (n - 1) * t[n - 1]
    for n in range(2, m + 1):
        for j in range(n, m + 1):
            t[j] = (j - n) * t[j - 1] + (j - n + 2) * t[j]
    return t[1:]


# B_0, B_2, B_4, ... at index 0, 1, 2, ...
_bernoulli_even: list[Fraction] = [Fraction(1)]


def bernoulli_even(j: int) -> Fraction:
    """B_{2j} as an exact rational (B_0 = 1, B_2 = 1/6, ...)."""
    if j < 0:
        raise ValueError(f"need j >= 0, got {j}")
    if j >= len(_bernoulli_even):
        # regrow geometrically; the Seidel pass is quadratic but cheap
        m = max(j, 2 * (len(_bernoulli_even) - 1), 8)
        t = _tangent_numbers(m)
        del _bernoulli_even[1:]
        for n in range(1, m + 1):
            four_n = 1 << (2 * n)
            _bernoulli_even.append(
                Fraction((-1) ** (n - 1) * 2 * n * t[n - 1], four_n * (four_n - 1))
            )
    return _bernoulli_even[j]


def bernoulli_numbers(n_max: int) -> list[Fraction]:
    """B_0 .. B_{n_max} as exact rationals, with the B_1 = -1/2 convention.

    Even-index values come from the tangent-number (Seidel) triangle, which
    needs only integer additions; odd indices above 1 are zero.
    """
    if not isinstance(n_max, int) or n_max < 0:
        raise ValueError(f"n_max must be an integer >= 0, got {n_max!r}")
    out: list[Fraction] = []
    for n in range(n_max + 1):
        if n == 0:
            out.append(Fraction(1))
        elif n == 1:
            out.append(Fraction(-1, 2))
        elif n % 2:
            out.append(Fraction(0))
        else:
            out.append(bernoulli_even(n // 2))
    return out


def trig_at_rational(a: int, q: int, precision_bits: int) -> tuple[mp.mpf, mp.mpf]:
    """(cot(pi*a/q), csc^2(pi*a/q)) at the requested precision.

    The argument is reduced exactly as a rational into (0, 1/2] before any
    floating-point work (cot flips sign under x -> 1-x, csc^2 is invariant),
    so no accuracy is lost near the poles at integers.  Errors satisfy
    |err| <= (1 + |value|) * 2**(6 - precision_bits), and the returned pair
    obeys csc^2 = 1 + cot^2 to within 2**(4 - precision_bits) for moderate q.
    """
    require_precision(precision_bits)
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    if not 1 <= a < q:
        raise ValueError(
            f"a/q = {a}/{q} must lie strictly inside (0, 1); cot(pi*z) has poles at integers"
        )
    x = Fraction(a, q)
    sign = 1
    if 2 * x > 1:
        x = 1 - x
        sign = -1
    with mp.workprec(precision_bits + GUARD_BITS):
        t = mp.mpf(x.numerator) / x.denominator
        s = mp.sinpi(t)
        c = mp.cospi(t)
        cot = sign * c / s
        csc_sq = 1 / (s * s)
        return +cot, +csc_sq


def fraction_to_mpf(value: Fraction, precision_bits: int) -> mp.mpf:
    """Round an exact rational to a float at the given precision."""
    with mp.workprec(precision_bits):
        return mp.mpf(value.numerator) / value.denominator
