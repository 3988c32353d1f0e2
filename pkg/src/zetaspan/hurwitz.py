"""Arbitrary-precision evaluation of the Hurwitz zeta function at rational
arguments, zeta(k, a/q) = sum_{n>=0} 1/(n + a/q)^k for integer k >= 2, and
assembly of the raw / plus / minus value families spanning the rational
span of {zeta(k, a/q) : gcd(a, q) = 1}.

The evaluator uses Euler-Maclaurin summation: a partial sum to N, the
integral term (N+x)^(1-k)/(k-1), the half term (N+x)^(-k)/2, and Bernoulli
corrections

    B_{2j}/(2j)! * k(k+1)...(k+2j-2) * (N+x)^(-(k+2j-1)),   j = 1..J,

with N and J chosen at runtime from the rigorous remainder bound

    |R_J| <= 4 * (2*pi)^(-2J) * k(k+1)...(k+2J-2) * (N+x)^(-(k+2J-1)),

which follows from |periodized B_{2J}(t)| / (2J)! <= 2*zeta(2J)/(2*pi)^(2J)
and integrating |f^(2J)| over [N, inf).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lgamma, log

import mpmath as mp

from .arith import coprime_residues, euler_phi
from .precision import GUARD_BITS, bernoulli_even, require_precision

# factorial growth elsewhere makes larger k meaningless here
K_MAX = 10**6

_LOG2_TWO_PI = log(2 * 3.141592653589793, 2)


def _require_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(
            f"need an integer k >= 2 (the series has a pole at k = 1), got {k!r}"
        )
    if k > K_MAX:
        raise ValueError(f"k = {k} exceeds the supported maximum {K_MAX}")


def _tail_bound_log2(k: int, n_cut: int, j: int) -> float:
    """log2 of the Euler-Maclaurin remainder bound after j correction terms."""
    return (
        2.0
        - 2.0 * j * _LOG2_TWO_PI
        + (lgamma(k + 2 * j - 1) - lgamma(k)) / log(2.0)
        - (k + 2 * j - 1) * log(n_cut, 2)
    )


def _choose_cutoffs(k: int, precision_bits: int) -> tuple[int, int]:
    """(N, J) with the remainder bound below 2**-(precision_bits + 16)."""
    target = -(precision_bits + 16.0)
    n_cut = max(k, (precision_bits + GUARD_BITS + 16) // 3, 10)
    while True:
        j = 1
        while _tail_bound_log2(k, n_cut, j) > target:
            j += 1
            if k + 2 * j > 6 * n_cut:
                # corrections stop shrinking before the target; lengthen the sum
                break
        else:
            return n_cut, j
        n_cut *= 2


def hurwitz_zeta(k: int, a: int, q: int, precision_bits: int) -> mp.mpf:
    """zeta(k, a/q) with |error| <= 2**(8 - precision_bits).

    Requires k >= 2 and 0 < a/q <= 1 (a = q gives the Riemann case x = 1);
    a need not be coprime to q.
    """
    _require_k(k)
    require_precision(precision_bits)
    if q < 1 or not 1 <= a <= q:
        raise ValueError(
            f"need 1 <= a <= q with q >= 1 (so that 0 < a/q <= 1), got a={a}, q={q}"
        )
    x = Fraction(a, q)
    n_cut, j_corr = _choose_cutoffs(k, precision_bits)
    work = precision_bits + GUARD_BITS + 16
    with mp.workprec(work):
        xf = mp.mpf(x.numerator) / x.denominator
        total = mp.fsum((n + xf) ** (-k) for n in range(n_cut))
        nx = n_cut + xf
        total += nx ** (1 - k) / (k - 1) + nx ** (-k) / 2
        corrections = []
        rising = mp.mpf(k)         # k(k+1)...(k+2j-2), grown per j
        fact = 2                   # (2j)!
        power = nx ** (-k - 1)     # (N+x)^-(k+2j-1)
        nx_minus2 = nx ** (-2)
        for j in range(1, j_corr + 1):
            if j > 1:
                rising *= (k + 2 * j - 3) * (k + 2 * j - 2)
                fact *= (2 * j - 1) * (2 * j)
                power *= nx_minus2
            b = bernoulli_even(j)
            corrections.append(
                mp.mpf(b.numerator) / b.denominator / fact * rising * power
            )
        total += mp.fsum(corrections)
        return +total


def riemann_zeta(k: int, precision_bits: int) -> mp.mpf:
    """zeta(k) for integer k >= 2, the a/q = 1 case of hurwitz_zeta."""
    return hurwitz_zeta(k, 1, 1, precision_bits)


@dataclass(frozen=True)
class HalfSystem:
    """Coprime residues a with 1 <= a < q/2; together with their negatives
    they form a complete coprime residue system mod q."""

    modulus: int
    representatives: tuple[int, ...]


def half_system(q: int) -> HalfSystem:
    """The canonical half system {a : 1 <= a < q/2, gcd(a, q) = 1}."""
    if q <= 2:
        raise ValueError(f"a half system needs q > 2, got {q}")
    reps = tuple(a for a in range(1, (q + 1) // 2) if gcd(a, q) == 1)
    return HalfSystem(q, reps)


@dataclass(frozen=True)
class BasisValues:
    """zeta(k, a/q) over the coprime residues, with the reflected sum and
    difference combinations indexed by the canonical half system."""

    k: int
    half_system: HalfSystem
    raw: dict[int, mp.mpf]
    plus: dict[int, mp.mpf]
    minus: dict[int, mp.mpf]


def basis_values(k: int, q: int, precision_bits: int) -> BasisValues:
    """All phi(q) values zeta(k, a/q) plus the phi(q)/2 combinations
    zeta(k, a/q) +- zeta(k, 1 - a/q) over the canonical half system."""
    _require_k(k)
    if q <= 2:
        raise ValueError(f"need q > 2 (phi(q) must be even), got {q}")
    hs = half_system(q)
    raw = {a: hurwitz_zeta(k, a, q, precision_bits) for a in coprime_residues(q)}
    with mp.workprec(precision_bits + GUARD_BITS):
        plus = {a: raw[a] + raw[q - a] for a in hs.representatives}
        minus = {a: raw[a] - raw[q - a] for a in hs.representatives}
    assert len(raw) == euler_phi(q)
    return BasisValues(k=k, half_system=hs, raw=raw, plus=plus, minus=minus)
