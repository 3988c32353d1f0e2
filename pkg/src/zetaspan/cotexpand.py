"""Exact integer-coefficient expansions of repeated derivatives of
pi*cot(pi*z).

For every k >= 1 the (k-1)-st derivative of pi*cot(pi*z) equals pi^k times
an integer combination of monomials csc(pi*z)^(2l) * cot(pi*z)^(k-2l).  The
coefficient tables are produced by iterating the one-step differentiation
rule

    d/dz [csc^(2l) cot^m] = -pi * (2l * csc^(2l) cot^(m+1)
                                   + m * csc^(2l+2) cot^(m-1)),

so a table for order k maps l -> c_l with m = k - 2l determined by l.  All
coefficients are exact arbitrary-size integers (they grow factorially).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import mpmath as mp

from .cyclotomic import CyclotomicElement, i_cot_element, zero
from .precision import GUARD_BITS, pi, require_precision, trig_at_rational


@dataclass(frozen=True)
class CotDerivativeExpansion:
    """Coefficient table for D^(k-1)(pi*cot(pi*z)) = pi^k * sum_l c_l *
    csc^(2l) * cot^(k-2l); zero coefficients are omitted."""

    order_k: int
    coefficients: dict[int, int]

    def monomials(self) -> list[tuple[int, int]]:
        """(l, c_l) pairs, ascending in l."""
        return sorted(self.coefficients.items())

    def to_json_dict(self) -> dict:
        return {
            "k": self.order_k,
            "coeffs": {str(l): str(c) for l, c in self.monomials()},
        }


def _differentiate_table(table: dict[int, int], prev_k: int) -> dict[int, int]:
    new: dict[int, int] = {}
    for l, c in table.items():
        m = prev_k - 2 * l
        if l:
            new[l] = new.get(l, 0) - 2 * l * c
        if m:
            new[l + 1] = new.get(l + 1, 0) - m * c
    return {l: c for l, c in new.items() if c}


# table for k = i+1 at index i; grown on demand and never mutated afterwards
_tables: list[dict[int, int]] = [{0: 1}]


def expand(k: int) -> CotDerivativeExpansion:
    """The exact expansion of D^(k-1)(pi*cot(pi*z)) for integer k >= 1."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"need an integer k >= 1, got {k!r}")
    while len(_tables) < k:
        _tables.append(_differentiate_table(_tables[-1], len(_tables)))
    return CotDerivativeExpansion(k, dict(_tables[k - 1]))


def evaluate_numeric(
    expansion: CotDerivativeExpansion, a: int, q: int, precision_bits: int
) -> mp.mpf:
    """pi^k * sum_l c_l * csc^(2l)(pi*a/q) * cot^(k-2l)(pi*a/q).

    Relative error is below 2**(8 - precision_bits): all c_l share one sign
    and every monomial carries the sign of cot^k, so the sum accumulates
    without cancellation.
    """
    require_precision(precision_bits)
    if q < 2 or not 1 <= a < q:
        raise ValueError(f"need q >= 2 and 1 <= a < q, got a={a}, q={q}")
    if gcd(a, q) != 1:
        raise ValueError(f"a = {a} must be coprime to q = {q}")
    k = expansion.order_k
    work = precision_bits + GUARD_BITS + k.bit_length()
    cot, csc_sq = trig_at_rational(a, q, work)
    with mp.workprec(work):
        terms = [
            mp.mpf(c) * csc_sq**l * cot ** (k - 2 * l)
            for l, c in expansion.monomials()
        ]
        return +(pi(work) ** k * mp.fsum(terms))


def normalized_cyclotomic(k: int, a: int, q: int) -> CyclotomicElement:
    """The exact w in Q(zeta_q) with D^(k-1)(pi*cot(pi*z))|_{z=a/q} =
    pi^k * i^(-k) * w.

    Substituting cot = -i*u and csc^2 = 1 - u^2, where u = i*cot(pi*a/q) is
    the exact element (1+zeta_q^a)/(1-zeta_q^a), turns each monomial
    csc^(2l) cot^(k-2l) into i^(-k) * (u^2 - 1)^l * u^(k-2l).
    """
    table = expand(k)
    u = i_cot_element(a, q)
    u_sq_minus_one = u * u - 1
    acc = zero(q)
    for l, c in table.monomials():
        acc = acc + (u_sq_minus_one**l) * (u ** (k - 2 * l)) * c
    return acc
