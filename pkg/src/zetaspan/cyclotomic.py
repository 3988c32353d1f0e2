"""Exact arithmetic in the cyclotomic field Q(zeta_q).

Elements live in the power basis 1, z, ..., z^(phi(q)-1) modulo the q-th
cyclotomic polynomial, with Fraction coefficients.  Representations are
canonically reduced, so two equal field elements always have identical
coefficient tuples and equality testing is syntactic.  The degenerate
conductors q = 1 and q = 2 are supported and give coefficient tuples of
length one (the field is Q).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

import mpmath as mp

from .arith import divisors, euler_phi
from .precision import GUARD_BITS, require_precision

# Integer polynomials are plain tuples, lowest degree first, trailing zeros
# stripped (the zero polynomial is the empty tuple).
IntegerPolynomial = tuple[int, ...]

Scalar = Union[int, Fraction]


def _trimmed(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _int_poly_div_exact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact quotient of integer polynomials; raises if division leaves a
    remainder.  The divisor must have leading coefficient +-1."""
    num = list(num)
    lead = den[-1]
    quot = [0] * (len(num) - len(den) + 1)
    for shift in range(len(quot) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> IntegerPolynomial:
    """The q-th cyclotomic polynomial, lowest-degree-first integer
    coefficients; degree phi(q).  Built by dividing x^q - 1 by Phi_d for
    every proper divisor d of q."""
    if q < 1:
        raise ValueError(f"need q >= 1, got {q}")
    if q == 1:
        return (-1, 1)
    poly = [0] * (q + 1)
    poly[0] = -1
    poly[q] = 1
    for d in divisors(q):
        if d < q:
            poly = _int_poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _phi_fracs(q: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in cyclotomic_polynomial(q))


def _frac_poly_mod(poly: list[Fraction], modulus: Sequence[Fraction]) -> list[Fraction]:
    """Remainder of poly modulo a monic modulus, exact over Q."""
    deg_m = len(modulus) - 1
    poly = list(poly)
    for shift in range(len(poly) - deg_m - 1, -1, -1):
        c = poly[shift + deg_m]
        if c:
            for i in range(deg_m):
                poly[shift + i] -= c * modulus[i]
            poly[shift + deg_m] = Fraction(0)
    del poly[deg_m:]
    return poly


def _frac_poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    b = _trimmed(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    deg_b = len(b) - 1
    lead = b[-1]
    quot = [Fraction(0)] * max(len(a) - deg_b, 0)
    for shift in range(len(quot) - 1, -1, -1):
        c = a[shift + deg_b] / lead
        quot[shift] = c
        if c:
            for i, d in enumerate(b):
                a[shift + i] -= c * d
    return quot, _trimmed(a)


def _frac_poly_ext_gcd(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """(g, s) with s*a = g (mod b) and g = gcd(a, b), over Q[x]."""
    r0, r1 = _trimmed(list(a)), _trimmed(list(b))
    s0, s1 = [Fraction(1)], []
    while r1:
        quot, rem = _frac_poly_divmod(r0, r1)
        r0, r1 = r1, rem
        # s_next = s0 - quot * s1
        prod = [Fraction(0)] * (len(quot) + len(s1))
        for i, qc in enumerate(quot):
            if qc:
                for j, sc in enumerate(s1):
                    prod[i + j] += qc * sc
        nxt = list(prod)
        for i, sc in enumerate(s0):
            if i >= len(nxt):
                nxt.extend([Fraction(0)] * (i + 1 - len(nxt)))
            nxt[i] = sc - nxt[i]
        for i in range(len(s0), len(nxt)):
            nxt[i] = -nxt[i]
        s0, s1 = s1, _trimmed(nxt)
    return r0, s0


@dataclass(frozen=True)
class CyclotomicElement:
    """An element of Q(zeta_q) in the canonically reduced power basis.

    Do not call the constructor with unreduced data; use :func:`element`
    (or the arithmetic operators) instead.
    """

    conductor: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError(f"conductor must be >= 1, got {self.conductor}")
        if len(self.coeffs) != euler_phi(self.conductor):
            raise ValueError(
                f"expected {euler_phi(self.conductor)} coefficients for conductor "
                f"{self.conductor}, got {len(self.coeffs)}"
            )

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- arithmetic ---------------------------------------------------------

    def _check_same_field(self, other: "CyclotomicElement") -> None:
        if self.conductor != other.conductor:
            raise ValueError(
                f"conductor mismatch: {self.conductor} vs {other.conductor}"
            )

    def _coerce(self, value) -> "CyclotomicElement | None":
        if isinstance(value, CyclotomicElement):
            return value
        if isinstance(value, (int, Fraction)):
            return rational_element(self.conductor, Fraction(value))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check_same_field(o)
        return CyclotomicElement(
            self.conductor, tuple(x + y for x, y in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check_same_field(o)
        return CyclotomicElement(
            self.conductor, tuple(x - y for x, y in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CyclotomicElement(self.conductor, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CyclotomicElement(self.conductor, tuple(x * f for x in self.coeffs))
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        self._check_same_field(other)
        prod = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        return element(self.conductor, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        """Multiplicative inverse, by the extended Euclidean algorithm
        against the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("cannot invert the zero element")
        if self.is_rational():
            return rational_element(self.conductor, 1 / self.coeffs[0])
        g, s = _frac_poly_ext_gcd(list(self.coeffs), list(_phi_fracs(self.conductor)))
        # Phi_q is irreducible over Q, so the gcd is a nonzero constant.
        if len(g) != 1:
            raise ArithmeticError("gcd with the cyclotomic polynomial is not constant")
        inv = [c / g[0] for c in s]
        return element(self.conductor, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return self * Fraction(f.denominator, f.numerator)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = one(self.conductor)
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result


def element(q: int, coeffs: Sequence[Scalar]) -> CyclotomicElement:
    """Build the element sum_j coeffs[j] * zeta_q^j, reducing canonically.

    Accepts any number of coefficients; exponents are folded with
    zeta_q^q = 1 and the result is reduced modulo the cyclotomic polynomial.
    """
    if q < 1:
        raise ValueError(f"need q >= 1, got {q}")
    folded = [Fraction(0)] * q
    for j, c in enumerate(coeffs):
        if c:
            folded[j % q] += Fraction(c)
    phi = euler_phi(q)
    reduced = _frac_poly_mod(folded, _phi_fracs(q)) if q > 1 else [sum(folded, Fraction(0))]
    reduced += [Fraction(0)] * (phi - len(reduced))
    return CyclotomicElement(q, tuple(reduced[:phi]))


def zero(q: int) -> CyclotomicElement:
    return rational_element(q, Fraction(0))


def one(q: int) -> CyclotomicElement:
    return rational_element(q, Fraction(1))


def rational_element(q: int, value: Scalar) -> CyclotomicElement:
    coeffs = [Fraction(value)] + [Fraction(0)] * (euler_phi(q) - 1)
    return CyclotomicElement(q, tuple(coeffs))


def zeta(q: int) -> CyclotomicElement:
    """The distinguished primitive q-th root of unity zeta_q."""
    return element(q, [0, 1])


def i_cot_element(a: int, q: int) -> CyclotomicElement:
    """The exact element u = (1 + zeta_q^a) / (1 - zeta_q^a) of Q(zeta_q),
    whose numeric value is i*cot(pi*a/q)."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    if not 1 <= a < q:
        raise ValueError(f"need 1 <= a < q, got a={a}, q={q}")
    if gcd(a, q) != 1:
        raise ValueError(f"a = {a} must be coprime to q = {q}")
    za = zeta(q) ** a
    return (one(q) + za) / (one(q) - za)


def galois_apply(x: CyclotomicElement, t: int) -> CyclotomicElement:
    """The automorphism sigma_t : zeta_q -> zeta_q^t, applied exactly."""
    q = x.conductor
    if gcd(t, q) != 1:
        raise ValueError(f"t = {t} must be coprime to the conductor {q}")
    t %= q
    acc = [Fraction(0)] * q
    for j, c in enumerate(x.coeffs):
        if c:
            acc[(j * t) % q] += c
    return element(q, acc)


def is_in_subfield(x: CyclotomicElement, d: int) -> bool:
    """True iff x lies in Q(zeta_d), for d dividing the conductor q.

    Tests invariance under every sigma_t with t = 1 (mod d) and
    gcd(t, q) = 1, the subgroup fixing Q(zeta_d).  d = 1 tests rationality.
    """
    q = x.conductor
    if d < 1 or q % d:
        raise ValueError(f"d = {d} does not divide the conductor {q}")
    for t in range(2, q):
        if gcd(t, q) == 1 and t % d == 1 % d:
            if galois_apply(x, t) != x:
                return False
    return True


def embed_numeric(x: CyclotomicElement, precision_bits: int) -> tuple[mp.mpf, mp.mpf]:
    """Numeric embedding zeta_q -> exp(2*pi*i/q) as (real, imaginary) parts.

    Each part is within (1 + sum|c_j|) * 2**(6 - precision_bits) of the
    exact value; the angle 2j/q is kept as an exact rational until the final
    sin/cos evaluation.
    """
    require_precision(precision_bits)
    q = x.conductor
    with mp.workprec(precision_bits + GUARD_BITS):
        re_terms, im_terms = [], []
        for j, c in enumerate(x.coeffs):
            if not c:
                continue
            cf = mp.mpf(c.numerator) / c.denominator
            ang = Fraction(2 * j, q)
            t = mp.mpf(ang.numerator) / ang.denominator
            re_terms.append(cf * mp.cospi(t))
            im_terms.append(cf * mp.sinpi(t))
        return +mp.fsum(re_terms), +mp.fsum(im_terms)


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def element_to_text(x: CyclotomicElement) -> str:
    """Canonical text form ``q; c_0, c_1, ...`` with rationals as num/den."""
    return f"{x.conductor}; " + ", ".join(_frac_text(c) for c in x.coeffs)


def element_from_text(text: str) -> CyclotomicElement:
    """Parse the ``q; c_0, c_1, ...`` form (extra coefficients are reduced)."""
    head, sep, tail = text.partition(";")
    if not sep:
        raise ValueError(f"malformed element text {text!r}: missing ';'")
    try:
        q = int(head.strip())
        coeffs = [Fraction(tok.strip()) for tok in tail.split(",")] if tail.strip() else []
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed element text {text!r}: {exc}") from None
    return element(q, coeffs)
