"""Machine verification of the cotangent-derivative identities for Hurwitz
zeta values, the exact cyclotomic value of the odd-k reflection ratio, and
the representation probe for zeta(k) over the minus combinations.

The two verified identities, labelled lemma3 and lemma4 throughout the
project (command names included), are

    lemma3:  zeta(k, a/q) + (-1)^k zeta(k, 1 - a/q)
                 = ((-1)^(k-1) / (k-1)!) * D^(k-1)(pi*cot(pi*z)) |_{z=a/q}

    lemma4:  zeta(k) * prod_{p | q} (1 - p^(-k))
                 = q^(-k) * sum_{gcd(a,q)=1} zeta(k, a/q)

and the exact-ratio computation realizes, for odd k,

    (zeta(k, a/q) - zeta(k, 1 - a/q)) / (2*pi*i)^k  in  Q(zeta_q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

import mpmath as mp

from .arith import coprime_residues, distinct_prime_factors
from .cotexpand import evaluate_numeric, expand, normalized_cyclotomic
from .cyclotomic import CyclotomicElement, embed_numeric, galois_apply
from .hurwitz import basis_values, hurwitz_zeta, riemann_zeta
from .precision import GUARD_BITS, fraction_to_mpf, require_precision
from .relations import RelationReport, find_integer_relation

# pass iff residual <= 2**(THRESHOLD_MARGIN_LOG2 + GUARD_BITS - precision_bits):
# tolerates accumulated guard-digit loss while catching genuine identity
# failures by a huge margin
THRESHOLD_MARGIN_LOG2 = 20


def default_threshold_log2(precision_bits: int) -> int:
    return THRESHOLD_MARGIN_LOG2 + GUARD_BITS - precision_bits


@dataclass(frozen=True)
class ResidualReport:
    """Two sides of an identity and the size of their difference.

    residual_log2 is an integer m with |lhs - rhs| <= 2**m (None marks an
    exactly zero difference); passed compares it against threshold_log2.
    """

    description: str
    lhs: mp.mpf
    rhs: mp.mpf
    residual_log2: int | None
    threshold_log2: int
    passed: bool


def _residual_report(description, lhs, rhs, threshold_log2) -> ResidualReport:
    diff = lhs - rhs
    rlog = None if diff == 0 else int(mp.mag(diff))
    return ResidualReport(
        description=description,
        lhs=lhs,
        rhs=rhs,
        residual_log2=rlog,
        threshold_log2=threshold_log2,
        passed=(rlog is None or rlog <= threshold_log2),
    )


def verify_lemma3(
    k: int, a: int, q: int, precision_bits: int, threshold_log2: int | None = None
) -> ResidualReport:
    """Check zeta(k,a/q) + (-1)^k zeta(k,1-a/q) against the scaled
    (k-1)-st cotangent derivative, each side computed independently."""
    require_precision(precision_bits)
    if q <= 2:
        raise ValueError(f"need q > 2, got {q}")
    if not 1 <= a < q or gcd(a, q) != 1:
        raise ValueError(f"need 1 <= a < q with gcd(a, q) = 1, got a={a}, q={q}")
    if threshold_log2 is None:
        threshold_log2 = default_threshold_log2(precision_bits)
    zeta_a = hurwitz_zeta(k, a, q, precision_bits)
    zeta_refl = hurwitz_zeta(k, q - a, q, precision_bits)
    with mp.workprec(precision_bits + GUARD_BITS):
        lhs = zeta_a + zeta_refl if k % 2 == 0 else zeta_a - zeta_refl
        sign = 1 if k % 2 else -1
        rhs = sign * evaluate_numeric(expand(k), a, q, precision_bits) / factorial(k - 1)
        return _residual_report(f"lemma3 k={k} a={a} q={q}", +lhs, +rhs, threshold_log2)


def verify_lemma4(
    k: int, q: int, precision_bits: int, threshold_log2: int | None = None
) -> ResidualReport:
    """Check the Euler-factor identity: zeta(k) times the finite product
    over primes dividing q equals q^(-k) times the sum of zeta(k, a/q) over
    coprime residues.  The finite product is computed exactly first."""
    require_precision(precision_bits)
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    if threshold_log2 is None:
        threshold_log2 = default_threshold_log2(precision_bits)
    euler_factor = Fraction(1)
    for p in distinct_prime_factors(q):
        euler_factor *= Fraction(p**k - 1, p**k)
    zk = riemann_zeta(k, precision_bits)
    parts = [hurwitz_zeta(k, a, q, precision_bits) for a in coprime_residues(q)]
    with mp.workprec(precision_bits + GUARD_BITS):
        lhs = zk * fraction_to_mpf(euler_factor, precision_bits + GUARD_BITS)
        rhs = mp.fsum(parts) * fraction_to_mpf(
            Fraction(1, q**k), precision_bits + GUARD_BITS
        )
        return _residual_report(f"lemma4 k={k} q={q}", +lhs, +rhs, threshold_log2)


def exact_ratio(k: int, a: int, q: int) -> CyclotomicElement:
    """The exact element of Q(zeta_q) equal to
    (zeta(k, a/q) - zeta(k, 1 - a/q)) / (2*pi*i)^k, for odd k >= 3.

    Derivation: the minus combination equals (1/(k-1)!) pi^k i^(-k) w with
    w = normalized_cyclotomic(k, a, q), and dividing by (2*pi*i)^k leaves
    -w / ((k-1)! * 2^k) since i^(-2k) = -1 for odd k.
    """
    if not isinstance(k, int) or k < 3 or k % 2 == 0:
        raise ValueError(f"need odd k >= 3, got {k!r}")
    if q <= 2:
        raise ValueError(f"need q > 2, got {q}")
    if not 1 <= a or 2 * a >= q:
        raise ValueError(f"need 1 <= a < q/2, got a={a}, q={q}")
    if gcd(a, q) != 1:
        raise ValueError(f"a = {a} must be coprime to q = {q}")
    w = normalized_cyclotomic(k, a, q)
    return w * Fraction(-1, factorial(k - 1) * 2**k)


def ratio_numeric(k: int, a: int, q: int, precision_bits: int) -> tuple[mp.mpf, mp.mpf]:
    """(real, imaginary) parts of (zeta(k,a/q) - zeta(k,1-a/q)) / (2*pi*i)^k
    computed purely numerically, as an independent check of exact_ratio."""
    require_precision(precision_bits)
    zeta_a = hurwitz_zeta(k, a, q, precision_bits)
    zeta_refl = hurwitz_zeta(k, q - a, q, precision_bits)
    with mp.workprec(precision_bits + GUARD_BITS):
        ratio = (zeta_a - zeta_refl) / (2 * mp.pi * mp.mpc(0, 1)) ** k
        return +ratio.real, +ratio.imag


def conjugation_antisymmetric(x: CyclotomicElement) -> bool:
    """True iff sigma_{-1}(x) = -x exactly (purely imaginary embedding)."""
    return galois_apply(x, -1) == -x


def zeta_representation_probe(
    k: int, q: int, precision_bits: int, coefficient_bound: int
) -> RelationReport:
    """Probe for a rational representation of zeta(k) over the minus
    combinations zeta(k,a/q) - zeta(k,1-a/q), a in the canonical half
    system: the probed vector is (zeta(k), minus values).

    The report never concludes anything: a found relation is verified to
    the stated residual, and an empty list only means no relation with
    coefficients up to the bound exists at this precision.
    """
    if not isinstance(k, int) or k < 3 or k % 2 == 0:
        raise ValueError(f"need odd k >= 3, got {k!r}")
    bv = basis_values(k, q, precision_bits)
    vector = [riemann_zeta(k, precision_bits)]
    vector.extend(bv.minus[a] for a in bv.half_system.representatives)
    return find_integer_relation(vector, precision_bits, coefficient_bound)


def planted_minus_control(
    k: int, q: int, precision_bits: int, coefficient_bound: int
) -> tuple[RelationReport, tuple[int, ...], bool]:
    """Control run for the representation probe: replace zeta(k) by a known
    integer combination of the minus values and demand its recovery.

    Returns (report, expected_relation, recovered).
    """
    bv = basis_values(k, q, precision_bits)
    minus = [bv.minus[a] for a in bv.half_system.representatives]
    with mp.workprec(precision_bits + GUARD_BITS):
        if len(minus) >= 2:
            planted = 2 * minus[0] - 3 * minus[1]
            expected = (1, -2, 3) + (0,) * (len(minus) - 2)
        else:
            planted = 2 * minus[0]
            expected = (1, -2)
    report = find_integer_relation(
        [planted, *minus], precision_bits, coefficient_bound
    )
    recovered = any(rel.coefficients == expected for rel in report.relations)
    return report, expected, recovered


def euler_factor_control(
    k: int, q: int, precision_bits: int, coefficient_bound: int
) -> tuple[RelationReport, tuple[int, ...], bool]:
    """Control run recovering the lemma4 identity as an integer relation:
    probes (zeta(k) * prod(1-p^-k) * q^k, raw values) and expects the
    relation (1, -1, ..., -1)."""
    bv = basis_values(k, q, precision_bits)
    raw = [bv.raw[a] for a in sorted(bv.raw)]
    euler_factor = Fraction(q**k)
    for p in distinct_prime_factors(q):
        euler_factor *= Fraction(p**k - 1, p**k)
    with mp.workprec(precision_bits + GUARD_BITS):
        lead = riemann_zeta(k, precision_bits) * fraction_to_mpf(
            euler_factor, precision_bits + GUARD_BITS
        )
    expected = (1,) + (-1,) * len(raw)
    report = find_integer_relation([lead, *raw], precision_bits, coefficient_bound)
    recovered = any(rel.coefficients == expected for rel in report.relations)
    return report, expected, recovered
