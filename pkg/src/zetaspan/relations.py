"""Integer-relation detection over high-precision real vectors via exact
lattice reduction, and the span-dimension probe built on it.

The LLL implementation is the all-integer variant (de Weger / Cohen): the
Gram-Schmidt data is carried as integers lam[i][j] = d[j+1]*mu[i][j] and
d[i] = det(Gram of the first i rows), so there is no floating point anywhere
in the reduction.  Relation finding augments the identity matrix with a
column of scaled values round(2^P * x_i); the lattice only proposes
candidates, and every candidate is re-verified against the input values at
full precision before it is reported.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import mpmath as mp

from .hurwitz import basis_values
from .precision import require_precision

SCALE_GUARD_BITS = 64          # P = precision_bits - SCALE_GUARD_BITS
PRECISION_MARGIN_BITS = 64     # required headroom of P over n*log2(bound)
RESIDUAL_SLACK_LOG2 = 24       # accepted residual: 2**(slack + log2(sum|c|) - prec)


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def _gram_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of the Gram matrix of the rows, exact (Bareiss)."""
    n = len(rows)
    m = [[_dot(rows[i], rows[j]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for p in range(n - 1):
        if m[p][p] == 0:
            swap = next((r for r in range(p + 1, n) if m[r][p] != 0), None)
            if swap is None:
                return 0
            m[p], m[swap] = m[swap], m[p]
            sign = -sign
        for r in range(p + 1, n):
            for c in range(p + 1, n):
                m[r][c] = (m[p][p] * m[r][c] - m[r][p] * m[p][c]) // prev
        prev = m[p][p]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class LatticeBasis:
    """Rows of equal length spanning a lattice; linear independence is
    checked on construction via a nonzero Gram determinant."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("a lattice basis needs at least one row")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("all basis rows must have equal length")
        if len(self.rows) > width:
            raise ValueError("more rows than columns cannot be independent")
        if _gram_det(self.rows) == 0:
            raise ValueError("basis rows are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.rows)


def lll_reduce(basis: LatticeBasis, delta: Fraction = Fraction(3, 4)) -> LatticeBasis:
    """LLL-reduce the basis with parameter delta in (1/4, 1).

    The output spans the same lattice (all steps are unimodular), is
    size-reduced (|mu_ij| <= 1/2) and satisfies the Lovasz condition.
    Arithmetic is exact throughout.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"delta must lie in (1/4, 1), got {delta}")
    p, r = delta.numerator, delta.denominator
    b = [list(row) for row in basis.rows]
    n = len(b)
    if n == 1:
        return LatticeBasis((tuple(b[0]),))

    # integral Gram-Schmidt data: d[0] = 1, d[i] = det Gram(b_0..b_{i-1}),
    # lam[i][j] = d[j+1] * mu_ij
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = _dot(b[i], b[j])
            for t in range(j):
                u = (d[t + 1] * u - lam[i][t] * lam[j][t]) // d[t]
            if j < i:
                lam[i][j] = u
            else:
                d[i + 1] = u
        if d[i + 1] <= 0:
            raise ValueError("basis rows are linearly dependent")

    def size_reduce(k: int, j: int) -> None:
        if abs(2 * lam[k][j]) > d[j + 1]:
            q = (2 * lam[k][j] + d[j + 1]) // (2 * d[j + 1])  # nearest integer
            b[k] = [x - q * y for x, y in zip(b[k], b[j])]
            for t in range(j):
                lam[k][t] -= q * lam[j][t]
            lam[k][j] -= q * d[j + 1]

    def swap(k: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        for t in range(k - 1):
            lam[k][t], lam[k - 1][t] = lam[k - 1][t], lam[k][t]
        lam_k = lam[k][k - 1]
        new_d = (d[k - 1] * d[k + 1] + lam_k * lam_k) // d[k]
        for i in range(k + 1, n):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_k * t) // d[k]
            lam[i][k - 1] = (new_d * t + lam_k * lam[i][k]) // d[k + 1]
        d[k] = new_d

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        lam_k = lam[k][k - 1]
        # Lovasz in integer form: r*d[k+1]*d[k-1] >= p*d[k]^2 - r*lam^2
        if r * d[k + 1] * d[k - 1] >= p * d[k] * d[k] - r * lam_k * lam_k:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
        else:
            swap(k)
            k = max(k - 1, 1)

    return LatticeBasis(tuple(tuple(row) for row in b))


def is_lll_reduced(basis: LatticeBasis, delta: Fraction = Fraction(3, 4)) -> bool:
    """Exact rational check of size-reduction and the Lovasz condition;
    independent of the reduction code above."""
    rows = [list(map(Fraction, row)) for row in basis.rows]
    n = len(rows)
    ortho: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for i, row in enumerate(rows):
        vec = list(row)
        for j in range(i):
            mu[i][j] = sum(a * b for a, b in zip(row, ortho[j])) / norms[j]
            vec = [a - mu[i][j] * b for a, b in zip(vec, ortho[j])]
        ortho.append(vec)
        norms.append(sum(a * a for a in vec))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True


@dataclass(frozen=True)
class Relation:
    """A verified integer relation: sum_i coefficients[i] * x_i has absolute
    value at most 2**residual_log2 (None marks an exactly zero residual at
    the evaluation precision)."""

    coefficients: tuple[int, ...]
    residual_log2: int | None


@dataclass(frozen=True)
class RelationReport:
    """Outcome of an integer-relation search over a vector of reals."""

    inputs_digest: str
    input_strings: tuple[str, ...]
    relations: tuple[Relation, ...]
    coefficient_bound: int
    precision_bits: int
    empirical_independent_count: int

    def to_json_dict(self) -> dict:
        return {
            "inputs": list(self.input_strings),
            "relations": [
                {
                    "coeffs": list(rel.coefficients),
                    "residual_log2": rel.residual_log2,
                }
                for rel in self.relations
            ],
            "bound": self.coefficient_bound,
            "precision_bits": self.precision_bits,
            "independent_count": self.empirical_independent_count,
        }


def _canonical_value_key(x: mp.mpf) -> str:
    sign, man, exp, _ = x._mpf_
    return f"{'-' if sign else ''}{int(man)}e{int(exp)}"


def _digest(values: Sequence[mp.mpf]) -> str:
    payload = "|".join(_canonical_value_key(v) for v in values)
    return hashlib.sha256(payload.encode()).hexdigest()


def _decimal_strings(values: Sequence[mp.mpf], precision_bits: int) -> tuple[str, ...]:
    digits = max(17, int(precision_bits / 3.3219280948873626))
    return tuple(mp.nstr(v, digits, strip_zeros=False) for v in values)


def _normalize_sign(coeffs: list[int]) -> tuple[int, ...]:
    for c in coeffs:
        if c:
            return tuple(coeffs) if c > 0 else tuple(-x for x in coeffs)
    return tuple(coeffs)


def find_integer_relation(
    values: Sequence[mp.mpf],
    precision_bits: int,
    coefficient_bound: int,
    threshold_log2: int | None = None,
) -> RelationReport:
    """Search for integer vectors c with sum_i c_i * values[i] = 0.

    The standard relation lattice (identity block plus a column of scaled
    values round(2^P x_i), P = precision_bits - 64) is LLL-reduced; short
    rows propose candidates, each candidate is re-evaluated against the
    inputs at full precision, and only verified relations are reported.
    One relation is extracted per reduction pass; found relations are then
    forced orthogonal via a high-weight penalty column and the search
    repeats, so independent relations are enumerated deterministically.

    "No relations" means: no candidate with all |c_i| <= coefficient_bound
    had a verified residual at most 2**threshold_log2 (default threshold:
    RESIDUAL_SLACK_LOG2 + log2(sum|c_i|) - precision_bits).
    """
    require_precision(precision_bits)
    n = len(values)
    if n < 2:
        raise ValueError(f"need at least 2 values, got {n}")
    if coefficient_bound < 1:
        raise ValueError(f"coefficient_bound must be >= 1, got {coefficient_bound}")
    scale_pow = precision_bits - SCALE_GUARD_BITS
    needed = n * math.log2(coefficient_bound) + PRECISION_MARGIN_BITS
    if scale_pow < needed:
        raise ValueError(
            f"precision too low for bound {coefficient_bound} with {n} values: "
            f"need precision_bits >= {math.ceil(needed) + SCALE_GUARD_BITS}, "
            f"got {precision_bits}"
        )

    with mp.workprec(precision_bits + 64):
        vals = [mp.mpf(v) for v in values]
        scaled = [int(mp.nint(mp.ldexp(v, scale_pow))) for v in vals]

        def residual_log2_of(coeffs: Sequence[int]) -> int | None:
            s = mp.fsum(c * v for c, v in zip(coeffs, vals))
            if s == 0:
                return None
            return int(mp.mag(s))

        report_inputs = _decimal_strings(vals, precision_bits)
        digest = _digest(vals)

        penalty = (max(2, n * coefficient_bound) ** 2) << SCALE_GUARD_BITS
        found: list[Relation] = []
        seen: set[tuple[int, ...]] = set()
        while len(found) < n - 1:
            rows = []
            for i in range(n):
                row = [0] * n
                row[i] = 1
                row.append(scaled[i])
                row.extend(penalty * rel.coefficients[i] for rel in found)
                rows.append(tuple(row))
            reduced = lll_reduce(LatticeBasis(tuple(rows)))
            new_rel = None
            for row in reduced.rows:
                coeffs = list(row[:n])
                if not any(coeffs):
                    continue
                if any(row[n + 1 :]):
                    continue  # not orthogonal to already-found relations
                if max(abs(c) for c in coeffs) > coefficient_bound:
                    continue
                normalized = _normalize_sign(coeffs)
                if normalized in seen:
                    continue
                rlog = residual_log2_of(normalized)
                limit = (
                    threshold_log2
                    if threshold_log2 is not None
                    else RESIDUAL_SLACK_LOG2
                    + sum(abs(c) for c in normalized).bit_length()
                    - precision_bits
                )
                if rlog is None or rlog <= limit:
                    new_rel = Relation(normalized, rlog)
                    break
            if new_rel is None:
                break
            seen.add(new_rel.coefficients)
            found.append(new_rel)

    return RelationReport(
        inputs_digest=digest,
        input_strings=report_inputs,
        relations=tuple(found),
        coefficient_bound=coefficient_bound,
        precision_bits=precision_bits,
        empirical_independent_count=n - len(found),
    )


ProbeMode = Literal["full", "plus", "minus"]


def probe_dimension(
    k: int,
    q: int,
    mode: ProbeMode,
    precision_bits: int,
    coefficient_bound: int,
) -> RelationReport:
    """Integer-relation probe of the zeta(k, a/q) value family.

    mode "full" probes the phi(q) raw values; "plus" and "minus" probe the
    phi(q)/2 reflected combinations over the canonical half system.  The
    report's empirical_independent_count is the vector length minus the
    number of verified relations; it is evidence, never a proof.
    """
    if mode not in ("full", "plus", "minus"):
        raise ValueError(f"mode must be full, plus or minus, got {mode!r}")
    bv = basis_values(k, q, precision_bits)
    if mode == "full":
        vector = [bv.raw[a] for a in sorted(bv.raw)]
    elif mode == "plus":
        vector = [bv.plus[a] for a in bv.half_system.representatives]
    else:
        vector = [bv.minus[a] for a in bv.half_system.representatives]
    if len(vector) == 1:
        # a single nonzero real admits no nontrivial relation; zeta values
        # at arguments in (0, 1/2) dominate their reflections, so plus and
        # minus singletons are strictly positive
        with mp.workprec(precision_bits + 64):
            return RelationReport(
                inputs_digest=_digest(vector),
                input_strings=_decimal_strings(vector, precision_bits),
                relations=(),
                coefficient_bound=coefficient_bound,
                precision_bits=precision_bits,
                empirical_independent_count=1,
            )
    return find_integer_relation(vector, precision_bits, coefficient_bound)
