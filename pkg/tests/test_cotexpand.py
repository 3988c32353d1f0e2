import random
from fractions import Fraction
from math import factorial, gcd

import mpmath as mp
import pytest

from zetaspan.cotexpand import (
    CotDerivativeExpansion,
    evaluate_numeric,
    expand,
    normalized_cyclotomic,
)
from zetaspan.cyclotomic import element, embed_numeric, i_cot_element, one
from zetaspan.precision import pi

from oracles import lattice_sum


def tol(log2_bound: int) -> mp.mpf:
    return mp.ldexp(1, log2_bound)


FROZEN_TABLES = {
    1: {0: 1},
    2: {1: -1},
    3: {1: 2},
    4: {1: -4, 2: -2},
    5: {1: 8, 2: 16},
    6: {1: -16, 2: -88, 3: -16},
}


class TestExpand:
    @pytest.mark.parametrize("k,table", sorted(FROZEN_TABLES.items()))
    def test_frozen_tables(self, k, table):
        assert expand(k).coefficients == table

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            expand(0)
        with pytest.raises(ValueError):
            expand(-3)

    def test_recurrence_closure(self):
        # one differentiation step, re-implemented from scratch
        def step(table, prev_k):
            new = {}
            for l, c in table.items():
                m = prev_k - 2 * l
                if l:
                    new[l] = new.get(l, 0) - 2 * l * c
                if m:
                    new[l + 1] = new.get(l + 1, 0) - m * c
            return {l: c for l, c in new.items() if c}

        table = {0: 1}
        for k in range(2, 31):
            table = step(table, k - 1)
            assert expand(k).coefficients == table

    def test_parity_and_support(self):
        for k in range(1, 41):
            table = expand(k).coefficients
            for l, c in table.items():
                assert c != 0
                assert 0 <= 2 * l <= k
                assert (k - 2 * l) >= 0
            if k >= 2:
                assert 0 not in table
        assert expand(1).coefficients == {0: 1}

    def test_coefficient_growth_bound(self):
        for k in range(1, 51):
            bound = factorial(k - 1) * 2**k
            assert all(abs(c) <= bound for c in expand(k).coefficients.values())

    def test_json_shape(self):
        assert expand(5).to_json_dict() == {"k": 5, "coeffs": {"1": "8", "2": "16"}}


class TestEvaluateNumeric:
    def test_k2_at_half(self):
        value = evaluate_numeric(expand(2), 1, 2, 300)
        with mp.workprec(360):
            assert abs(value + pi(340) ** 2) <= tol(20 - 300)

    def test_k3_at_quarter(self):
        value = evaluate_numeric(expand(3), 1, 4, 300)
        with mp.workprec(360):
            assert abs(value - 4 * pi(340) ** 3) <= tol(20 - 300)

    def test_k1_at_third(self):
        value = evaluate_numeric(expand(1), 1, 3, 300)
        with mp.workprec(360):
            assert abs(value - pi(340) / mp.sqrt(3)) <= tol(20 - 300)

    def test_series_oracle_50_digits(self):
        # D^(k-1)(pi cot pi z) = (-1)^(k-1) (k-1)! sum_n 1/(z+n)^k
        rng = random.Random(20240811)
        bits = 400
        for k in range(2, 13):
            for _ in range(3):
                q = rng.randint(3, 50)
                a = rng.randint(1, q - 1)
                while gcd(a, q) != 1:
                    a = rng.randint(1, q - 1)
                mine = evaluate_numeric(expand(k), a, q, bits)
                reference = lattice_sum(k, Fraction(a, q), 60)
                with mp.workdps(80):
                    expected = (-1) ** (k - 1) * factorial(k - 1) * reference
                    assert abs(mine - expected) <= abs(expected) * mp.mpf(10) ** -50

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            evaluate_numeric(expand(3), 2, 4, 100)


class TestNormalizedCyclotomic:
    def test_k1_is_i_cot(self):
        for a, q in [(1, 3), (1, 4), (2, 5), (3, 8)]:
            assert normalized_cyclotomic(1, a, q) == i_cot_element(a, q)

    def test_k2_at_half_is_one(self):
        assert normalized_cyclotomic(2, 1, 2) == one(2)

    def test_k3_at_quarter(self):
        assert normalized_cyclotomic(3, 1, 4) == element(4, [0, -4])

    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 12])
    def test_normalization_consistency(self, q):
        # embed(w) * pi^k * i^(-k) must equal the numeric evaluation
        bits = 250
        for k in range(1, 10):
            for a in (1, q - 1):
                if gcd(a, q) != 1:
                    continue
                w = normalized_cyclotomic(k, a, q)
                re, im = embed_numeric(w, bits)
                numeric = evaluate_numeric(expand(k), a, q, bits)
                with mp.workprec(bits + 64):
                    lhs = mp.mpc(re, im) * pi(bits + 64) ** k * mp.mpc(0, 1) ** (-k)
                    scale = 1 + abs(numeric)
                    assert abs(lhs.real - numeric) <= scale * tol(24 - bits)
                    assert abs(lhs.imag) <= scale * tol(24 - bits)
