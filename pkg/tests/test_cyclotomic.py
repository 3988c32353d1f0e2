from fractions import Fraction
from math import gcd

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaspan.arith import coprime_residues, euler_phi
from zetaspan.cyclotomic import (
    CyclotomicElement,
    cyclotomic_polynomial,
    element,
    element_from_text,
    element_to_text,
    embed_numeric,
    galois_apply,
    i_cot_element,
    is_in_subfield,
    one,
    rational_element,
    zero,
    zeta,
)

from oracles import cyclotomic_by_moebius


def tol(log2_bound: int) -> mp.mpf:
    return mp.ldexp(1, log2_bound)


# small random elements; conductors kept modest so tests stay quick
conductors = st.integers(min_value=1, max_value=13)


@st.composite
def elements(draw, conductor=None):
    q = conductor if conductor is not None else draw(conductors)
    n = euler_phi(q)
    numerators = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    denominator = draw(st.integers(1, 7))
    return element(q, [Fraction(c, denominator) for c in numerators])


class TestCyclotomicPolynomial:
    def test_q1(self):
        assert cyclotomic_polynomial(1) == (-1, 1)

    def test_q4(self):
        assert cyclotomic_polynomial(4) == (1, 0, 1)

    def test_q6(self):
        assert cyclotomic_polynomial(6) == (1, -1, 1)

    @pytest.mark.parametrize("q", list(range(1, 41)))
    def test_moebius_oracle(self, q):
        poly = cyclotomic_polynomial(q)
        assert poly == cyclotomic_by_moebius(q)
        assert len(poly) - 1 == euler_phi(q)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            cyclotomic_polynomial(0)


class TestFieldOps:
    def test_zeta4_squares_to_minus_one(self):
        z = zeta(4)
        assert (z * z).coeffs == (Fraction(-1), Fraction(0))

    def test_zeta5_inverse(self):
        inv = zeta(5).inverse()
        assert inv == element(5, [-1, -1, -1, -1])
        assert zeta(5) * inv == one(5)

    def test_one_minus_zeta3_inverse(self):
        x = one(3) - zeta(3)
        assert x.inverse() == element(3, [Fraction(2, 3), Fraction(1, 3)])
        assert x * x.inverse() == one(3)

    def test_conductor_mismatch(self):
        with pytest.raises(ValueError):
            zeta(4) + zeta(5)
        with pytest.raises(ValueError):
            zeta(4) * zeta(5)

    def test_invert_zero(self):
        with pytest.raises(ZeroDivisionError):
            zero(7).inverse()

    def test_degenerate_conductors(self):
        assert zeta(1) == one(1)
        assert zeta(2) == rational_element(2, -1)
        assert len(zeta(2).coeffs) == 1

    @given(x=elements())
    @settings(max_examples=80, deadline=None)
    def test_inverse_roundtrip(self, x):
        if x.is_zero():
            return
        assert x * x.inverse() == one(x.conductor)

    @given(x=elements(conductor=12), y=elements(conductor=12))
    @settings(max_examples=40, deadline=None)
    def test_ring_homomorphism_embedding(self, x, y):
        bits = 150
        xr, xi = embed_numeric(x, bits)
        yr, yi = embed_numeric(y, bits)
        pr, pi_ = embed_numeric(x * y, bits)
        with mp.workprec(bits + 64):
            prod = mp.mpc(xr, xi) * mp.mpc(yr, yi)
            scale = 1 + abs(prod)
            assert abs(prod.real - pr) <= scale * tol(10 - bits)
            assert abs(prod.imag - pi_) <= scale * tol(10 - bits)


class TestICotElement:
    def test_quarter_is_zeta4(self):
        assert i_cot_element(1, 4) == zeta(4)

    def test_half_is_zero(self):
        assert i_cot_element(1, 2) == zero(2)

    def test_third(self):
        assert i_cot_element(1, 3) == element(3, [Fraction(1, 3), Fraction(2, 3)])

    def test_embedding_matches_cot(self):
        bits = 200
        for a, q in [(1, 3), (2, 5), (3, 8), (5, 12), (1, 7)]:
            re, im = embed_numeric(i_cot_element(a, q), bits)
            with mp.workprec(bits + 32):
                expected = mp.cot(mp.pi * mp.mpf(a) / q)
                assert abs(re) <= tol(20 - bits)
                assert abs(im - expected) <= (1 + abs(expected)) * tol(20 - bits)

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            i_cot_element(2, 4)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            i_cot_element(0, 4)
        with pytest.raises(ValueError):
            i_cot_element(4, 4)


class TestGalois:
    @given(x=elements())
    @settings(max_examples=40, deadline=None)
    def test_identity(self, x):
        assert galois_apply(x, 1) == x

    def test_conjugation_on_zeta4(self):
        assert galois_apply(zeta(4), 3) == -zeta(4)

    @pytest.mark.parametrize("t,a,q", [(2, 1, 5), (3, 1, 7), (5, 2, 9), (7, 3, 8)])
    def test_commutes_with_i_cot(self, t, a, q):
        assert galois_apply(i_cot_element(a, q), t) == i_cot_element(t * a % q, q)

    @pytest.mark.parametrize("q", [5, 7, 8, 12])
    def test_orbit_of_i_cot(self, q):
        orbit = {galois_apply(i_cot_element(1, q), t) for t in coprime_residues(q)}
        assert orbit == {i_cot_element(a, q) for a in coprime_residues(q)}

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            galois_apply(zeta(6), 2)

    @given(x=elements(conductor=12))
    @settings(max_examples=30, deadline=None)
    def test_conjugation_realness(self, x):
        fixed = x + galois_apply(x, -1)       # fixed by sigma_{-1}
        anti = x - galois_apply(x, -1)        # negated by sigma_{-1}
        assert galois_apply(fixed, -1) == fixed
        bits = 150
        _, im_fixed = embed_numeric(fixed, bits)
        re_anti, _ = embed_numeric(anti, bits)
        scale = 1 + sum(abs(c) for c in x.coeffs)
        assert abs(im_fixed) <= scale * tol(12 - bits)
        assert abs(re_anti) <= scale * tol(12 - bits)


class TestSubfield:
    def test_rational_is_in_q(self):
        assert is_in_subfield(rational_element(12, Fraction(7, 3)), 1)

    def test_real_quadratic_not_rational(self):
        x = zeta(5) + zeta(5) ** -1
        assert not is_in_subfield(x, 1)
        # x satisfies x^2 + x - 1 = 0
        assert x * x + x - 1 == zero(5)

    def test_zeta12_cubed_is_fourth_root(self):
        assert is_in_subfield(zeta(12) ** 3, 4)
        assert not is_in_subfield(zeta(12) ** 3, 3)

    def test_rejects_non_divisor(self):
        with pytest.raises(ValueError):
            is_in_subfield(zeta(12), 5)

    @given(x=elements(conductor=12), d=st.sampled_from([1, 2, 3, 4, 6, 12]))
    @settings(max_examples=40, deadline=None)
    def test_galois_average_lands_in_subfield(self, x, d):
        q = 12
        avg = zero(q)
        for t in range(1, q + 1):
            if gcd(t, q) == 1 and t % d == 1 % d:
                avg = avg + galois_apply(x, t)
        assert is_in_subfield(avg, d)

    @given(x=elements())
    @settings(max_examples=60, deadline=None)
    def test_d1_agrees_with_coefficient_shape(self, x):
        assert is_in_subfield(x, 1) == x.is_rational()


class TestEmbedNumeric:
    def test_rational(self):
        re, im = embed_numeric(rational_element(5, Fraction(1, 2)), 128)
        assert re == mp.mpf("0.5")
        assert im == 0

    def test_zeta4(self):
        re, im = embed_numeric(zeta(4), 128)
        with mp.workprec(160):
            assert abs(re) <= tol(6 - 128)
            assert abs(im - 1) <= tol(6 - 128)

    def test_i_cot_1_3(self):
        re, im = embed_numeric(i_cot_element(1, 3), 200)
        with mp.workprec(260):
            assert abs(re) <= tol(10 - 200)
            assert abs(im - 1 / mp.sqrt(3)) <= tol(10 - 200)


class TestSerialization:
    def test_known_form(self):
        x = element(3, [Fraction(1, 18), Fraction(1, 9)])
        assert element_to_text(x) == "3; 1/18, 1/9"

    def test_integer_coefficients_have_no_denominator(self):
        assert element_to_text(zeta(4)) == "4; 0, 1"

    def test_parse_known(self):
        assert element_from_text("5; 0, 1, 0, 1") == zeta(5) + zeta(5) ** 3

    def test_parse_reduces_long_forms(self):
        assert element_from_text("4; 0, 0, 1") == -one(4)

    @given(x=elements())
    @settings(max_examples=60, deadline=None)
    def test_roundtrip(self, x):
        assert element_from_text(element_to_text(x)) == x

    @pytest.mark.parametrize("text", ["", "4:", "4; a, b", "x; 1", "4; 1/0"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            element_from_text(text)


class TestConstruction:
    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            CyclotomicElement(4, (Fraction(1),))

    def test_element_folds_exponents(self):
        # zeta_4^5 = zeta_4
        assert element(4, [0, 0, 0, 0, 0, 1]) == zeta(4)

    def test_scalar_arithmetic(self):
        z = zeta(8)
        assert (z + 1) - 1 == z
        assert 2 * z == z * 2 == z + z
        assert (z * Fraction(1, 3)) * 3 == z
        assert (1 - z) == -(z - 1)
        assert z / 2 + z / 2 == z
