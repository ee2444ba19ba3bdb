from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ggtau.exact import (Interval, Laurent, bracket_e, bracket_ln,
                         bracket_log_base, bracket_sqrt, gaussian_binomial,
                         laurent_pochhammer, series_exp, series_inv,
                         series_mul)

E_REF = Fraction(27182818284590452353602874713526624977572, 10 ** 40)
LN2_REF = Fraction(6931471805599453094172321214581765680755, 10 ** 40)


def frac_coeffs(draw_ints):
    return {e: Fraction(c) for e, c in draw_ints.items()}


laurents = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=6).map(
    lambda d: Laurent("t", frac_coeffs(d)))


class TestLaurent:
    def test_basic_arithmetic(self):
        t = Laurent.gen("t")
        one = Laurent.const("t", 1)
        assert (one - t) * (one + t) == one - t * t
        assert (t ** 3).coeffs == {3: 1}
        assert (t ** -2).coeffs == {-2: 1}

    def test_exact_division_round_trip(self):
        t = Laurent.gen("t")
        a = (1 - t) * (1 + t + t ** 2) * Laurent("t", {-2: 3})
        b = 1 - t
        assert a.exact_div(b) * b == a

    def test_inexact_division_raises(self):
        t = Laurent.gen("t")
        with pytest.raises(ValueError):
            (1 + t).exact_div(1 - t)

    def test_subs_recip_involution(self):
        a = Laurent("t", {-1: 2, 0: 1, 3: -5})
        assert a.subs_recip().subs_recip() == a

    @given(laurents, laurents)
    def test_mul_commutes(self, a, b):
        assert a * b == b * a

    @given(laurents, laurents, laurents)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    def test_nested_coefficients(self):
        y = Laurent.gen("y")
        a = Laurent("t", {0: y, 1: y + 1})
        b = a * a
        assert b.coeffs[0] == y * y
        assert b.coeffs[2] == (y + 1) * (y + 1)


class TestGaussianBinomial:
    def test_small_values(self):
        t = Laurent.gen("t")
        assert gaussian_binomial(2, 1) == 1 + t
        assert gaussian_binomial(4, 2) == (1 + t + t ** 2) * (1 + t ** 2)
        assert gaussian_binomial(3, 0) == 1
        assert gaussian_binomial(3, 4) == 0

    def test_symmetry(self):
        for n in range(8):
            for m in range(n + 1):
                assert gaussian_binomial(n, m) == gaussian_binomial(n, n - m)

    def test_counts_subspaces(self):
        # at t = q, counts m-dim subspaces of F_q^n
        assert gaussian_binomial(4, 2).evaluate(2) == 35
        assert gaussian_binomial(3, 1).evaluate(3) == 13


class TestPochhammer:
    def test_matches_product(self):
        p = laurent_pochhammer(3, "q")
        q = Laurent.gen("q")
        expect = (1 - q ** -1) * (1 - q ** -2) * (1 - q ** -3)
        assert p == expect


class TestInterval:
    def test_arithmetic(self):
        a = Interval(Fraction(1, 2), Fraction(3, 4))
        b = Interval(Fraction(-1), Fraction(2))
        assert (a + b).lo == Fraction(-1, 2)
        assert (a * b).lo == Fraction(-3, 4)
        assert (a * b).hi == Fraction(3, 2)
        assert a.contains(Fraction(2, 3))

    def test_division_through_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            Interval(1, 2) / Interval(-1, 1)


class TestBrackets:
    def test_e(self):
        iv = bracket_e()
        assert iv.lo <= E_REF + Fraction(1, 10 ** 20)
        assert iv.hi >= E_REF - Fraction(1, 10 ** 20)
        assert iv.width() < Fraction(1, 10 ** 20)

    def test_ln(self):
        iv = bracket_ln(2)
        assert iv.lo <= LN2_REF + Fraction(1, 10 ** 38)
        assert iv.hi >= LN2_REF - Fraction(1, 10 ** 38)
        assert bracket_ln(Fraction(1, 2)).hi < 0

    def test_sqrt(self):
        for x in (Fraction(2), Fraction(3, 7), Fraction(10)):
            iv = bracket_sqrt(x)
            assert iv.lo ** 2 <= x <= iv.hi ** 2
            assert iv.width() < Fraction(1, 2 ** 60)

    def test_log_base_exact_cases(self):
        assert bracket_log_base(2, 2).contains(1)
        assert bracket_log_base(8, 2).contains(3)
        assert bracket_log_base(9, 3).contains(2)


class TestSeries:
    def test_inv_round_trip(self):
        a = [Fraction(1), Fraction(2), Fraction(-1), Fraction(5)]
        inv = series_inv(a, 8)
        prod = series_mul(a, inv, 8)
        assert prod[0] == 1 and all(c == 0 for c in prod[1:])

    def test_exp_of_log_of_geometric(self):
        # exp(sum x^k/k) = 1/(1-x)
        T = 10
        log_series = [Fraction(0)] + [Fraction(1, k) for k in range(1, T + 1)]
        assert series_exp(log_series, T) == [Fraction(1)] * (T + 1)
