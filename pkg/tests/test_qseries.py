from fractions import Fraction

import pytest

from ggtau.exact import Laurent
from ggtau.qseries import (np0_lower_bound, pentagonal_bounds, q_binomial,
                           q_pochhammer, qs1_qs3_reindex_ok, qsum_sides,
                           verify_qsum)


class TestPochhammer:
    def test_examples(self):
        assert q_pochhammer(0, 2) == 1
        assert q_pochhammer(2, 2) == Fraction(3, 8)
        assert q_pochhammer(1, Fraction(3, 2)) == Fraction(1, 3)

    def test_qbinomial(self):
        assert q_binomial(2, 1, 2) == 3
        assert q_binomial(4, 2, 2) == 35
        assert q_binomial(3, 1, Fraction(1, 2)) == Fraction(7, 4)

    def test_qbinomial_symbolic_shape(self):
        # (q^2-1)/(q-1) = q + 1 at several points
        for q in (2, 3, 5, Fraction(7, 2)):
            assert q_binomial(2, 1, q) == q + 1

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            q_pochhammer(-1, 2)
        with pytest.raises(ValueError):
            q_binomial(2, 3, 2)


class TestAlternatingSums:
    def test_qs1_at_one(self):
        lhs, rhs = qsum_sides("qs1", 1)
        q = Laurent.gen("q")
        assert lhs == q - 1 and rhs == q - 1

    def test_qs2_small_values(self):
        lhs, rhs = qsum_sides("qs2", 2)
        q = Laurent.gen("q")
        assert lhs == 1 - q ** -1 and rhs == 1 - q ** -1
        lhs, rhs = qsum_sides("qs2", 3)
        assert lhs == 0 and rhs == 0

    @pytest.mark.parametrize("kind", ("qs1", "qs2", "qs3"))
    def test_symbolic_up_to_twelve(self, kind):
        report = verify_qsum(kind, 12)
        assert report.ok, report.failures

    def test_reindexing_relation(self):
        assert qs1_qs3_reindex_ok(8)

    def test_euler_truncated(self):
        report = verify_qsum("euler", 12)
        assert report.ok, report.failures[:1]

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            verify_qsum("nope", 3)


class TestPentagonal:
    def test_q2_certified(self):
        rep = pentagonal_bounds(2, 40)
        assert rep.certified
        assert Fraction(2887, 10 ** 4) < rep.product.lo
        assert rep.product.hi < Fraction(2888, 10 ** 4)

    def test_np0_instances(self):
        for q in (2, 3, 4, 5, 9):
            assert np0_lower_bound(q)

    def test_q10_tightness(self):
        rep = pentagonal_bounds(10, 40)
        assert rep.certified
        assert rep.product.lo - rep.lower < Fraction(1, 10 ** 4)

    def test_threshold(self):
        with pytest.raises(ValueError):
            pentagonal_bounds(1, 10)
        # rational q below 2 but above sqrt(2) is accepted
        rep = pentagonal_bounds(Fraction(3, 2), 60)
        assert rep.product.lo < rep.upper
