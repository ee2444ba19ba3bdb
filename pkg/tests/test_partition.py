from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ggtau.exact import Laurent
from ggtau.partition import (Partition, c_poly, dominance_leq,
                             enumerate_partitions, format_partition,
                             horizontal_strip_subs, parse_partition,
                             partition_stats, partitions_up_to,
                             vertical_strip_covers)

partitions = st.integers(0, 9).flatmap(
    lambda n: st.sampled_from(list(enumerate_partitions(n)) or [Partition()]))


class TestStats:
    def test_paper_diagram_example(self):
        st_ = partition_stats(Partition((5, 4, 4, 1)))
        assert st_.dual == Partition((4, 3, 3, 3, 1))
        assert st_.n == 15
        assert st_.odd == 2
        assert st_.length == 4
        assert st_.size == 14

    def test_empty(self):
        st_ = partition_stats(Partition())
        assert st_.dual == Partition() and st_.n == 0 and st_.size == 0

    def test_two_two(self):
        st_ = partition_stats(Partition((2, 2)))
        assert st_.dual == Partition((2, 2)) and st_.n == 2 and st_.odd == 0

    @given(partitions)
    def test_double_dual(self, lam):
        assert lam.dual().dual() == lam

    @given(partitions)
    def test_n_stat_two_forms(self, lam):
        from math import comb

        by_dual = sum(comb(c, 2) for c in lam.dual().parts)
        assert lam.n_stat() == by_dual

    @given(partitions)
    def test_odd_size_parity(self, lam):
        assert (lam.odd_parts() - lam.size) % 2 == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))


class TestCPoly:
    def test_examples(self):
        t = Laurent.gen("t")
        one = Laurent.const("t", Fraction(1))
        assert c_poly(Partition()) == one
        assert c_poly(Partition((1,))) == one - t
        assert c_poly(Partition((1, 1, 1))) == (one - t) * (one - t ** 3)

    def test_value_at_zero_is_one(self):
        for lam in partitions_up_to(10):
            assert c_poly(lam).coeffs.get(0) == 1

    def test_degree_bounded(self):
        # one factor (1 - t^(l+1)) per row, each leg below l(lam)
        for lam in partitions_up_to(8):
            ell = lam.length
            bound = ell * (ell + 1) // 2
            assert c_poly(lam).max_exp() <= bound


class TestEnumeration:
    def test_counts(self):
        assert len(list(enumerate_partitions(0))) == 1
        assert len(list(enumerate_partitions(5))) == 7
        assert len(list(enumerate_partitions(10))) == 42

    def test_constraint_examples(self):
        got = {l.parts for l in enumerate_partitions(4, "even-parts-even-mult")}
        assert got == {(1, 1, 1, 1), (2, 2), (3, 1)}
        assert list(enumerate_partitions(3, "odd-parts-even-mult")) == []
        got = {l.parts for l in enumerate_partitions(4, "odd-parts-even-mult")}
        assert got == {(1, 1, 1, 1), (2, 2), (4,), (2, 1, 1)}
        got = {l.parts for l in enumerate_partitions(6, "all-parts-even")}
        assert got == {(6,), (4, 2), (2, 2, 2)}

    def test_reverse_lex_order(self):
        got = [l.parts for l in enumerate_partitions(4)]
        assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_dual_is_permutation(self):
        for n in range(9):
            all_parts = {l.parts for l in enumerate_partitions(n)}
            assert {l.dual().parts for l in enumerate_partitions(n)} == all_parts

    def test_unknown_constraint(self):
        with pytest.raises(ValueError):
            list(enumerate_partitions(3, "bogus"))


class TestStrips:
    def test_vertical_examples(self):
        got = {l.parts for l in vertical_strip_covers(Partition((2, 1)), 1)}
        assert got == {(3, 1), (2, 2), (2, 1, 1)}
        assert [l.parts for l in vertical_strip_covers(Partition((2, 1)), 0)] \
            == [(2, 1)]
        assert {l.parts for l in vertical_strip_covers(Partition(), 3)} \
            == {(1, 1, 1)}

    @given(partitions, st.integers(0, 3))
    def test_vertical_strip_characterization(self, mu, r):
        for lam in vertical_strip_covers(mu, r):
            assert lam.size == mu.size + r
            assert lam.contains(mu)
            for i in range(1, lam.length + 1):
                assert lam.part(i) - mu.part(i) in (0, 1)

    @given(partitions)
    def test_horizontal_strips_interleave(self, lam):
        subs = horizontal_strip_subs(lam)
        assert lam in subs
        for mu in subs:
            for i in range(1, lam.length + 1):
                assert lam.part(i) >= mu.part(i) >= lam.part(i + 1)


class TestDominance:
    def test_extremes(self):
        lams = list(enumerate_partitions(6))
        top = Partition((6,))
        bottom = Partition((1,) * 6)
        for lam in lams:
            assert dominance_leq(lam, top)
            assert dominance_leq(bottom, lam)

    def test_incomparable(self):
        assert not dominance_leq(Partition((3, 1, 1, 1)), Partition((2, 2, 2)))
        assert not dominance_leq(Partition((2, 2, 2)), Partition((3, 1, 1, 1)))


class TestSerialization:
    @given(partitions)
    def test_round_trip(self, lam):
        assert parse_partition(format_partition(lam)) == lam

    def test_literals(self):
        assert format_partition(Partition((5, 4, 4, 1))) == "[5,4,4,1]"
        assert parse_partition("[]") == Partition()
