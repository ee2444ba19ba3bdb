import random

import pytest

from ggtau.ffpoly import (MonicPoly, conjugate_poly, count_irreducibles,
                          factor_monic, field, format_poly,
                          irreducible_count_identity_ok,
                          irreducibles_of_degree, is_irreducible,
                          is_self_conjugate, parse_poly)

ALL_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


class TestField:
    @pytest.mark.parametrize("q", ALL_Q)
    def test_axioms_exhaustive(self, q):
        F = field(q)
        for a in range(q):
            for b in range(q):
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)
                for c in range(q):
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        for a in range(q):
            assert F.add(a, 0) == a and F.mul(a, 1) == a
            assert F.add(a, F.neg(a)) == 0
        for a in range(1, q):
            assert F.mul(a, F.inv(a)) == 1

    def test_cap(self):
        with pytest.raises(ValueError):
            field(17)
        with pytest.raises(ValueError):
            field(6)

    def test_primitive_element(self):
        for q in (3, 4, 5, 8, 9):
            F = field(q)
            g = F.primitive_element()
            powers = {F.pow(g, e) for e in range(q - 1)}
            assert len(powers) == q - 1


class TestFactorization:
    def test_linear_split(self):
        F2 = field(2)
        f = MonicPoly(F2, (0, 1, 1))  # z^2 + z
        assert factor_monic(f) == {MonicPoly(F2, (0, 1)): 1,
                                   MonicPoly(F2, (1, 1)): 1}

    def test_irreducible_quadratic(self):
        F2 = field(2)
        f = MonicPoly(F2, (1, 1, 1))
        assert factor_monic(f) == {f: 1}

    def test_square_of_quadratic(self):
        F2 = field(2)
        f = MonicPoly(F2, (1, 0, 1, 0, 1))  # z^4 + z^2 + 1
        assert factor_monic(f) == {MonicPoly(F2, (1, 1, 1)): 2}

    @pytest.mark.parametrize("q,deg,exhaustive", [
        (2, 6, True), (3, 4, True), (4, 3, True), (5, 3, True),
        (3, 6, False), (4, 5, False), (5, 5, False),
        (7, 4, False), (8, 4, False), (9, 4, False),
    ])
    def test_round_trip(self, q, deg, exhaustive):
        F = field(q)
        rng = random.Random(q * 100 + deg)

        def candidates():
            if exhaustive:
                for idx in range(q ** deg):
                    coeffs = []
                    m = idx
                    for _ in range(deg):
                        coeffs.append(m % q)
                        m //= q
                    yield MonicPoly(F, coeffs + [1])
            else:
                for _ in range(150):
                    yield MonicPoly(F, [rng.randrange(q) for _ in range(deg)] + [1])

        for f in candidates():
            fac = factor_monic(f)
            prod = MonicPoly(F, (1,))
            for g, mult in fac.items():
                assert is_irreducible(g), (f, g)
                prod = prod * g ** mult
            assert prod == f

    def test_ddf_equals_trial_division(self):
        rng = random.Random(99)
        for q in (2, 3, 4):
            F = field(q)
            for _ in range(60):
                deg = rng.randrange(1, 7)
                f = MonicPoly(F, [rng.randrange(q) for _ in range(deg)] + [1])
                assert factor_monic(f, "ddf") == factor_monic(f, "trial"), f

    def test_rejects_constants(self):
        with pytest.raises(ValueError):
            factor_monic(MonicPoly(field(2), (1,)))


class TestIrreducibles:
    def test_degree_one(self):
        assert [p.coeffs for p in irreducibles_of_degree(2, 1)] == [(1, 1)]
        assert count_irreducibles(3, 1) == 2
        assert count_irreducibles(5, 1) == 4

    def test_degree_two_over_f2(self):
        assert [p.coeffs for p in irreducibles_of_degree(2, 2)] == [(1, 1, 1)]

    def test_counts_match_necklace_values(self):
        # N(q, d) for d >= 2 equals the usual irreducible count
        assert count_irreducibles(2, 3) == 2
        assert count_irreducibles(2, 4) == 3
        assert count_irreducibles(3, 2) == 3
        assert count_irreducibles(3, 3) == 8
        assert count_irreducibles(4, 2) == 6

    @pytest.mark.parametrize("q", (2, 3, 4, 5))
    def test_generating_identity(self, q):
        assert irreducible_count_identity_ok(q, 10)

    def test_canonical_order(self):
        polys = irreducibles_of_degree(3, 2)
        assert list(polys) == sorted(polys)


class TestConjugation:
    def test_fixed_points(self):
        F2 = field(2)
        assert conjugate_poly(MonicPoly(F2, (1, 1))) == MonicPoly(F2, (1, 1))
        assert is_self_conjugate(MonicPoly(F2, (1, 1, 1)))

    def test_inverse_root(self):
        F5 = field(5)
        z_minus_2 = MonicPoly(F5, (F5.neg(2), 1))
        z_minus_3 = MonicPoly(F5, (F5.neg(3), 1))
        assert conjugate_poly(z_minus_2) == z_minus_3

    def test_involution_on_all_small_irreducibles(self):
        for q in (2, 3, 4, 5):
            for d in range(1, 5):
                for phi in irreducibles_of_degree(q, d):
                    assert conjugate_poly(conjugate_poly(phi)) == phi

    def test_roots_invert_in_splitting_field(self):
        # phi of degree k splits over F_(q^k); conjugate vanishes on inverses
        for (q, d) in ((2, 2), (3, 2), (2, 4)):
            big = field(q ** d)
            # subfield embedding: prime fields embed as 0..p-1 scalars
            for phi in irreducibles_of_degree(q, d):
                if q != big.p:
                    continue
                bar = conjugate_poly(phi)
                lifted = MonicPoly(big, phi.coeffs)
                lifted_bar = MonicPoly(big, bar.coeffs)
                roots = [x for x in range(1, big.q) if lifted(x) == 0]
                assert len(roots) == d
                for r in roots:
                    assert lifted_bar(big.inv(r)) == 0

    def test_self_conjugate_even_degree(self):
        cases = [(2, 6), (3, 6), (4, 4), (5, 4)]
        for q, dmax in cases:
            for d in range(2, dmax + 1):
                for phi in irreducibles_of_degree(q, d):
                    if is_self_conjugate(phi):
                        assert d % 2 == 0, (q, phi)

    def test_zero_constant_rejected(self):
        with pytest.raises(ValueError):
            conjugate_poly(MonicPoly(field(2), (0, 1)))


class TestSerialization:
    def test_round_trip(self):
        for q in (2, 3, 4, 9):
            for d in (1, 2, 3):
                for phi in irreducibles_of_degree(q, d):
                    assert parse_poly(format_poly(phi)) == phi

    def test_example_literal(self):
        assert format_poly(MonicPoly(field(2), (1, 1, 1))) == "GF(2):1,1,1"
