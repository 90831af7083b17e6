from fractions import Fraction
from itertools import product

import pytest

from brwmom import (EnumerationBudgetError, Radical, last_common_level,
                    last_common_level_multi, mom_bruteforce, mom_dp)


class TestLastCommonLevel:
    def test_differ_in_last_bit(self):
        assert last_common_level(0b010, 0b011, 3) == 2

    def test_split_at_root(self):
        assert last_common_level(0b000, 0b111, 3) == 0

    def test_identical_leaves(self):
        assert last_common_level(9, 9, 4) == 4

    def test_label_range_checked(self):
        with pytest.raises(ValueError):
            last_common_level(8, 0, 3)

    def test_multi_three_leaves(self):
        # two leaves sharing the first two levels, third splitting at the
        # root: the deepest common node of all three is the root
        l1, l2, l3 = 0b0000, 0b0011, 0b1000
        assert last_common_level(l1, l2, 4) == 2
        assert last_common_level_multi([l1, l2, l3], 4) == 0

    def test_multi_single_and_identical(self):
        assert last_common_level_multi([5], 3) == 3
        assert last_common_level_multi([5, 5, 5], 3) == 3

    def test_multi_empty_rejected(self):
        with pytest.raises(ValueError):
            last_common_level_multi([], 3)

    def test_multi_equals_min_over_pairs(self):
        depth = 4
        for labels in product(range(4), range(9, 13), range(16)):
            expected = min(last_common_level(a, b, depth)
                           for i, a in enumerate(labels)
                           for b in labels[i + 1:])
            assert last_common_level_multi(labels, depth) == expected


class TestBruteForce:
    def test_two_leaf_hand_count(self):
        # depth 1, k=2: tuples (0,0),(1,1) give 2^4 each, (0,1),(1,0) 2^2
        assert mom_bruteforce(2, 1, 1) == Fraction(2 * 16 + 2 * 4, 4)

    def test_first_moment_pure_growth(self):
        for n in range(4):
            assert mom_bruteforce(1, n, 4) == Fraction(2) ** (4 * n)

    def test_beta_zero(self):
        assert mom_bruteforce(3, 2, 0) == 1

    def test_radical_ring(self):
        v = mom_bruteforce(2, 2, Fraction(1, 2))
        assert v == Radical.rational(2, 8)

    def test_budget_enforced(self):
        with pytest.raises(EnumerationBudgetError):
            mom_bruteforce(3, 6, 1)
        mom_bruteforce(3, 6, 1, budget=18)  # raised budget allows it

    def test_exchangeability(self):
        # tuple order cannot matter: sum over a permuted enumeration agrees
        n, k, beta_sq = 2, 3, 1
        total = Fraction(0)
        for labels in product(range(1 << n), repeat=k):
            perm = tuple(labels[i] for i in (2, 0, 1))
            shared = sum(last_common_level(perm[i], perm[j], n)
                         for i in range(k) for j in range(i + 1, k))
            total += Fraction(2) ** (beta_sq * (k * n + 2 * shared))
        assert total / Fraction(2) ** (k * n) == mom_bruteforce(k, n, beta_sq)

    def test_diagonal_tuples_sum_to_diagonal_term(self):
        # all-equal tuples alone contribute 2^((k^2 b - k + 1) n)
        k, n, b = 3, 2, 1
        diag = sum(Fraction(2) ** (b * (k * n + 2 * 3 * n))
                   for _ in range(1 << n)) / Fraction(2) ** (k * n)
        assert diag == Fraction(2) ** ((k * k * b - k + 1) * n)


class TestOracleAgainstEngine:
    @pytest.mark.parametrize("beta", [1, 2])
    def test_exact_agreement(self, beta):
        for k in (1, 2, 3):
            for n in range(5):
                assert mom_dp(k, n, beta * beta) == \
                    mom_bruteforce(k, n, beta * beta)

    @pytest.mark.parametrize("beta_sq", [0.09, 0.64])
    def test_float_agreement(self, beta_sq):
        for k in (1, 2, 3):
            for n in range(5):
                dp = mom_dp(k, n, beta_sq)
                bf = mom_bruteforce(k, n, beta_sq)
                assert abs(dp - bf) / bf < 1e-10

    def test_higher_order_small_depth(self):
        for k in (4, 5):
            for n in (1, 2, 3):
                if k * n > 16:
                    continue
                assert mom_dp(k, n, 1) == mom_bruteforce(k, n, 1)
