from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from brwmom import (CRITICAL, SUB, SUPER, ExpPair, Radical, RegimeError,
                    classify_regime, critical_coefficient,
                    leading_coefficient_closed_form,
                    leading_coefficient_numeric, leading_term, mom_symbolic,
                    subcritical_coefficient, supercritical_coefficient,
                    to_mpf)


class TestClassifyRegime:
    def test_exact_critical(self):
        r = classify_regime(4, Fraction(1, 4))
        assert r.tag == CRITICAL
        assert r.growth == ExpPair(0, 1)
        assert r.n_power == 1

    def test_supercritical_exponent(self):
        r = classify_regime(2, 1)
        assert r.tag == SUPER
        assert r.growth == ExpPair(4, -1)

    def test_subcritical_exponent(self):
        r = classify_regime(3, 0.1)
        assert r.tag == SUB
        assert r.growth == ExpPair(3, 0)

    def test_order_one_never_gains_n_factor(self):
        # the first moment is exactly 2^(b n) for every beta, so even on
        # the formal boundary b = 1 the growth stays (1, 0) with no n power
        for bs in (Fraction(1, 2), 1, 2, 0.3):
            r = classify_regime(1, bs)
            assert r.growth == ExpPair(1, 0)
            assert r.n_power == 0

    def test_exact_rational_comparison(self):
        assert classify_regime(3, Fraction(1, 3)).tag == CRITICAL
        assert classify_regime(3, Fraction(33333, 100000)).tag == SUB
        assert classify_regime(3, Fraction(33334, 100000)).tag == SUPER

    def test_boundary_tags_switch_exactly_at_inverse_k(self):
        for k in (2, 3, 4, 5):
            below = Fraction(1, k) - Fraction(1, 10 ** 9)
            above = Fraction(1, k) + Fraction(1, 10 ** 9)
            assert classify_regime(k, below).tag == SUB
            assert classify_regime(k, Fraction(1, k)).tag == CRITICAL
            assert classify_regime(k, above).tag == SUPER


class TestSubcriticalCoefficient:
    def test_order_one_is_unity(self):
        for bs in (0.1, 5, Fraction(1, 2)):
            assert subcritical_coefficient(1, bs) == 1

    def test_worked_value_order_two(self):
        # 1/(2 (1 - 2^(-1/2))) at beta = 0.5
        got = subcritical_coefficient(2, 0.25)
        with mp.workprec(256):
            want = 1 / (2 * (1 - mpmath.mpf(2) ** mpmath.mpf("-0.5")))
        assert abs(got - want) < mpmath.mpf(1e-40)

    def test_against_closed_form_order_three(self):
        got = subcritical_coefficient(3, 0.16)
        ref = leading_coefficient_closed_form(3, 0.16, SUB)
        assert abs(got - ref) / ref < mpmath.mpf(1e-40)

    def test_deep_subcritical_value_order_two(self):
        # at beta = 0.1 the coefficient is 1/(2 (1 - 2^(-0.98)))
        got = subcritical_coefficient(2, Fraction(1, 100))
        with mp.workprec(256):
            want = 1 / (2 * (1 - mpmath.mpf(2) ** (mpmath.mpf("-98") / 100)))
        assert abs(got - want) / want < mpmath.mpf(1e-40)

    def test_regime_enforced(self):
        with pytest.raises(RegimeError):
            subcritical_coefficient(2, 0.5)
        with pytest.raises(RegimeError):
            subcritical_coefficient(3, Fraction(1, 3))

    def test_positive_across_regime(self):
        for k in (2, 3, 4, 5, 6):
            for bs in (0.01, 0.5 / k, 0.95 / k):
                assert subcritical_coefficient(k, bs) > 0


class TestCriticalCoefficient:
    def test_order_two_is_half(self):
        assert critical_coefficient(2) == mpmath.mpf(1) / 2

    def test_order_three_closed_form(self):
        with mp.workprec(256):
            ref = 3 / (mpmath.mpf(2) ** (mpmath.mpf(7) / 3) - 4)
        got = critical_coefficient(3)
        assert abs(got - ref) / ref < mpmath.mpf(1e-40)

    def test_positive_up_to_six(self):
        for k in range(2, 7):
            assert critical_coefficient(k) > 0

    def test_needs_order_two(self):
        with pytest.raises(ValueError):
            critical_coefficient(1)


class TestSupercriticalCoefficient:
    def test_worked_value_order_two(self):
        assert supercritical_coefficient(2, 1) == Fraction(3, 2)

    def test_worked_value_order_three(self):
        assert supercritical_coefficient(3, 1) == 1 + Fraction(186, 840)

    def test_order_four_against_closed_form(self):
        got = to_mpf(supercritical_coefficient(4, 1))
        ref = leading_coefficient_closed_form(4, 1.0, SUPER)
        assert abs(got - ref) / ref < mpmath.mpf(1e-40)

    def test_regime_enforced(self):
        with pytest.raises(RegimeError):
            supercritical_coefficient(2, 0.3)

    def test_interior_critical_points_have_removable_poles(self):
        # after reduction the dominant coefficient stays finite at
        # beta = 1/sqrt(m), m < k; the value must match the numeric ratio
        for k, bs in ((3, Fraction(1, 2)), (4, Fraction(1, 2)),
                      (5, Fraction(1, 4))):
            exact = to_mpf(supercritical_coefficient(k, bs))
            est = leading_coefficient_numeric(k, bs, 16, 32)
            assert abs(exact - est.value) <= 10 * est.error_proxy + \
                mpmath.mpf(1e-30)

    def test_exact_value_at_half_order_three(self):
        assert supercritical_coefficient(3, Fraction(1, 2)) == \
            Radical.rational(2, Fraction(13, 4))

    def test_subleading_exponents_stay_below_diagonal(self):
        # in the super-critical regime every non-dominant exponent grows
        # strictly slower than the dominant one
        for k in (2, 3, 4, 5):
            for bs in (Fraction(11, 10 * k), Fraction(3, k), Fraction(2)):
                lead = ExpPair(k * k, 1 - k).value_at(bs)
                for e, _ in mom_symbolic(k).items():
                    if e != ExpPair(k * k, 1 - k):
                        assert e.value_at(bs) < lead, (k, bs, e)


class TestLeadingCoefficientNumeric:
    def test_critical_ratio_order_two(self):
        est = leading_coefficient_numeric(2, Fraction(1, 2), 20, 40)
        assert abs(est.value - 0.5) < 0.03
        assert est.error_proxy < 0.03

    def test_first_moment_ratio_is_exactly_one(self):
        est = leading_coefficient_numeric(1, 0.49, 5, 15)
        assert est.value == 1
        assert est.error_proxy == 0

    def test_matches_symbolic_extraction(self):
        est = leading_coefficient_numeric(3, 1, 10, 20)
        tau = to_mpf(supercritical_coefficient(3, 1))
        assert abs(est.value - tau) / tau < 1e-3

    def test_error_proxy_shrinks_with_depth(self):
        for k, bs in ((2, 0.09), (3, 1.0), (4, Fraction(1, 4)), (2, 1.0)):
            early = leading_coefficient_numeric(k, bs, 5, 10)
            late = leading_coefficient_numeric(k, bs, 15, 30)
            assert late.error_proxy < early.error_proxy

    def test_depth_order_validated(self):
        with pytest.raises(ValueError):
            leading_coefficient_numeric(2, 0.09, 10, 10)


class TestLeadingTerm:
    def test_methods_by_regime(self):
        assert leading_term(2, 0.09).method == "recursion"
        assert leading_term(2, Fraction(1, 2)).method == "recursion"
        assert leading_term(2, 1).method == "symbolic"
        assert leading_term(1, 0.3).method == "exact"

    def test_coefficient_positive_over_sweep(self):
        for k in (2, 3, 4, 5):
            for i in range(1, 40):
                beta = 0.05 + i * 0.05
                term = leading_term(k, beta * beta)
                assert to_mpf(term.coefficient) > 0, (k, beta)


class TestClosedFormFixtures:
    def test_unsupported_combination(self):
        with pytest.raises(ValueError):
            leading_coefficient_closed_form(4, 0.25, CRITICAL)
        with pytest.raises(ValueError):
            leading_coefficient_closed_form(6, 0.1, SUB)

    def test_order_two_forms(self):
        with mp.workprec(128):
            sub = leading_coefficient_closed_form(2, 0.09, SUB)
            sup = leading_coefficient_closed_form(2, 1.0, SUPER)
        assert abs(sub - 1 / (2 * (1 - 2 ** (2 * 0.09 - 1)))) < 1e-12
        assert abs(sup - 1.5) < 1e-30

    def test_corrections_recorded_exactly(self):
        # the as-printed variants of the k=4 and k=5 super-critical forms
        # miss one cross term each; pin the exact deviations so the
        # erratum stays visible
        from brwmom import RatFun
        one = RatFun.one()

        def t(p, s=1):
            return RatFun.t_power(p, Fraction(s))

        def c(x):
            return RatFun.from_fraction(Fraction(x))

        ext4 = mom_symbolic(4).terms[ExpPair(16, -3)]
        delta4 = c(6) / ((t(8) - c(2)) * (t(10) - c(4)))
        printed4 = ext4 - delta4
        with mp.workprec(256):
            ref = leading_coefficient_closed_form(4, 0.8 ** 2, SUPER)
            t_val = mpmath.mpf(2) ** mpmath.mpf(0.8 ** 2)
            assert abs(ext4.evaluate(t_val) - ref) / ref < mpmath.mpf(1e-40)
            assert abs(printed4.evaluate(t_val) - ref) / ref > mpmath.mpf(1e-7)

        ext5 = mom_symbolic(5).terms[ExpPair(25, -4)]
        delta5 = c(120) / ((t(8) - c(2)) * (t(16) - c(4)) * (t(18) - c(8)))
        with mp.workprec(256):
            ref5 = leading_coefficient_closed_form(5, 0.8 ** 2, SUPER)
            assert abs(ext5.evaluate(t_val) - ref5) / ref5 < mpmath.mpf(1e-40)
            assert abs((ext5 - delta5).evaluate(t_val) - ref5) / ref5 > \
                mpmath.mpf(1e-9)
