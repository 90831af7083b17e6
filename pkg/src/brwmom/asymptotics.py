"""Growth regimes and leading-order coefficients of the moments.

The k-th moment changes growth at k*beta^2 = 1: below it grows like
2^(k*beta^2*n), at it like n*2^n, above like 2^((k^2*beta^2-k+1)*n).
The k = 1 moment is exactly 2^(beta^2*n) and has no transition.

Coefficients come from three routes:

* sub-critical: a binomial-weighted recursion over lower orders,
* critical: the same weighted sum pinned to beta^2 = 1/k,
* super-critical: the coefficient of the dominant exponent in the
  symbolic closed form, which has genuine poles at beta = 1/sqrt(m) for
  m < k; those points fall back to a numeric ratio estimate backed by
  exact ring arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .engine import MomentTable, PoleAtCriticalBeta, mom_symbolic
from .rings import (DEFAULT_PRECISION, Radical, fraction_to_mpf, pow2,
                    resolve_context, to_mpf)
from .symbolic import ExpPair

SUB = "sub-critical"
CRITICAL = "critical"
SUPER = "super-critical"


class RegimeError(ValueError):
    """The requested coefficient is undefined in this regime."""


@dataclass(frozen=True)
class Regime:
    tag: str
    growth: ExpPair
    n_power: int


@dataclass(frozen=True)
class LeadingTerm:
    coefficient: object
    growth: ExpPair
    n_power: int
    method: str


@dataclass(frozen=True)
class RatioEstimate:
    value: mpmath.mpf
    error_proxy: mpmath.mpf
    regime: Regime


def _compare_k_beta_sq(k: int, beta_sq):
    """Sign of k*beta^2 - 1, exact for rational inputs."""
    if isinstance(beta_sq, (int, Fraction)):
        d = k * Fraction(beta_sq) - 1
        return (d > 0) - (d < 0)
    d = k * beta_sq - 1
    return (d > 0) - (d < 0)


def classify_regime(k: int, beta_sq) -> Regime:
    """Trichotomy of k*beta^2 against 1, exact when beta^2 is rational.

    The first moment is special: it grows as 2^(beta^2*n) for every beta,
    so for k = 1 the growth exponent never picks up an n factor even when
    beta^2 = 1 lands on the formal boundary.
    """
    if k < 1:
        raise ValueError("moment order must be positive")
    sign = _compare_k_beta_sq(k, beta_sq)
    if k == 1:
        tag = SUB if sign < 0 else (CRITICAL if sign == 0 else SUPER)
        return Regime(tag=tag, growth=ExpPair(1, 0), n_power=0)
    if sign < 0:
        return Regime(tag=SUB, growth=ExpPair(k, 0), n_power=0)
    if sign == 0:
        return Regime(tag=CRITICAL, growth=ExpPair(0, 1), n_power=1)
    return Regime(tag=SUPER, growth=ExpPair(k * k, 1 - k), n_power=0)


def subcritical_coefficient(k: int, beta_sq,
                            precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Leading coefficient in the regime k*beta^2 < 1.

    Defined by recursion on the moment order: order 1 contributes 1, and
    order k combines all lower splits j | k-j with binomial weights and a
    final division by 2^(k*beta^2) - 2^(k^2*beta^2-k+1), which is positive
    throughout the regime.
    """
    if k < 1:
        raise ValueError("moment order must be positive")
    if k == 1:
        return mpmath.mpf(1)
    if _compare_k_beta_sq(k, beta_sq) >= 0:
        raise RegimeError(f"k*beta^2 >= 1 for k={k}, beta^2={beta_sq}")
    with mp.workprec(precision):
        if isinstance(beta_sq, Fraction):
            x = fraction_to_mpf(beta_sq, precision)
        else:
            x = mpmath.mpf(beta_sq)
        two = mpmath.mpf(2)
        memo = {1: mpmath.mpf(1)}

        def rec(j):
            if j in memo:
                return memo[j]
            pair_sum = mpmath.mpf(0)
            for i in range(1, j):
                pair_sum += (mpmath.binomial(j, i)
                             * two ** (2 * i * x * (i - j))
                             * rec(i) * rec(j - i))
            split_weight = two ** (j * j * x - j) * pair_sum
            memo[j] = split_weight / (two ** (j * x)
                                      - two ** (j * j * x - j + 1))
            return memo[j]

        return rec(k)


def critical_coefficient(k: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Coefficient of n*2^n at the transition point beta^2 = 1/k, k >= 2."""
    if k < 2:
        raise ValueError("critical coefficient needs k >= 2")
    with mp.workprec(precision):
        x = Fraction(1, k)
        two = mpmath.mpf(2)
        total = mpmath.mpf(0)
        for j in range(1, k):
            total += (mpmath.binomial(k, j)
                      * two ** (mpmath.mpf(2 * j * (j - k)) / k)
                      * subcritical_coefficient(j, x, precision)
                      * subcritical_coefficient(k - j, x, precision))
        return total / 2


def supercritical_coefficient(k: int, beta_sq,
                              precision: int = DEFAULT_PRECISION):
    """Leading coefficient in the regime k*beta^2 > 1.

    Extracted as the coefficient of the dominant exponent pair
    (k^2, 1-k) in the symbolic closed form, evaluated at t = 2^(beta^2):
    exact for rational beta^2, mpf otherwise.  Raises PoleAtCriticalBeta
    at beta = 1/sqrt(m) for m < k, where the caller should use
    ``leading_coefficient_numeric``.
    """
    if k < 1:
        raise ValueError("moment order must be positive")
    if k == 1:
        return Fraction(1) if isinstance(beta_sq, (int, Fraction)) else mpmath.mpf(1)
    if _compare_k_beta_sq(k, beta_sq) <= 0:
        raise RegimeError(f"k*beta^2 <= 1 for k={k}, beta^2={beta_sq}")
    coeff = mom_symbolic(k).terms[ExpPair(k * k, 1 - k)]
    if isinstance(beta_sq, Fraction) and beta_sq.denominator == 1:
        beta_sq = int(beta_sq)
    if isinstance(beta_sq, int):
        num, den = coeff.evaluate_parts(pow2(beta_sq))
        if den == 0:
            raise PoleAtCriticalBeta(f"pole at integer beta^2 = {beta_sq}")
        return num / den
    if isinstance(beta_sq, Fraction):
        t = Radical.root_power(beta_sq.denominator, beta_sq.numerator)
        num, den = coeff.evaluate_parts(t)
        if not den:
            raise PoleAtCriticalBeta(f"pole at beta^2 = {beta_sq}")
        return num / den
    with mp.workprec(precision):
        t = mpmath.mpf(2) ** mpmath.mpf(beta_sq)
        num, den = coeff.evaluate_parts(t)
        if abs(den) < mpmath.mpf(2) ** (-(precision // 2)):
            raise PoleAtCriticalBeta(f"pole near beta^2 = {beta_sq}")
        return num / den


def leading_coefficient_numeric(k: int, beta_sq, n_lo: int, n_hi: int,
                                precision: int = DEFAULT_PRECISION) -> RatioEstimate:
    """Ratio estimate of the leading coefficient from finite depths.

    Divides the exact (or high-precision) moment by its classified growth
    term at depths n_lo and n_hi; the spread between the two ratios is the
    reported error proxy.  Rational beta^2 uses exact ring arithmetic, so
    the only rounding is in the final division.
    """
    if not n_hi > n_lo >= 1:
        raise ValueError("need n_hi > n_lo >= 1")
    regime = classify_regime(k, beta_sq)
    if k == 1:
        # First moment equals its growth term identically.
        return RatioEstimate(value=mpmath.mpf(1), error_proxy=mpmath.mpf(0),
                             regime=regime)
    ctx = resolve_context(beta_sq, "auto", precision)
    table = MomentTable.build(k, n_hi, ctx)
    with mp.workprec(precision):
        if isinstance(beta_sq, Fraction):
            x = fraction_to_mpf(beta_sq, precision)
        else:
            x = mpmath.mpf(beta_sq)

        def ratio(n):
            growth = mpmath.mpf(2) ** (regime.growth.value_at(x) * n)
            scale = mpmath.mpf(n) ** regime.n_power
            return to_mpf(table.value(k, n), precision) / (scale * growth)

        lo, hi = ratio(n_lo), ratio(n_hi)
        return RatioEstimate(value=hi, error_proxy=abs(hi - lo), regime=regime)


def leading_term(k: int, beta_sq, precision: int = DEFAULT_PRECISION,
                 n_lo: int = 12, n_hi: int = 24) -> LeadingTerm:
    """Regime, growth exponent, and coefficient with the method that
    produced it: the recursion, symbolic extraction, or, at the poles of
    the symbolic coefficients, the numeric ratio fallback."""
    regime = classify_regime(k, beta_sq)
    if k == 1:
        coeff = Fraction(1) if isinstance(beta_sq, (int, Fraction)) else mpmath.mpf(1)
        return LeadingTerm(coeff, regime.growth, 0, method="exact")
    if regime.tag == SUB:
        value = subcritical_coefficient(k, beta_sq, precision)
        return LeadingTerm(value, regime.growth, 0, method="recursion")
    if regime.tag == CRITICAL:
        value = critical_coefficient(k, precision)
        return LeadingTerm(value, regime.growth, 1, method="recursion")
    try:
        value = supercritical_coefficient(k, beta_sq, precision)
        return LeadingTerm(value, regime.growth, 0, method="symbolic")
    except PoleAtCriticalBeta:
        est = leading_coefficient_numeric(k, beta_sq, n_lo, n_hi, precision)
        return LeadingTerm(est.value, regime.growth, 0, method="numeric")
