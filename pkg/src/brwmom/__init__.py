"""Moments of the partition function of a Gaussian branching random walk.

Exact, symbolic, and stochastic computation of the k-th moments of
Z_n = 2^(-n) * sum over leaves of exp(2*beta*X_n(leaf)) on the depth-n
binary tree, together with their growth-regime asymptotics and the
finite-N comparison against random-unitary characteristic polynomials.
"""

from .asymptotics import (CRITICAL, SUB, SUPER, LeadingTerm, RatioEstimate,
                          Regime, RegimeError, classify_regime,
                          critical_coefficient, leading_coefficient_numeric,
                          leading_term, subcritical_coefficient,
                          supercritical_coefficient)
from .closed_forms import leading_coefficient_closed_form
from .engine import (MomentTable, MomPolynomial, PoleAtCriticalBeta,
                     evaluate_genpoly, mom_dp, mom_polynomial, mom_symbolic)
from .montecarlo import (MomentEstimate, SimConfig, estimate_mom,
                         sample_partition_function)
from .oracle import (EnumerationBudgetError, last_common_level,
                     last_common_level_multi, mom_bruteforce)
from .rings import (DEFAULT_PRECISION, BigRat, FloatContext, Radical,
                    RadicalContext, RationalContext, RingMismatchError,
                    resolve_context, to_mpf)
from .rmt import (GrowthComparison, UnitaryMoment, growth_exponent_compare,
                  unitary_mom_k1, unitary_mom_k1_integer)
from .symbolic import (DegenerateExponent, ExpPair, GenPoly, RatFun,
                       geometric_sum, weighted_geometric_sum)

__version__ = "0.1.0"

__all__ = [
    "BigRat", "Radical", "RationalContext", "RadicalContext", "FloatContext",
    "RingMismatchError", "DEFAULT_PRECISION", "resolve_context", "to_mpf",
    "ExpPair", "RatFun", "GenPoly", "DegenerateExponent",
    "geometric_sum", "weighted_geometric_sum",
    "MomentTable", "MomPolynomial", "PoleAtCriticalBeta",
    "mom_dp", "mom_symbolic", "evaluate_genpoly", "mom_polynomial",
    "Regime", "RegimeError", "LeadingTerm", "RatioEstimate",
    "SUB", "CRITICAL", "SUPER", "classify_regime",
    "subcritical_coefficient", "critical_coefficient",
    "supercritical_coefficient", "leading_coefficient_numeric",
    "leading_term", "leading_coefficient_closed_form",
    "EnumerationBudgetError", "last_common_level", "last_common_level_multi",
    "mom_bruteforce",
    "SimConfig", "MomentEstimate", "sample_partition_function",
    "estimate_mom",
    "UnitaryMoment", "GrowthComparison", "unitary_mom_k1",
    "unitary_mom_k1_integer", "growth_exponent_compare",
    "__version__",
]
