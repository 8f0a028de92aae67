"""g >= g(0) on [5.78/m, pi - 5.78/m] via the lower bound -(m+n)/(m|sin x|+1)."""
from __future__ import annotations

from fractions import Fraction
import logging
import random

import mpmath

from ..interval.core import Interval
from ..interval.elementary import PI, cos_enclosure, sin_enclosure
from ..interval.prover import Sign
from ..model.functions import (PairMN, REDUCTION_SLOPE_MAX, THEOREM_SLOPE_MIN,
                               combination_cofactor, far_lower_bound,
                               g_at_zero, region_threshold, sine_combination)
from ..model.sandwich import CUBIC_LOWER
from .results import StepRecorder, StepResult, ToleranceMode

STEP_ID = "far_region"
REACH = Fraction(578, 100)
IDENTITY_SAMPLES = 16
IDENTITY_DPS = 50

logger = logging.getLogger(__name__)


def corollary_margin(m: int, lam: Fraction = REDUCTION_SLOPE_MAX) -> Fraction:
    """m * (5.78/m - 5.78**3/(6 m**3)) - (1 - lam + lam**2)/(lam (1 - lam)).

    Nonnegative exactly when the endpoint inequality holds at (m, lam).
    """
    lhs = REACH - REACH ** 3 / (6 * m * m)
    rhs = (1 - lam + lam ** 2) / (lam * (1 - lam))
    return lhs - rhs


def _rewrites_deviation(pair: PairMN, x: float) -> mpmath.mpf:
    """Largest gap between the two rewrites and the inequality's left side."""
    (m, n) = (pair.m, pair.n)
    with mpmath.workdps(IDENTITY_DPS):
        x = mpmath.mpf(x)
        s = mpmath.sin(x)
        (snx, smx) = (mpmath.sin(n * x), mpmath.sin(m * x))
        lhs = m * snx - n * smx + snx / s + smx / s
        small = (m + n - (m + 1 / s) * (n * s - snx)
                 - (1 / s - n) * (m * s - smx))
        large = (m + 1 / s) * snx - (n - 1 / s) * smx
        return max(abs(lhs - small), abs(lhs - large)) / (1 + abs(lhs))


def _prove_combination_positive(record: StepRecorder, k: int,
                                label: str) -> None:
    """k sin x - sin kx > 0 on (0, pi), in three pieces."""
    inv_k = Interval.from_rational(Fraction(1, k))
    record.prove(f"{label} cofactor near 0",
                 lambda h: combination_cofactor(k, 1, h)[1],
                 Interval(0.0, inv_k.hi), Sign.POSITIVE)
    record.prove(f"{label} on the middle range",
                 lambda x: sine_combination(k, x),
                 Interval(inv_k.lo, (PI - inv_k).hi), Sign.POSITIVE,
                 derivative=lambda x: (cos_enclosure(x)
                                       - cos_enclosure(x * k)) * k)
    epsilon = 1 if k % 2 == 1 else -1
    record.prove(f"{label} cofactor near pi",
                 lambda h: combination_cofactor(k, epsilon, h)[1],
                 Interval(-inv_k.hi, 0.0), Sign.POSITIVE)


def verify_far_region(pair: PairMN,
                      mode: ToleranceMode = ToleranceMode.PAPER,
                      max_depth: int = 40, seed: int = 0) -> StepResult:
    """Certify the region away from 0 and pi for one pair."""
    record = StepRecorder(STEP_ID, mode, max_depth)
    rng = random.Random(seed)
    worst = max(_rewrites_deviation(pair, rng.uniform(0.01, 3.13))
                for _ in range(IDENTITY_SAMPLES))
    record.check("rewrites of the lower-bound inequality agree",
                 worst < mpmath.mpf(10) ** (10 - IDENTITY_DPS), float(worst))

    _prove_combination_positive(record, pair.n, "n sin x - sin nx")
    _prove_combination_positive(record, pair.m, "m sin x - sin mx")

    threshold = region_threshold(pair)
    record.value("region_threshold", Interval.from_rational(threshold))
    record.exact("region threshold is positive", threshold, Sign.POSITIVE)
    record.exact("region threshold is below 1", 1 - threshold, Sign.POSITIVE)
    edge = Interval.from_rational(REACH / pair.m)
    record.sign("sin(5.78/m) exceeds the region threshold",
                sin_enclosure(edge) - Interval.from_rational(threshold),
                Sign.POSITIVE)
    record.sign("lower bound at 5.78/m exceeds g(0)",
                far_lower_bound(pair, edge)
                - Interval.from_rational(g_at_zero(pair)), Sign.POSITIVE)

    record.sandwich(CUBIC_LOWER)
    lhs = REACH - REACH ** 3 / (6 * pair.m ** 2)
    rhs = corollary_margin(pair.m, REDUCTION_SLOPE_MAX)
    record.value("corollary_lhs_times_m", Interval.from_rational(lhs))
    record.value("corollary_rhs_times_m", Interval.from_rational(lhs - rhs))
    record.exact("corollary endpoint inequality at lambda = 0.82", rhs,
                 Sign.POSITIVE)
    # d/dlam (1 - lam + lam^2)/(lam (1 - lam)) = (2 lam - 1)/(lam (1 - lam))^2
    record.prove("right side increases in lambda",
                 lambda lam: (lam * 2 - 1) / (lam * (1 - lam)).sqr(),
                 Interval(float(THEOREM_SLOPE_MIN),
                          Interval.from_rational(REDUCTION_SLOPE_MAX).hi),
                 Sign.NONNEGATIVE)
    return record.result()
