"""g-tilde >= g(0) on [0, 2.8/m] and on [2.8/m, 5.78/m]."""
from __future__ import annotations

from fractions import Fraction

from ..interval.core import Interval
from ..interval.prover import Sign
from ..model.functions import PairMN, REDUCTION_SLOPE_MAX, THEOREM_SLOPE_MAX, \
    THEOREM_SLOPE_MIN
from ..model.pi_inequality import F, F_t, F_u, bracket, bracket_d1, \
    bracket_d2
from ..model.sandwich import CUBIC_LOWER, QUADRATIC_UPPER, QUARTIC_LOWER, \
    QUINTIC_UPPER, rational_span
from .results import PaperValue, StepRecorder, StepResult, ToleranceMode

SMALL_STEP_ID = "near_pi_small"
LARGE_STEP_ID = "near_pi_large"
SMALL_REACH = Fraction(28, 10)
LARGE_REACH = Fraction(578, 100)
# Smallest m each reduction is stated for.
SMALL_M_MIN = 3
LARGE_M_MIN = 5

LAMBDA_RANGE = rational_span(THEOREM_SLOPE_MIN, REDUCTION_SLOPE_MAX)
T_RANGE = rational_span(SMALL_REACH, LARGE_REACH)

V_28 = PaperValue("v_28", "1.825", tolerance="1e-3")
V_578 = PaperValue("v_578", "4.9228", tolerance="1e-4")
DP_28 = PaperValue("dp_28", "-1.0076", tolerance="1e-4")
P_28 = PaperValue("p_28", "-1.6873", tolerance="1e-4")


def small_reduced(lam: Fraction, y: Fraction, m: int) -> Fraction:
    """2 - (lam^2/3) y - ((1 - lam^2) m^2/(5! (m^2 - 1))) y^2."""
    return (2 - lam ** 2 * y / 3
            - (1 - lam ** 2) * m * m * y * y / (120 * (m * m - 1)))


def _small_reduced_interval(lam: Interval, y: Interval,
                            u: Interval) -> Interval:
    return (2 - lam.sqr() * y / 3
            - (1 - lam.sqr()) * y.sqr() / ((1 - u) * 120))


def verify_near_pi_small(pair: PairMN,
                         mode: ToleranceMode = ToleranceMode.PAPER,
                         max_depth: int = 40) -> StepResult:
    """Certify g-tilde(x) >= g(0) on [0, 2.8/m] for m >= 3."""
    record = StepRecorder(SMALL_STEP_ID, mode, max_depth)
    record.sandwich(CUBIC_LOWER)
    record.sandwich(QUINTIC_UPPER)
    y_max = SMALL_REACH ** 2
    ys = Interval(0.0, Interval.from_rational(y_max).hi)
    us = Interval(0.0, Interval.from_rational(
        Fraction(1, SMALL_M_MIN ** 2)).hi)

    # 1/3! - y/5! - 1/(3! m^2) decreases in y and increases in m
    for (label, m) in (("m = 3", SMALL_M_MIN), ("pair's m", pair.m)):
        record.exact(f"sandwich denominator positive at y = 2.8^2, {label}",
                     Fraction(1, 6) - y_max / 120 - Fraction(1, 6 * m * m),
                     Sign.POSITIVE)

    worst = small_reduced(REDUCTION_SLOPE_MAX, y_max, SMALL_M_MIN)
    record.value("near_pi_small_worst_case", Interval.from_rational(worst))
    record.exact("reduced inequality at m = 3, y = 2.8^2, lambda = 0.82",
                 worst, Sign.POSITIVE)
    record.exact("reduced inequality at lambda = 0, m = 3, y = 2.8^2",
                 small_reduced(Fraction(0), y_max, SMALL_M_MIN),
                 Sign.POSITIVE)
    # dQ/du = -(1 - lam^2) y^2/(5! (1 - u)^2) with u = 1/m^2
    record.prove("reduced inequality increases in m",
                 lambda lam, y, u: -((1 - lam.sqr()) * y.sqr())
                 / ((1 - u).sqr() * 120),
                 (LAMBDA_RANGE, ys, us), Sign.NONPOSITIVE)
    # dQ/dy = -lam^2/3 - (1 - lam^2) y/(60 (1 - u))
    record.prove("reduced inequality decreases in y",
                 lambda lam, y, u: -(lam.sqr() / 3)
                 - (1 - lam.sqr()) * y / ((1 - u) * 60),
                 (LAMBDA_RANGE, ys, us), Sign.NEGATIVE)
    # dQ/dlam = -2 lam y/3 + 2 lam y^2/(5! (1 - u)) at m = 3, y = 2.8^2
    y_top = Interval.from_rational(y_max)
    u_top = Interval.from_rational(Fraction(1, SMALL_M_MIN ** 2))
    record.prove("reduced inequality decreases in lambda",
                 lambda lam: lam * y_top * (-2) / 3
                 + lam * y_top.sqr() * 2 / ((1 - u_top) * 120),
                 LAMBDA_RANGE, Sign.NEGATIVE)

    lam = Interval.from_rational(pair.lam)
    u = Interval.from_rational(Fraction(1, pair.m ** 2))
    record.prove("reduced inequality at the pair",
                 lambda y: _small_reduced_interval(lam, y, u), ys,
                 Sign.POSITIVE)
    return record.result()


def v_reduced(t: Interval, u: Interval) -> Interval:
    """1 + t - (t - 3pi/2)^2/2 - t^3 u/6, with u = 1/m^2."""
    return bracket(t, u)


def near_pi_large_constants(record: StepRecorder) -> None:
    """The printed values of the m = 5 reduction and of p(t)."""
    u5 = Interval.from_rational(Fraction(1, LARGE_M_MIN ** 2))
    record.expect(V_28, v_reduced(Interval.from_rational(SMALL_REACH), u5))
    record.expect(V_578, v_reduced(Interval.from_rational(LARGE_REACH), u5))
    t0 = Interval.from_rational(SMALL_REACH)
    one = Interval.point(1.0)
    record.expect(DP_28, bracket_d1(t0, one))
    record.expect(P_28, bracket(t0, one))


def verify_near_pi_large(pair: PairMN,
                         mode: ToleranceMode = ToleranceMode.PAPER,
                         max_depth: int = 40) -> StepResult:
    """Certify g-tilde(x) >= g(0) on [2.8/m, 5.78/m].

    The final inequality F(lam, t, 81) >= 0 over the whole parameter range
    is left to the four appendix steps; here it is also proved directly at
    the pair's own lambda and m.
    """
    record = StepRecorder(LARGE_STEP_ID, mode, max_depth)
    near_pi_large_constants(record)
    record.sandwich(QUARTIC_LOWER)
    record.sandwich(QUADRATIC_UPPER)
    record.sandwich(CUBIC_LOWER)

    u5 = Interval(0.0, Interval.from_rational(
        Fraction(1, LARGE_M_MIN ** 2)).hi)
    record.prove("v'' < 0", lambda t, u: bracket_d2(t, u), (T_RANGE, u5),
                 Sign.NEGATIVE)
    record.prove("v increases in m", lambda t: -(t ** 3) / 6, T_RANGE,
                 Sign.NEGATIVE)
    u_edge = Interval.from_rational(Fraction(1, LARGE_M_MIN ** 2))
    for (name, t) in (("v(2.8) > 0", SMALL_REACH),
                      ("v(5.78) > 0", LARGE_REACH)):
        record.sign(name, v_reduced(Interval.from_rational(t), u_edge),
                    Sign.POSITIVE)

    one = Interval.point(1.0)
    t0 = Interval.from_rational(SMALL_REACH)
    record.prove("p'' < 0", lambda t: -t - 1, T_RANGE, Sign.NEGATIVE)
    record.sign("p'(2.8) < 0", bracket_d1(t0, one), Sign.NEGATIVE)
    record.sign("p(2.8) < 0", bracket(t0, one), Sign.NEGATIVE)
    record.prove("p < 0 on [2.8, 5.78]", lambda t: bracket(t, one), T_RANGE,
                 Sign.NEGATIVE)
    u81 = Interval(0.0, Interval.from_rational(Fraction(1, 81 ** 2)).hi)
    record.prove("F increases in m",
                 lambda lam, t, u: F_u(lam, t, u),
                 (rational_span(THEOREM_SLOPE_MIN, THEOREM_SLOPE_MAX),
                  T_RANGE, u81), Sign.NEGATIVE)

    lam = Interval.from_rational(pair.lam)
    record.prove("F > 0 at the pair's lambda and m",
                 lambda t: F(lam, t, pair.m), T_RANGE, Sign.POSITIVE,
                 derivative=lambda t: F_t(lam, t, pair.m))
    return record.result()
