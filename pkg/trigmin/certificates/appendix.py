"""The four m = 81 lemmas that prove F(lam, t) >= 0 over the whole range.

They do not depend on the pair, so each is verified once per process and
cached.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math
import random

from ..interval.core import Interval
from ..interval.elementary import PI, THREE_HALVES_PI, pi_multiple
from ..interval.prover import Sign
from ..model.functions import REDUCTION_SLOPE_MAX, THEOREM_SLOPE_MAX, \
    THEOREM_SLOPE_MIN
from ..model.pi_inequality import (APPENDIX_M, F, F_lam, F_lamlam,
                                   F_lamlamlam, F_t, F_tt, bracket,
                                   inverse_square, mass, quartic)
from ..model.sandwich import rational_span
from .results import PaperValue, StepRecorder, StepResult, ToleranceMode

FLL_STEP_ID = "appendix_Fll"
FL_STEP_ID = "appendix_Fl"
F_HALF_STEP_ID = "appendix_F_half"
F_08194_STEP_ID = "appendix_F_08194"

K81 = Fraction(APPENDIX_M ** 2, APPENDIX_M ** 2 - 1)
T_START = Fraction(28, 10)
T_MIDDLE = Fraction(5)
T_END = Fraction(578, 100)
HALF = Fraction(1, 2)
LAMBDA_RANGE = rational_span(THEOREM_SLOPE_MIN, REDUCTION_SLOPE_MAX)
LOWER_T_RANGE = rational_span(T_START, T_MIDDLE)
UPPER_T_RANGE = rational_span(T_MIDDLE, T_END)
FULL_T_RANGE = rational_span(T_START, T_END)


def _q(value: int | Fraction | str) -> Interval:
    return Interval.from_rational(Fraction(value))


def _u81() -> Interval:
    return inverse_square(APPENDIX_M)


# Lemma on F_lamlam, 2.8 <= t <= 5

FLLL_P_28 = PaperValue("Flll_bound_28", "17.0391")
FLLL_P_5 = PaperValue("Flll_bound_5", "40.5431")
FLLL_CRITICAL = PaperValue("Flll_bound_critical", "4.3101")
FLL_Q_28 = PaperValue("Fll_bound_28", "-1.8447")
FLL_Q_5 = PaperValue("Fll_bound_5", "-4.305")


def flll_lower_bound(t: Interval) -> Interval:
    """-t^3 (0.82 t - 3pi/2) - 6 (1 + 1/6560)(5 + 1)."""
    return (-(t ** 3) * (t * _q(REDUCTION_SLOPE_MAX) - THREE_HALVES_PI)
            - _q(36 * K81))


def fll_upper_bound(t: Interval) -> Interval:
    """t^2 - 4.92 (1 + 1/6560)(t + 1 - (t - 3pi/2)^2/2) + 0.016."""
    return (t.sqr() - _q(Fraction(492, 100) * K81)
            * bracket(t, Interval.point(0.0)) + _q("0.016"))


def _fll_constants(record: StepRecorder) -> None:
    record.expect(FLLL_P_28, flll_lower_bound(_q(T_START)))
    record.expect(FLLL_P_5, flll_lower_bound(_q(T_MIDDLE)))
    record.expect(FLLL_CRITICAL, pi_multiple(Fraction(900, 656)))
    record.expect(FLL_Q_28, fll_upper_bound(_q(T_START)))
    record.expect(FLL_Q_5, fll_upper_bound(_q(T_MIDDLE)))


@lru_cache(maxsize=8)
def verify_appendix_Fll(mode: ToleranceMode = ToleranceMode.PAPER,
                        max_depth: int = 40) -> StepResult:
    """F_lamlam <= 0 for 2.8 <= t <= 5, 0.5 <= lam <= 0.82."""
    record = StepRecorder(FLL_STEP_ID, mode, max_depth)
    _fll_constants(record)
    record.prove("t - t^3/39366 + 1 - (t - 3pi/2)^2/2 <= 6",
                 lambda t: 6 - bracket(t, _u81()), LOWER_T_RANGE,
                 Sign.POSITIVE)
    critical = pi_multiple(Fraction(900, 656))
    record.sign("critical point above 2.8", critical - _q(T_START),
                Sign.POSITIVE)
    record.sign("critical point below 5", _q(T_MIDDLE) - critical,
                Sign.POSITIVE)
    record.sign("lower bound positive at 2.8",
                flll_lower_bound(_q(T_START)), Sign.POSITIVE)
    record.sign("lower bound positive at 5",
                flll_lower_bound(_q(T_MIDDLE)), Sign.POSITIVE)
    record.prove("F_lamlamlam > 0", F_lamlamlam,
                 (LAMBDA_RANGE, LOWER_T_RANGE), Sign.POSITIVE)

    record.exact("dropped t^3 term below 0.016",
                 Fraction("0.016") - Fraction(492, 100) * K81 * T_MIDDLE ** 3
                 / (6 * APPENDIX_M ** 2), Sign.POSITIVE)
    record.exact("upper bound parabola is convex",
                 2 + Fraction(492, 100) * K81, Sign.POSITIVE)
    record.sign("upper bound negative at 2.8", fll_upper_bound(_q(T_START)),
                Sign.NEGATIVE)
    record.sign("upper bound negative at 5", fll_upper_bound(_q(T_MIDDLE)),
                Sign.NEGATIVE)
    record.prove("F_lamlam < 0", F_lamlam, (LAMBDA_RANGE, LOWER_T_RANGE),
                 Sign.NEGATIVE)
    return record.result()


# Lemma on F_lam, 5 <= t <= 5.78

FL_QUARTIC_11 = PaperValue("Fl_quartic_11", "-0.456")
FL_PARABOLA_5 = PaperValue("Fl_parabola_5", "5.9586")
FL_PARABOLA_578 = PaperValue("Fl_parabola_578", "6.2101")
FL_PSI_0028 = PaperValue("Fl_psi_0028", "0.1327")
FL_PSI_M2213 = PaperValue("Fl_psi_m2213", "-1.0165")
FL_PSI_M1375 = PaperValue("Fl_psi_m1375", "-3.1429")
FL_BOUND_1 = PaperValue("Fl_bound_1", "-4.6807")
FL_BOUND_2 = PaperValue("Fl_bound_2", "-0.2385")

EVEN_QUARTIC_EDGE = Fraction(11, 10)
U_LOW = Fraction("-2.213")
U_HIGH = Fraction("0.028")
U_CAP = Fraction("-1.375")
PSI_CAP = Fraction("0.133")
PSI_FLOOR = Fraction("-1.016")
LAMBDA_FLOOR = Fraction("0.815")
H_SMALL = Fraction("6.22")
H_LARGE = Fraction("5.95")


def even_quartic(x: Fraction) -> Fraction:
    return -1 + x ** 2 / 2 - x ** 4 / 24


def psi_u(u: Interval) -> Interval:
    """(u + 3pi/2)(u - u^3/3!)."""
    return (u + THREE_HALVES_PI) * (u - (u ** 3) / 6)


def psi_u_d2(u: Interval) -> Interval:
    return 2 - u * THREE_HALVES_PI - u.sqr() * 2


def fl_first_bound() -> Fraction:
    """0.133 + 0.815 * 5.95 (1 - 3 * 0.815^2)."""
    return PSI_CAP + LAMBDA_FLOOR * H_LARGE * (1 - 3 * LAMBDA_FLOOR ** 2)


def fl_second_bound() -> Fraction:
    """-1.016 + 0.5 * 6.22 (1 - 3 * 0.5^2)."""
    return PSI_FLOOR + HALF * H_SMALL * (1 - 3 * HALF ** 2)


def _fl_constants(record: StepRecorder) -> None:
    record.expect(FL_QUARTIC_11, _q(even_quartic(EVEN_QUARTIC_EDGE)))
    zero = Interval.point(0.0)
    record.expect(FL_PARABOLA_5, bracket(_q(T_MIDDLE), zero))
    record.expect(FL_PARABOLA_578, bracket(_q(T_END), zero))
    record.expect(FL_PSI_0028, psi_u(_q(U_HIGH)))
    record.expect(FL_PSI_M2213, psi_u(_q(U_LOW)))
    record.expect(FL_PSI_M1375, psi_u(_q(U_CAP)))
    record.expect(FL_BOUND_1, _q(fl_first_bound()))
    record.expect(FL_BOUND_2, _q(fl_second_bound()))


@lru_cache(maxsize=8)
def verify_appendix_Fl(mode: ToleranceMode = ToleranceMode.PAPER,
                       max_depth: int = 40) -> StepResult:
    """F_lam <= 0 for 5 <= t <= 5.78, 0.5 <= lam <= 0.82."""
    record = StepRecorder(FL_STEP_ID, mode, max_depth)
    _fl_constants(record)

    # f = s(t) < 0 through the even quartic on [-1.1, 1.1]
    offset = UPPER_T_RANGE - THREE_HALVES_PI
    record.sign("|t - 3pi/2| <= 1.1", _q(EVEN_QUARTIC_EDGE) - abs(offset),
                Sign.POSITIVE)
    record.exact("even quartic is convex on [-1.1, 1.1]",
                 1 - EVEN_QUARTIC_EDGE ** 2 / 2, Sign.POSITIVE)
    record.exact("even quartic negative at 1.1",
                 even_quartic(EVEN_QUARTIC_EDGE), Sign.NEGATIVE)
    record.prove("f < 0 on [5, 5.78]", quartic, UPPER_T_RANGE,
                 Sign.NEGATIVE)

    # h < phi(lam), piecewise in lam around 1/sqrt(3)
    zero = Interval.point(0.0)
    parabola_top = mass(APPENDIX_M) * (PI + 1) * 1.5
    record.value("Fl_parabola_max_bound", parabola_top)
    record.sign("(1 + 1/6560) 3(1 + pi)/2 < 6.22", _q(H_SMALL) - parabola_top,
                Sign.POSITIVE)
    for (name, t) in (("parabola above 5.9585 at 5", T_MIDDLE),
                      ("parabola above 5.9585 at 5.78", T_END)):
        record.sign(name, bracket(_q(t), zero) - _q("5.9585"),
                    Sign.POSITIVE)
    record.prove("p(t) - t^3/39366 > 5.95 on [5, 5.78]",
                 lambda t: bracket(t, _u81()) - _q(H_LARGE), UPPER_T_RANGE,
                 Sign.POSITIVE)

    # psi(u) with u = lam t - 3pi/2
    record.sign("u range starts above -2.213",
                _q(HALF * T_MIDDLE) - THREE_HALVES_PI - _q(U_LOW),
                Sign.POSITIVE)
    record.sign("u range ends below 0.028",
                _q(U_HIGH) - (_q(REDUCTION_SLOPE_MAX * T_END)
                              - THREE_HALVES_PI), Sign.POSITIVE)
    record.prove("psi'' > 0 on [-2.213, 0.028]", psi_u_d2,
                 Interval(_q(U_LOW).lo, _q(U_HIGH).hi), Sign.POSITIVE)
    record.sign("psi(-2.213) < 0", psi_u(_q(U_LOW)), Sign.NEGATIVE)
    record.sign("psi(0.028) < 0.133", _q(PSI_CAP) - psi_u(_q(U_HIGH)),
                Sign.POSITIVE)
    record.value("Fl_lambda_floor", THREE_HALVES_PI / _q(T_END))
    record.sign("3pi/(2 * 5.78) > 0.815",
                THREE_HALVES_PI / _q(T_END) - _q(LAMBDA_FLOOR), Sign.POSITIVE)
    record.prove("lam (1 - 3 lam^2) decreases", lambda lam: 1 - lam.sqr() * 9,
                 LAMBDA_RANGE, Sign.NEGATIVE)
    record.exact("bound when psi(u) > 0", fl_first_bound(), Sign.NEGATIVE)

    # lam < 1/sqrt(3): u <= 5.78/sqrt(3) - 3pi/2 < -1.375
    record.sign("3pi/2 - 1.375 > 0", THREE_HALVES_PI - _q(-U_CAP),
                Sign.POSITIVE)
    record.sign("(3pi/2 - 1.375)^2 > 5.78^2/3",
                (THREE_HALVES_PI - _q(-U_CAP)).sqr() - _q(T_END ** 2 / 3),
                Sign.POSITIVE)
    record.sign("psi(-1.375) < psi(-2.213)",
                psi_u(_q(U_LOW)) - psi_u(_q(U_CAP)), Sign.POSITIVE)
    record.sign("psi(-2.213) < -1.016", _q(PSI_FLOOR) - psi_u(_q(U_LOW)),
                Sign.POSITIVE)
    record.exact("bound when lam < 1/sqrt(3)", fl_second_bound(),
                 Sign.NEGATIVE)

    record.prove("F_lam < 0", F_lam, (LAMBDA_RANGE, UPPER_T_RANGE),
                 Sign.NEGATIVE)
    return record.result()


# Lemma on F(0.5, t), 2.8 <= t <= 5

F_05_28 = PaperValue("F_05_28", "0.3448")
F_05_5 = PaperValue("F_05_5", "2.2033")


def f_half_parabola_max() -> Interval:
    """Maximum of 3/4 - (t - 3pi/2)^2/2 - (t - 3pi)^2/16, 3/4 - (3pi/2)^2/18."""
    return _q(Fraction(3, 4)) - THREE_HALVES_PI.sqr() / 18


def _f_half_constants(record: StepRecorder) -> None:
    half = _q(HALF)
    record.expect(F_05_28, F(half, _q(T_START)))
    record.expect(F_05_5, F(half, _q(T_MIDDLE)))


@lru_cache(maxsize=8)
def verify_appendix_F_half(mode: ToleranceMode = ToleranceMode.PAPER,
                           max_depth: int = 40) -> StepResult:
    """F(0.5, t) >= 0 for 2.8 <= t <= 5."""
    record = StepRecorder(F_HALF_STEP_ID, mode, max_depth)
    _f_half_constants(record)
    half = _q(HALF)
    record.exact("dropped 1/6560 and t/6561 terms only lower F_tt",
                 K81 - 1, Sign.NONNEGATIVE)
    record.value("F_half_parabola_max", f_half_parabola_max())
    record.sign("upper bound parabola stays below zero",
                f_half_parabola_max(), Sign.NEGATIVE)
    # discriminant of -9/16 t^2 + (5c/4) t - 3c^2/4 + 3/4, c = 3pi/2
    record.sign("upper bound parabola has negative discriminant",
                (27 - THREE_HALVES_PI.sqr() * 2) / 16, Sign.NEGATIVE)
    record.prove("F_tt(0.5, t) < 0", lambda t: F_tt(half, t),
                 LOWER_T_RANGE, Sign.NEGATIVE)
    record.sign("F(0.5, 2.8) > 0", F(half, _q(T_START)), Sign.POSITIVE)
    record.sign("F(0.5, 5) > 0", F(half, _q(T_MIDDLE)), Sign.POSITIVE)
    record.prove("F(0.5, t) > 0", lambda t: F(half, t), LOWER_T_RANGE,
                 Sign.POSITIVE, derivative=lambda t: F_t(half, t))
    return record.result()


# Lemma on F(0.8194, t), 2.8 <= t <= 5.78

@dataclass(frozen=True)
class LineSpec:
    """L(t) = slope t + intercept, used on [start, end]."""

    slope: Fraction
    intercept: Fraction
    start: Fraction
    end: Fraction

    def __call__(self, t: Fraction) -> Fraction:
        return self.slope * t + self.intercept


@dataclass(frozen=True)
class Quadratic:
    """a t^2 + b t + c with enclosed coefficients."""

    a: Interval
    b: Interval
    c: Interval

    @property
    def width(self) -> float:
        return max(self.a.width, self.b.width, self.c.width)

    def discriminant_against(self, line: LineSpec) -> Interval:
        """Discriminant of the quadratic minus the line."""
        return ((self.b - _q(line.slope)).sqr()
                - self.a * 4 * (self.c - _q(line.intercept)))

    def __call__(self, t: Interval) -> Interval:
        return (self.a * t + self.b) * t + self.c


STAR = THEOREM_SLOPE_MAX
D_STAR = STAR * (1 - STAR ** 2) * K81

LINE_COEFFICIENTS = (
    (Fraction("-1.5"), Fraction("8.5")),
    (Fraction("-0.45"), Fraction("4.02")),
    (Fraction("0.025"), Fraction("1.71372")),
    (Fraction("0.077"), Fraction("1.4519")),
    (Fraction("0.2"), Fraction("0.8256")),
    (Fraction(1), Fraction("-3.5")),
)

QUAD_A = PaperValue("quad_a", "0.74540818", stated_error="1e-8")
QUAD_B = PaperValue("quad_b", "-7.45338058", stated_error="1e-8")
QUAD_C = PaperValue("quad_c", "20.47063551", stated_error="1e-8")
DELTAS = tuple(PaperValue(f"Delta_{i}", printed, stated_error="1e-6")
               for (i, printed) in enumerate(
                   ("-0.249298", "-0.002414", "-0.000057", "-0.000252",
                    "-0.000046", "-0.011988"), start=1))
BREAKPOINTS = (
    PaperValue("t_2", "4.27", exact=Fraction(64, 15)),
    PaperValue("t_3", "4.86", exact=Fraction(57657, 11875)),
    PaperValue("t_4", "5.035", exact=Fraction("5.035")),
    PaperValue("t_5", "5.09", exact=Fraction(6263, 1230)),
    PaperValue("t_6", "5.407", exact=Fraction("5.407")),
)
TABLE = tuple(
    (PaperValue(f"table_L_{i}", line_value, stated_error="1e-7"),
     PaperValue(f"table_psi_{i}", psi_value, stated_error="1e-7"))
    for (i, (line_value, psi_value)) in enumerate(
        (("4.3", "4.1931243"), ("2.1", "1.9392134"),
         ("1.8351032", "1.8350379"), ("1.839595", "1.8395934"),
         ("1.843974", "1.843946"), ("1.907", "1.8936546"),
         ("2.28", "2.0185385")), start=1))


def breakpoints() -> list[Fraction]:
    """t_1 = 2.8, the intersections of consecutive lines, and t_7 = 5.78."""
    points = [T_START]
    for ((b0, c0), (b1, c1)) in zip(LINE_COEFFICIENTS,
                                    LINE_COEFFICIENTS[1:]):
        points.append((c1 - c0) / (b0 - b1))
    points.append(T_END)
    return points


def lines() -> list[LineSpec]:
    points = breakpoints()
    return [LineSpec(b, c, points[i], points[i + 1])
            for (i, (b, c)) in enumerate(LINE_COEFFICIENTS)]


# Float samples of t per line for the sandwich sanity check.
LINE_SAMPLES = 200


def line_sandwich_slack(line: LineSpec, quad: Quadratic,
                        rng: random.Random,
                        samples: int = LINE_SAMPLES) -> float:
    """Smallest of phi - L and L - psi over sampled t in [start, end]."""
    worst = math.inf
    for _ in range(samples):
        t = Fraction(rng.uniform(float(line.start), float(line.end)))
        (point, value) = (_q(t), _q(line(t)))
        worst = min(worst, (quad(point) - value).mid,
                    (value - negative_part(point)).mid)
    return worst


def positive_part() -> Quadratic:
    """The quadratic holding the positive terms of F(0.8194, t)."""
    a = _q(STAR / 2 + STAR ** 2 / 2)
    b = _q(D_STAR) - pi_multiple(3 * STAR)
    c = _q(D_STAR) + PI.sqr() * _q((1 + STAR) * Fraction(9, 8))
    return Quadratic(a, b, c)


def negative_part(t: Interval) -> Interval:
    """The convex function holding the negative terms of F(0.8194, t)."""
    star = _q(STAR)
    z = t - THREE_HALVES_PI
    w = t * star - THREE_HALVES_PI
    return (star * (1 + z.sqr().sqr() / 24) + 1 + w.sqr().sqr() / 24
            + _q(D_STAR) * (t ** 3 / (6 * APPENDIX_M ** 2) + z.sqr() / 2))


def negative_part_d2(t: Interval) -> Interval:
    star = _q(STAR)
    z = t - THREE_HALVES_PI
    w = t * star - THREE_HALVES_PI
    return (star * z.sqr() / 2 + star.sqr() * w.sqr() / 2
            + _q(D_STAR) * (t / (APPENDIX_M ** 2) + 1))


def _f_08194_constants(record: StepRecorder) -> None:
    quad = positive_part()
    record.expect(QUAD_A, quad.a)
    record.expect(QUAD_B, quad.b)
    record.expect(QUAD_C, quad.c)
    for (expected, line) in zip(DELTAS, lines()):
        record.expect(expected, quad.discriminant_against(line))
    for (expected, t) in zip(BREAKPOINTS, breakpoints()[1:-1]):
        record.expect_exact(expected, t)
    points = breakpoints()
    for ((line_value, psi_value), line, t) in zip(
            TABLE, lines() + lines()[-1:], points):
        record.expect(line_value, _q(line(t)))
        record.expect(psi_value, negative_part(_q(t)))


@lru_cache(maxsize=8)
def verify_appendix_F_08194(mode: ToleranceMode = ToleranceMode.PAPER,
                            max_depth: int = 40) -> StepResult:
    """F(0.8194, t) >= 0 for 2.8 <= t <= 5.78 by six line sandwiches."""
    record = StepRecorder(F_08194_STEP_ID, mode, max_depth)
    _f_08194_constants(record)
    quad = positive_part()
    record.check("coefficient enclosures narrower than 1e-8",
                 quad.width <= 1e-8, quad.width)
    star = _q(STAR)
    for t in (T_START, Fraction(4), T_MIDDLE, T_END):
        record.check(f"F(0.8194, {t}) = positive - negative part",
                     F(star, _q(t)).overlaps(quad(_q(t))
                                              - negative_part(_q(t))))

    points = breakpoints()
    for (i, line) in enumerate(lines(), start=1):
        record.exact(f"t_{i} < t_{i + 1}", line.end - line.start,
                     Sign.POSITIVE)
        record.sign(f"Delta_{i} < 0", quad.discriminant_against(line),
                    Sign.NEGATIVE)
    record.exact("a > 0", STAR / 2 + STAR ** 2 / 2, Sign.POSITIVE)
    record.prove("negative part is convex", negative_part_d2, FULL_T_RANGE,
                 Sign.POSITIVE)
    for (i, (line, t)) in enumerate(zip(lines() + lines()[-1:], points),
                                    start=1):
        record.sign(f"L_{i}(t_{i}) > psi(t_{i})",
                    _q(line(t)) - negative_part(_q(t)), Sign.POSITIVE)
    rng = random.Random(0)
    for (i, line) in enumerate(lines(), start=1):
        slack = line_sandwich_slack(line, quad, rng)
        record.check(f"phi >= L_{i} >= psi at {LINE_SAMPLES} sampled t",
                     slack > 0.0, slack)
    record.prove("F(0.8194, t) > 0", lambda t: F(star, t), FULL_T_RANGE,
                 Sign.POSITIVE, derivative=lambda t: F_t(star, t))
    return record.result()


APPENDIX_VERIFIERS = {
    FLL_STEP_ID: verify_appendix_Fll,
    FL_STEP_ID: verify_appendix_Fl,
    F_HALF_STEP_ID: verify_appendix_F_half,
    F_08194_STEP_ID: verify_appendix_F_08194,
}

APPENDIX_CONSTANTS = {
    FLL_STEP_ID: _fll_constants,
    FL_STEP_ID: _fl_constants,
    F_HALF_STEP_ID: _f_half_constants,
    F_08194_STEP_ID: _f_08194_constants,
}
