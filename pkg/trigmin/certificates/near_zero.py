"""g >= g(0) on [0, 5.78/m], using the degree-9 sine sandwich."""
from __future__ import annotations

from fractions import Fraction
import math

from ..interval.core import Interval, PolyCoeffs, horner_eval
from ..interval.elementary import TWO_PI, arccos_enclosure, cos_enclosure, \
    sin_enclosure
from ..interval.prover import Sign
from ..model.functions import PairMN, REDUCTION_SLOPE_MAX, THEOREM_SLOPE_MIN
from ..model.sandwich import NEAR_ZERO_LOWER, NEAR_ZERO_UPPER
from .results import PaperValue, StepRecorder, StepResult, ToleranceMode

STEP_ID = "near_zero"
REACH = Fraction(578, 100)
Y_MAX = REACH ** 2
PHI_FLOOR = Fraction(174, 10 ** 8)
SANDWICH_DENOMINATOR = 482800
A = Fraction(math.factorial(9), SANDWICH_DENOMINATOR)
F5 = math.factorial(5)
F7 = math.factorial(7)
F9 = math.factorial(9)
NU_RANGE = Interval(0.25, Interval.from_rational(REDUCTION_SLOPE_MAX ** 2).hi)

PHI_578 = PaperValue("phi_578", "0.0104", tolerance="1e-3")
CONST_A = PaperValue("a", "0.7516", tolerance="1e-4")
INV_A = PaperValue("inv_a", "1.3305")
X_1 = PaperValue("x_1", "0.7203", tolerance="1e-4")
X_2 = PaperValue("x_2", "5.5629", tolerance="1e-4")
P_578SQ = PaperValue("p_578sq", "6.9607e-3", tolerance="1e-6")
V_025 = PaperValue("V_025", "5.5947e-7", tolerance="1e-10")
V_06724 = PaperValue("V_06724", "6.857e-5", tolerance="1e-8")

# p(y) = 1/3! - y/5! + y^2/7! - y^3/9!
P = PolyCoeffs.of(Fraction(1, 6), Fraction(-1, F5), Fraction(1, F7),
                  Fraction(-1, F9))
# V(nu) = (a - 1 + nu - nu^4) Y^2/9! - nu (1 - nu^2) Y/7! + nu (1 - nu)/5!
#         - 1.74e-6 (1 - nu), with Y = 5.78^2
V = PolyCoeffs.of((A - 1) * Y_MAX ** 2 / F9 - PHI_FLOOR,
                  Y_MAX ** 2 / F9 - Y_MAX / F7 + Fraction(1, F5) + PHI_FLOOR,
                  Fraction(-1, F5),
                  Y_MAX / F7,
                  -Y_MAX ** 2 / F9)
# u(nu) = (a - 1) Y + 36 nu^3 - Y nu^4
U = PolyCoeffs.of((A - 1) * Y_MAX, 0, 0, 36, -Y_MAX)


def q_poly(m: int) -> PolyCoeffs:
    """q(y) = 1/(3! m^2) - y/(5! m^4) + y^2/(7! m^6) - y^3/(482800 m^8)."""
    return PolyCoeffs.of(Fraction(1, 6 * m ** 2), Fraction(-1, F5 * m ** 4),
                         Fraction(1, F7 * m ** 6),
                         Fraction(-1, SANDWICH_DENOMINATOR * m ** 8))


def phi_poly(m: int) -> PolyCoeffs:
    """The m-dependent part of the reduced near-zero inequality."""
    return PolyCoeffs.of(
        Fraction(-1, F5 * m ** 2),
        Fraction(m ** 2 + 1, F7 * m ** 4),
        (Fraction(1, SANDWICH_DENOMINATOR * m ** 6) - Fraction(1, F9))
        / (m ** 2 - 1))


def psi_poly(lam: Fraction) -> PolyCoeffs:
    """The lambda-dependent part of the reduced near-zero inequality."""
    nu = lam ** 2
    return PolyCoeffs.of(
        nu / F5,
        -nu * (1 + nu) / F7,
        (Fraction(1, SANDWICH_DENOMINATOR) - (nu ** 4 - nu + 1) / F9)
        / (1 - nu))


def _discriminant(p: PolyCoeffs) -> Fraction:
    (c, b, a) = p.coefficients
    return b * b - 4 * a * c


def near_zero_constants(record: StepRecorder) -> None:
    """The printed constants of the near-zero argument."""
    record.expect(CONST_A, Interval.from_rational(A))
    record.expect(INV_A, Interval.from_rational(1 / A))
    x_1 = record.expect(X_1, arccos_enclosure(A))
    record.expect(X_2, TWO_PI - x_1)
    record.expect(PHI_578, NEAR_ZERO_LOWER.gap(Interval.from_rational(REACH)))
    record.expect(P_578SQ, horner_eval(P, Interval.from_rational(Y_MAX)))
    record.expect(V_025, Interval.from_rational(V(Fraction(1, 4))))
    record.expect(V_06724,
                  Interval.from_rational(V(REDUCTION_SLOPE_MAX ** 2)))


def _sandwich_claims(record: StepRecorder) -> None:
    record.sandwich(NEAR_ZERO_UPPER)
    record.sandwich(NEAR_ZERO_LOWER)
    edge = Interval.from_rational(REACH)
    record.sign("sin(5.78) - s1(5.78) > 0", NEAR_ZERO_LOWER.gap(edge),
                Sign.POSITIVE)
    x_1 = arccos_enclosure(A)
    record.check("cos(x_1) encloses a", cos_enclosure(x_1).contains(A))
    record.sign("sin x - a x > 0 at x_1",
                sin_enclosure(x_1) - x_1 * Interval.from_rational(A),
                Sign.POSITIVE)
    x_2 = TWO_PI - x_1
    record.sign("sin x - a x < 0 at x_2",
                sin_enclosure(x_2) - x_2 * Interval.from_rational(A),
                Sign.NEGATIVE)


def _condition_6(record: StepRecorder, m: int) -> None:
    """m s1(x) - s2(m x) >= 0, i.e. p(y) - q(y) >= 0 on [0, 5.78^2]."""
    ys = Interval(0.0, Interval.from_rational(Y_MAX).hi)
    # p'(y) = -(y^2/24 - 2y + 42)/7!
    record.exact("p' quadratic has negative discriminant",
                 _discriminant(PolyCoeffs.of(42, -2, Fraction(1, 24))),
                 Sign.NEGATIVE)
    dp = P.derivative()
    record.prove("p' < 0", lambda y: horner_eval(dp, y), ys, Sign.NEGATIVE)
    # q'(y) = -(3*7!/(482800 m^2) y^2 - 2y + 42 m^2)/(7! m^6)
    record.exact("q' quadratic has negative discriminant",
                 _discriminant(PolyCoeffs.of(
                     42 * m ** 2, -2,
                     Fraction(3 * F7, SANDWICH_DENOMINATOR * m ** 2))),
                 Sign.NEGATIVE)
    floor = horner_eval(P, Interval.from_rational(Y_MAX)) \
        - Interval.from_rational(Fraction(1, 6 * m ** 2))
    record.sign("p(5.78^2) - q(0) > 0", floor, Sign.POSITIVE)
    gap = P - q_poly(m)
    record.prove("p - q > 0 on [0, 5.78^2]", lambda y: horner_eval(gap, y),
                 ys, Sign.POSITIVE,
                 derivative=lambda y: horner_eval(gap.derivative(), y))


def _condition_7(record: StepRecorder, pair: PairMN) -> None:
    """The reduced inequality phi(y) + psi(y) >= 0 on [0, 5.78^2]."""
    ys = Interval(0.0, Interval.from_rational(Y_MAX).hi)
    record.exact("phi bound at m = 81 stays above -1.74e-6",
                 PHI_FLOOR - REACH ** 4 / (F9 * (81 ** 2 - 1))
                 - Fraction(1, F5 * 81 ** 2), Sign.POSITIVE)
    phi = phi_poly(pair.m) + PolyCoeffs.of(PHI_FLOOR)
    record.prove("phi + 1.74e-6 > 0", lambda y: horner_eval(phi, y), ys,
                 Sign.POSITIVE,
                 derivative=lambda y: horner_eval(phi.derivative(), y))

    record.exact("u has negative leading coefficient", -Y_MAX, Sign.NEGATIVE)
    record.exact("u(0) < 0", U(0), Sign.NEGATIVE)
    record.value("u_critical", Interval.from_rational(U(27 / Y_MAX)))
    record.exact("u(27/5.78^2) < 0", U(27 / Y_MAX), Sign.NEGATIVE)
    record.exact("5.78^2 < 36", Y_MAX - 36, Sign.NEGATIVE)
    slope = U + PolyCoeffs.of(0, Y_MAX - 36)
    record.prove("psi'(5.78^2) < 0 over nu", lambda nu: horner_eval(slope, nu),
                 NU_RANGE, Sign.NEGATIVE)
    record.prove("psi'(0) < 0 over nu",
                 lambda nu: nu * (1 - nu.sqr()) * -36, NU_RANGE,
                 Sign.NEGATIVE)

    ddv = V.derivative().derivative()
    record.exact("V'' parabola has negative discriminant",
                 _discriminant(ddv), Sign.NEGATIVE)
    record.prove("V'' < 0", lambda nu: horner_eval(ddv, nu), NU_RANGE,
                 Sign.NEGATIVE)
    record.exact("V(0.25) > 0", V(Fraction(1, 4)), Sign.POSITIVE)
    record.exact("V(0.82^2) > 0", V(REDUCTION_SLOPE_MAX ** 2), Sign.POSITIVE)

    total = phi_poly(pair.m) + psi_poly(pair.lam)
    record.prove("phi + psi > 0 at the pair's lambda",
                 lambda y: horner_eval(total, y), ys, Sign.POSITIVE,
                 derivative=lambda y: horner_eval(total.derivative(), y))


def verify_near_zero(pair: PairMN,
                     mode: ToleranceMode = ToleranceMode.PAPER,
                     max_depth: int = 40) -> StepResult:
    """Certify g(x) >= g(0) on [0, 5.78/m]."""
    record = StepRecorder(STEP_ID, mode, max_depth)
    near_zero_constants(record)
    _sandwich_claims(record)
    _condition_6(record, pair.m)
    _condition_7(record, pair)
    record.check("lambda^2 lies in the nu range of V",
                 THEOREM_SLOPE_MIN <= pair.lam <= REDUCTION_SLOPE_MAX)
    return record.result()
