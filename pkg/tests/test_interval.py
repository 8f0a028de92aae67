import math
import random
import unittest
from fractions import Fraction

import mpmath
from hypothesis import given, settings, strategies as st

from trigmin.certificates.near_zero import A, P, Y_MAX
from trigmin.interval.core import (ENTIRE, ONE, UNIT, ZERO, DivisorContainsZero,
                                   DomainError, Interval, IntervalError,
                                   PolyCoeffs, horner_eval)
from trigmin.interval.elementary import (HALF_PI, PI, arccos_enclosure,
                                         cos_enclosure, pi_multiple,
                                         sin_enclosure)
from trigmin.interval.prover import (DepthExceeded, Sign, SignProof,
                                     SignRefutation, prove_sign_on_box,
                                     prove_sign_on_interval)
from tests import test_helpers

SOUNDNESS_SAMPLES = 100_000
PROOF_SAMPLES = 10_000

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False,
                   allow_infinity=False)


def nested(values: list[float]) -> tuple[Interval, Interval]:
    (a, b, c, d) = sorted(values)
    return (Interval(b, c), Interval(a, d))


class TestIntervalBasics(unittest.TestCase):
    def test_exact_sum_stays_exact(self) -> None:
        self.assertEqual(Interval(1, 2) + Interval(3, 4), Interval(4, 6))

    def test_inexact_sum_is_widened(self) -> None:
        total = Interval.point(0.1) + 0.2
        exact = Fraction(0.1) + Fraction(0.2)
        self.assertTrue(test_helpers.encloses(total, exact))
        self.assertGreater(total.hi, total.lo)

    def test_mixed_sign_product(self) -> None:
        self.assertEqual(Interval(1, 2) * Interval(-3, 4), Interval(-6, 8))
        self.assertEqual(Interval(-2, 1) * Interval(-3, 4), Interval(-8, 6))

    def test_division(self) -> None:
        quotient = ONE / Interval.point(3.0)
        self.assertTrue(test_helpers.encloses(quotient, Fraction(1, 3)))
        with self.assertRaises(DivisorContainsZero):
            _ = ONE / Interval(-1, 1)

    def test_divide_unbounded(self) -> None:
        self.assertEqual(Interval(1, 2).divide_unbounded(Interval(0, 1)),
                         Interval(1, math.inf))
        self.assertEqual(Interval(1, 2).divide_unbounded(Interval(-1, 0)),
                         Interval(-math.inf, -1))
        self.assertEqual(UNIT.divide_unbounded(Interval(0, 1)), ENTIRE)

    def test_even_power_of_straddling_interval(self) -> None:
        self.assertEqual(Interval(-2, 1) ** 2, Interval(0, 4))
        self.assertEqual(Interval(-2, 1) ** 3, Interval(-8, 1))
        self.assertEqual(Interval(-2, 1) ** 0, ONE)

    def test_invalid_endpoints(self) -> None:
        with self.assertRaises(IntervalError):
            Interval(2, 1)
        with self.assertRaises(IntervalError):
            Interval(math.nan, 1)
        with self.assertRaises(IntervalError):
            Interval(Fraction(1, 3), 1)

    def test_from_rational_is_tight(self) -> None:
        third = Interval.from_rational(Fraction(1, 3))
        self.assertTrue(test_helpers.encloses(third, Fraction(1, 3)))
        self.assertEqual(math.nextafter(third.lo, math.inf), third.hi)
        self.assertTrue(Interval.from_rational(Fraction(1, 4)).is_point)

    def test_intersect_and_hull(self) -> None:
        self.assertIsNone(Interval(0, 1).intersect(Interval(2, 3)))
        self.assertEqual(Interval(0, 2).intersect(Interval(1, 3)),
                         Interval(1, 2))
        self.assertEqual(Interval.hull(Interval(0, 1), 3.0), Interval(0, 3))

    def test_abs_mag_mig(self) -> None:
        x = Interval(-3, 2)
        self.assertEqual(abs(x), Interval(0, 3))
        self.assertEqual(x.mag, 3.0)
        self.assertEqual(Interval(2, 5).mig, 2.0)

    def test_midpoint_of_unbounded_intervals(self) -> None:
        self.assertEqual(ENTIRE.mid, 0.0)
        self.assertEqual(Interval(1, math.inf).mid, 1.0)
        self.assertEqual(Interval(-math.inf, -2).mid, -2.0)
        self.assertEqual(Interval(-1e308, 1e308).mid, 0.0)
        self.assertEqual(Interval(-1e308, 1e308).split()[0].hi, 0.0)

    def test_split_rejects_unbounded(self) -> None:
        for x in (ENTIRE, Interval(0, math.inf)):
            with self.subTest(x=str(x)):
                with self.assertRaisesRegex(IntervalError, "unbounded"):
                    x.split()


class TestIntervalSoundness(unittest.TestCase):
    def test_arithmetic_encloses_exact_results(self) -> None:
        rng = random.Random(20240917)
        for _ in range(SOUNDNESS_SAMPLES // 4):
            x = test_helpers.random_interval(rng)
            y = test_helpers.random_interval(rng)
            a = test_helpers.random_member(rng, x)
            b = test_helpers.random_member(rng, y)
            self.assertTrue(test_helpers.encloses(x + y, a + b))
            self.assertTrue(test_helpers.encloses(x - y, a - b))
            self.assertTrue(test_helpers.encloses(x * y, a * b))
            if not y.contains(0.0):
                self.assertTrue(test_helpers.encloses(x / y, a / b))

    def test_sin_cos_enclose_high_precision_values(self) -> None:
        rng = random.Random(7)
        with mpmath.workdps(40):
            for _ in range(2000):
                t = rng.uniform(-50.0, 50.0)
                s = sin_enclosure(Interval.point(t))
                c = cos_enclosure(Interval.point(t))
                self.assertTrue(s.lo <= mpmath.sin(t) <= s.hi)
                self.assertTrue(c.lo <= mpmath.cos(t) <= c.hi)
                self.assertLess(s.width, 1e-12)

    @given(st.lists(finite, min_size=4, max_size=4),
           st.lists(finite, min_size=4, max_size=4))
    @settings(max_examples=300, deadline=None)
    def test_inclusion_monotonicity(self, xs: list[float],
                                    ys: list[float]) -> None:
        (x, big_x) = nested(xs)
        (y, big_y) = nested(ys)
        self.assertTrue((big_x + big_y).contains(x + y))
        self.assertTrue((big_x * big_y).contains(x * y))
        self.assertTrue((big_x ** 3).contains(x ** 3))
        with mpmath.workdps(30):
            self.assertTrue(sin_enclosure(big_x).lo <= mpmath.sin(x.mid)
                            <= sin_enclosure(big_x).hi)
            self.assertTrue(cos_enclosure(big_x).lo <= mpmath.cos(x.mid)
                            <= cos_enclosure(big_x).hi)


class TestElementary(unittest.TestCase):
    def test_pi_enclosure(self) -> None:
        self.assertTrue(PI.lo <= math.pi <= PI.hi)
        self.assertLess(PI.width, 1e-15)
        self.assertTrue(pi_multiple(2).overlaps(PI * 2))

    def test_sin_extrema_inside_argument(self) -> None:
        s = sin_enclosure(Interval(0.0, PI.hi))
        self.assertEqual(s.hi, 1.0)
        self.assertLessEqual(s.lo, 0.0)
        c = cos_enclosure(Interval(3.0, 4.0))
        self.assertEqual(c.lo, -1.0)

    def test_wide_argument(self) -> None:
        self.assertEqual(sin_enclosure(Interval(0.0, 10.0)), UNIT)

    def test_known_values(self) -> None:
        self.assertTrue(sin_enclosure(HALF_PI).contains(1.0))
        self.assertTrue(cos_enclosure(ZERO).contains(1.0))
        self.assertTrue(test_helpers.close_to(sin_enclosure(1.0),
                                              math.sin(1.0), 1e-14))

    def test_arccos(self) -> None:
        self.assertEqual(arccos_enclosure(1), ZERO)
        self.assertTrue(arccos_enclosure(0).overlaps(HALF_PI))
        self.assertEqual(arccos_enclosure(-1), PI)
        x_1 = arccos_enclosure(A)
        self.assertLess(x_1.width, 1e-12)
        self.assertAlmostEqual(x_1.mid, 0.7203, delta=1e-4)
        self.assertTrue(cos_enclosure(x_1).contains(A))

    def test_arccos_domain(self) -> None:
        with self.assertRaises(DomainError):
            arccos_enclosure(Fraction(11, 10))


class TestPolynomials(unittest.TestCase):
    def test_exact_algebra(self) -> None:
        p = PolyCoeffs.of(1, 2, 3)
        self.assertEqual(p(2), 17)
        self.assertEqual(p.derivative(), PolyCoeffs.of(2, 6))
        self.assertEqual((p * PolyCoeffs.of(0, 1)).degree, 3)
        self.assertEqual(p.compose_scale(2), PolyCoeffs.of(1, 4, 12))
        self.assertEqual((p - p).degree, -1)

    def test_divide_by_power(self) -> None:
        p = PolyCoeffs.of(0, 0, 5, 1)
        self.assertEqual(p.lowest_order(), 2)
        self.assertEqual(p.divide_by_power(2), PolyCoeffs.of(5, 1))
        with self.assertRaises(ValueError):
            p.divide_by_power(3)

    def test_horner_encloses_exact_value(self) -> None:
        value = horner_eval(P, Interval.from_rational(Y_MAX))
        self.assertTrue(test_helpers.encloses(value, P(Y_MAX)))
        self.assertAlmostEqual(value.mid, 6.9607e-3, delta=1e-6)

    def test_horner_of_zero_polynomial(self) -> None:
        self.assertEqual(horner_eval(PolyCoeffs(()), UNIT), ZERO)


class TestProver(unittest.TestCase):
    def test_proves_positive_square(self) -> None:
        outcome = prove_sign_on_interval(lambda x: x.sqr() + 1,
                                         Interval(-3, 3), Sign.POSITIVE)
        self.assertIsInstance(outcome, SignProof)
        self.assertGreaterEqual(outcome.margin, 1.0)

    def test_refutes_false_claim(self) -> None:
        outcome = prove_sign_on_interval(lambda x: x + 1, Interval(0, 4),
                                         Sign.NEGATIVE)
        self.assertIsInstance(outcome, SignRefutation)
        self.assertGreaterEqual(outcome.enclosure.lo, 0.0)

    def test_cannot_decide_touching_claim(self) -> None:
        with self.assertRaises(DepthExceeded):
            prove_sign_on_interval(lambda x: x, Interval(0, 1),
                                   Sign.POSITIVE, max_depth=10)

    def test_two_dimensional_box(self) -> None:
        outcome = prove_sign_on_box(lambda x, y: x * y + 1,
                                    (Interval(-0.5, 0.5), Interval(-1, 1)),
                                    Sign.POSITIVE)
        self.assertIsInstance(outcome, SignProof)

    def test_mean_value_enclosure(self) -> None:
        outcome = prove_sign_on_interval(lambda x: x * x - x * 2 + 1.01,
                                         Interval(0, 2), Sign.POSITIVE,
                                         derivative=lambda x: x * 2 - 2)
        self.assertIsInstance(outcome, SignProof)

    def test_derivative_needs_one_dimension(self) -> None:
        with self.assertRaises(ValueError):
            prove_sign_on_box(lambda x, y: x + y, (UNIT, UNIT),
                              Sign.NONNEGATIVE,
                              derivative=lambda x: ONE)

    def test_no_sample_breaks_a_proved_claim(self) -> None:
        claims = [
            (lambda x: x.sqr() + 1, (Interval(-3, 3),), Sign.POSITIVE, None),
            (lambda x: x * x - x * 2 + 1.01, (Interval(0, 2),),
             Sign.POSITIVE, lambda x: x * 2 - 2),
            (lambda x, y: x * y + 1, (Interval(-0.5, 0.5), Interval(-1, 1)),
             Sign.POSITIVE, None),
            (lambda x: -(x ** 4) - x.sqr(), (Interval(-2, 2),),
             Sign.NONPOSITIVE, None),
        ]
        rng = random.Random(104)
        for (fn, box, sign, derivative) in claims:
            outcome = prove_sign_on_box(fn, box, sign, derivative=derivative)
            self.assertIsInstance(outcome, SignProof)
            test_helpers.assert_no_sample_breaks(self, fn, box, sign, rng,
                                                 PROOF_SAMPLES)


if __name__ == '__main__':
    unittest.main()
