import math
import random
import unittest
from fractions import Fraction

import numpy as np

from trigmin.model.functions import PairMN, eval_f, f_at_zero
from trigmin.oracle.minimize import (check_far_bound, check_works,
                                     compute_B_mn, evaluate_f, f_reference,
                                     global_min_f, grid_min_F, grid_size,
                                     min_F_on_t_range, reduce_argument)
from trigmin.oracle.scan import (ScanRangeError, SlopeScanRow,
                                 check_scan_range, conjectured_n_max,
                                 scan_row, scan_slope)
from tests import test_helpers

CONSISTENCY_SAMPLES = 1000


class TestEvaluateF(unittest.TestCase):
    def test_reduce_argument(self) -> None:
        reduced = reduce_argument(np.array([-1.0, 2 * math.pi - 1.0, 7.0]))
        np.testing.assert_allclose(reduced, [1.0, 1.0, 7.0 - 2 * math.pi],
                                   atol=1e-12)

    def test_series_near_zero(self) -> None:
        pair = PairMN(81, 42)
        self.assertAlmostEqual(float(evaluate_f(pair, 0.0)),
                               float(f_at_zero(pair)), delta=1e-15)
        self.assertAlmostEqual(float(evaluate_f(pair, 1e-3)),
                               f_reference(pair, 1e-3), delta=1e-12)

    def test_matches_high_precision(self) -> None:
        pair = PairMN(101, 82)
        for x in (0.05, 0.4, 1.3, 2.2, 3.0):
            with self.subTest(x=x):
                self.assertAlmostEqual(float(evaluate_f(pair, x)),
                                       f_reference(pair, x), delta=1e-10)

    def test_inside_rigorous_enclosures(self) -> None:
        rng = random.Random(42)
        for pair in test_helpers.ACCEPTED:
            xs = [rng.uniform(0.01, math.pi - 0.01)
                  for _ in range(CONSISTENCY_SAMPLES)]
            values = evaluate_f(pair, np.array(xs))
            for (x, value) in zip(xs, values):
                enclosure = eval_f(pair, x)
                slack = 1e-9 * max(1.0, abs(float(value)))
                self.assertGreaterEqual(value, enclosure.lo - slack,
                                        f"{pair} at x = {x}")
                self.assertLessEqual(value, enclosure.hi + slack,
                                     f"{pair} at x = {x}")


class TestGlobalMin(unittest.TestCase):
    def test_even_m_odd_n_has_zero_minimum(self) -> None:
        for (m, n) in ((4, 3), (6, 5), (8, 3)):
            with self.subTest(m=m, n=n):
                estimate = global_min_f(PairMN(m, n))
                self.assertAlmostEqual(estimate.min_value, 0.0, delta=1e-9)
                self.assertLess(test_helpers.near_pi_distance(
                    estimate.argmin_x), 1e-3)
                self.assertFalse(estimate.works)

    def test_known_zero_b_mn(self) -> None:
        for (m, n) in ((4, 3), (6, 5), (8, 3)):
            with self.subTest(m=m, n=n):
                self.assertAlmostEqual(compute_B_mn(PairMN(m, n)), 0.0,
                                       delta=1e-9)

    def test_small_pair(self) -> None:
        estimate = global_min_f(PairMN(3, 2))
        self.assertAlmostEqual(estimate.min_value, 0.25, delta=1e-9)
        self.assertLessEqual(estimate.argmin_x, 1e-4)
        self.assertTrue(estimate.works)
        self.assertEqual(estimate.f_at_zero, Fraction(1, 4))

    def test_theorem_pair_works(self) -> None:
        pair = PairMN(81, 42)
        estimate = global_min_f(pair)
        self.assertTrue(estimate.works)
        self.assertLessEqual(abs(estimate.margin), 1e-9)
        self.assertEqual(estimate.grid_points, grid_size(pair))
        self.assertEqual(grid_size(pair), 3241)
        self.assertAlmostEqual(estimate.g_min, -201474 / 6560, delta=1e-6)

    def test_acceptance_pairs_agree_with_f0(self) -> None:
        for pair in test_helpers.ACCEPTED:
            with self.subTest(pair=str(pair)):
                estimate = global_min_f(pair)
                self.assertAlmostEqual(estimate.min_value,
                                       float(f_at_zero(pair)), delta=1e-9)
                self.assertLessEqual(estimate.argmin_x, 1e-4)

    def test_density_doubling_is_stable(self) -> None:
        for pair in test_helpers.ACCEPTED:
            with self.subTest(pair=str(pair)):
                coarse = global_min_f(pair, density=1.0)
                fine = global_min_f(pair, density=2.0)
                self.assertLess(abs(coarse.min_value - fine.min_value), 1e-9)

    def test_above_theorem_slope_fails(self) -> None:
        (works, margin) = check_works(PairMN(81, 68))
        self.assertFalse(works)
        self.assertLess(margin, 0.0)

    def test_below_half_works(self) -> None:
        (works, _) = check_works(PairMN(81, 40))
        self.assertTrue(works)

    def test_invalid_arguments(self) -> None:
        with self.assertRaises(ValueError):
            global_min_f(PairMN(81, 42), density=0.5)
        with self.assertRaises(ValueError):
            global_min_f(PairMN(81, 42), tol=1e-3)

    def test_far_bound(self) -> None:
        for pair in (PairMN(81, 42), PairMN(121, 98)):
            with self.subTest(pair=str(pair)):
                check = check_far_bound(pair)
                self.assertGreater(check.worst_slack, -1e-9)


class TestAppendixFunction(unittest.TestCase):
    def test_minimum_margin_at_critical_slope(self) -> None:
        (t, value) = min_F_on_t_range(0.8194, 81)
        self.assertGreaterEqual(value, 1e-4)
        self.assertLessEqual(value, 4e-4)
        self.assertTrue(2.8 <= t <= 5.78)

    def test_grid_minimum_sits_at_largest_slope(self) -> None:
        (lam, _, value) = grid_min_F()
        self.assertAlmostEqual(lam, 0.8194, delta=1e-12)
        self.assertGreater(value, 0.0)


class TestScan(unittest.TestCase):
    def test_conjectured_n_max(self) -> None:
        self.assertEqual(conjectured_n_max(81), 64)
        self.assertEqual(conjectured_n_max(5), 4)
        self.assertEqual(conjectured_n_max(3), 2)

    def test_small_row(self) -> None:
        row = scan_row(5)
        self.assertIn(row.n_max_works, (2, 4))
        self.assertEqual(row.m, 5)

    def test_rows_sorted(self) -> None:
        rows = scan_slope(3, 9)
        self.assertEqual([row.m for row in rows], [3, 5, 7, 9])
        self.assertEqual(rows, scan_slope(3, 9))

    def test_slope(self) -> None:
        row = SlopeScanRow(81, 66, 68, 64)
        self.assertEqual(row.slope, Fraction(66, 81))
        self.assertIsNone(SlopeScanRow(5, None, 2, 4).slope)

    def test_range_errors(self) -> None:
        for (m_from, m_to) in ((4, 9), (3, 10), (1, 5), (9, 3)):
            with self.subTest(m_from=m_from, m_to=m_to):
                with self.assertRaises(ScanRangeError):
                    check_scan_range(m_from, m_to)


@unittest.skipUnless(test_helpers.SLOW_TESTS, "set TRIGMIN_SLOW_TESTS=1")
class TestScanTheoremRow(unittest.TestCase):
    def test_m_81(self) -> None:
        row = scan_row(81)
        self.assertGreaterEqual(row.n_max_works, 66)


if __name__ == '__main__':
    unittest.main()
