"""Floating-point estimates of the global minimum of f, with no guarantees.

f is even and 2*pi periodic, so the search runs over [0, pi]. The quotient
is replaced by a ratio of Taylor expansions within 0.5/m of 0 and pi, where
the denominator vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import logging
import math

import mpmath
import numpy as np

from ..model.functions import PairMN, f_at_zero

GRID_FACTOR = 40
CANDIDATES = 20
MAX_ITERATIONS = 80
SERIES_RADIUS = 0.5
SERIES_TERMS = 6
WORKS_SLACK = 1e-9
ARGMIN_TOLERANCE = 1e-4
MP_DPS = 50
THEOREM_REACH = (2.8, 5.78)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleEstimate:
    """Least value of f found on [0, pi] and where it was found."""

    pair: PairMN
    argmin_x: float
    min_value: float
    f_at_zero: Fraction
    works: bool
    slack: float
    grid_points: int
    refinement_iterations: int

    @property
    def margin(self) -> float:
        return self.min_value - float(self.f_at_zero)

    @property
    def g_min(self) -> float:
        return self.pair.m * self.min_value - self.pair.n


@lru_cache(maxsize=256)
def _series(k: int, epsilon: int) -> tuple[int, np.ndarray]:
    """k sin h - epsilon sin(kh) = h**order * C(h**2), C of degree 11 - order."""
    first = 1 if epsilon == 1 else 0
    coefficients = [float(Fraction((-1) ** j * (k - epsilon * k ** (2 * j + 1)),
                                   math.factorial(2 * j + 1)))
                    for j in range(first, SERIES_TERMS)]
    return (2 * first + 1, np.array(coefficients))


def _series_ratio(pair: PairMN, h: np.ndarray, at_pi: bool) -> np.ndarray:
    # near pi, k sin x - sin kx = k sin h + (-1)**k sin kh with h = pi - x
    eps_n = 1 if not at_pi or pair.n % 2 == 1 else -1
    eps_m = 1 if not at_pi or pair.m % 2 == 1 else -1
    (order_n, c_n) = _series(pair.n, eps_n)
    (order_m, c_m) = _series(pair.m, eps_m)
    h2 = h * h
    ratio = (np.polynomial.polynomial.polyval(h2, c_n)
             / np.polynomial.polynomial.polyval(h2, c_m))
    power = order_n - order_m
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = h ** power if power >= 0 else 1.0 / h ** (-power)
    return ratio * scale


def reduce_argument(x: np.ndarray | float) -> np.ndarray:
    """Map x onto [0, pi] using evenness and periodicity."""
    x = np.mod(np.abs(np.asarray(x, dtype=float)), 2 * np.pi)
    return np.where(x > np.pi, 2 * np.pi - x, x)


def evaluate_f(pair: PairMN, x: np.ndarray | float) -> np.ndarray:
    """f at each point; poles come out as +inf or nan."""
    x = reduce_argument(x)
    radius = SERIES_RADIUS / pair.m
    near_zero = x <= radius
    near_pi = (np.pi - x) <= radius
    with np.errstate(divide="ignore", invalid="ignore"):
        numerator = pair.n * np.sin(x) - np.sin(pair.n * x)
        denominator = pair.m * np.sin(x) - np.sin(pair.m * x)
        values = numerator / denominator
    values = np.where(near_zero, _series_ratio(pair, x, False), values)
    values = np.where(near_pi, _series_ratio(pair, np.pi - x, True), values)
    return values


def evaluate_g(pair: PairMN, x: np.ndarray | float) -> np.ndarray:
    return pair.m * evaluate_f(pair, x) - pair.n


def f_reference(pair: PairMN, x: float, dps: int = MP_DPS) -> float:
    """f(x) at high precision, for cross-checking the other evaluators."""
    with mpmath.workdps(dps):
        t = mpmath.mpf(x)
        if t == 0:
            return float(f_at_zero(pair))
        value = ((pair.n * mpmath.sin(t) - mpmath.sin(pair.n * t))
                 / (pair.m * mpmath.sin(t) - mpmath.sin(pair.m * t)))
        return float(value)


def _derivative(pair: PairMN, x: float, step: float) -> float:
    (right, left) = evaluate_f(pair, np.array([x + step, x - step]))
    return float((right - left) / (2 * step))


def _refine(pair: PairMN, lo: float, hi: float, tol: float
            ) -> tuple[float, float, int]:
    """Bisect on the sign of a centred difference of f inside [lo, hi]."""
    step = 1e-6 / pair.m
    iterations = 0
    if _derivative(pair, lo, step) < 0 < _derivative(pair, hi, step):
        while hi - lo > tol and iterations < MAX_ITERATIONS:
            mid = 0.5 * (lo + hi)
            if _derivative(pair, mid, step) < 0:
                lo = mid
            else:
                hi = mid
            iterations += 1
    points = np.array([lo, 0.5 * (lo + hi), hi])
    values = evaluate_f(pair, points)
    best = int(np.nanargmin(values))
    return (float(points[best]), float(values[best]), iterations)


def _grid_candidates(values: np.ndarray) -> np.ndarray:
    """Indices of grid local minima, endpoints included by reflection."""
    padded = np.concatenate(([values[1]], values, [values[-2]]))
    centre = padded[1:-1]
    is_min = (centre <= padded[:-2]) & (centre <= padded[2:])
    is_min &= np.isfinite(centre)
    return np.flatnonzero(is_min)


def grid_size(pair: PairMN, density: float = 1.0) -> int:
    return int(GRID_FACTOR * pair.m * density) + 1


def global_min_f(pair: PairMN, density: float = 1.0, tol: float = 1e-9
                 ) -> OracleEstimate:
    """Estimate min f over the reals from a grid on [0, pi] plus refinement.

    density multiplies the default grid of 40 m points; the best CANDIDATES
    grid minima are refined to tol.
    """
    if density < 1.0:
        raise ValueError(f"density must be >= 1, got {density}")
    if not 0 < tol <= 1e-6:
        raise ValueError(f"tol must lie in (0, 1e-6], got {tol}")
    points = grid_size(pair, density)
    xs = np.linspace(0.0, np.pi, points)
    values = evaluate_f(pair, xs)
    skipped = int(np.count_nonzero(~np.isfinite(values)))
    if skipped:
        logger.warning("%s: skipped %d grid points at poles of f", pair,
                       skipped)
    candidates = _grid_candidates(values)
    order = np.lexsort((xs[candidates], values[candidates]))
    spacing = xs[1] - xs[0]
    best_x, best_value, total_iterations = 0.0, math.inf, 0
    for index in candidates[order][:CANDIDATES]:
        centre = float(xs[index])
        (x, value, iterations) = _refine(pair, centre - spacing,
                                         centre + spacing, tol)
        total_iterations += iterations
        x = float(reduce_argument(x))
        if float(values[index]) < value:
            (x, value) = (centre, float(values[index]))
        logger.debug("%s: candidate %.6g refined to f(%.12g) = %.17g", pair,
                     centre, x, value)
        if value < best_value or (value == best_value and x < best_x):
            (best_x, best_value) = (x, value)
    f0 = f_at_zero(pair)
    works = (best_value >= float(f0) - WORKS_SLACK
             and best_x <= ARGMIN_TOLERANCE)
    return OracleEstimate(pair, best_x, best_value, f0, works, WORKS_SLACK,
                          points, total_iterations)


def check_works(pair: PairMN, density: float = 1.0, tol: float = 1e-9
                ) -> tuple[bool, float]:
    """Whether min f = f(0) numerically, and min f - f(0)."""
    estimate = global_min_f(pair, density, tol)
    return (estimate.works, estimate.margin)


def compute_B_mn(pair: PairMN, density: float = 1.0, tol: float = 1e-9
                 ) -> float:
    return global_min_f(pair, density, tol).min_value


@dataclass(frozen=True)
class FarBoundCheck:
    """Grid check of g >= -(m + n)/(m |sin x| + 1)."""

    pair: PairMN
    worst_slack: float
    points: int

    @property
    def holds(self) -> bool:
        return self.worst_slack >= 0


def check_far_bound(pair: PairMN, density: float = 1.0) -> FarBoundCheck:
    """Evaluate g minus its far-region lower bound on a grid of (0, pi)."""
    radius = SERIES_RADIUS / pair.m
    xs = np.linspace(radius, np.pi - radius, grid_size(pair, density))
    bound = -(pair.m + pair.n) / (pair.m * np.abs(np.sin(xs)) + 1)
    slack = evaluate_g(pair, xs) - bound
    return FarBoundCheck(pair, float(np.min(slack)), len(xs))


def F_float(lam: float | np.ndarray, t: float | np.ndarray, m: int = 81
            ) -> np.ndarray:
    """Floating-point F(lam, t, m) for grid exploration."""
    lam = np.asarray(lam, dtype=float)
    t = np.asarray(t, dtype=float)
    c = 1.5 * np.pi

    def quartic(s):
        z = s - c
        return -1 + z * z / 2 - z ** 4 / 24

    weight = lam * (1 - lam * lam) * m * m / (m * m - 1)
    bracket = t + 1 - t ** 3 / (6 * m * m) - (t - c) ** 2 / 2
    return lam * quartic(t) + quartic(lam * t) + weight * bracket


def min_F_on_t_range(lam: float = 0.8194, m: int = 81,
                     t_range: tuple[float, float] = THEOREM_REACH,
                     points: int = 200_001) -> tuple[float, float]:
    """Minimum of F(lam, t, m) over t on a fine grid, as (t, value)."""
    ts = np.linspace(t_range[0], t_range[1], points)
    values = F_float(lam, ts, m)
    best = int(np.argmin(values))
    return (float(ts[best]), float(values[best]))


def grid_min_F(lam_range: tuple[float, float] = (0.5, 0.8194), m: int = 81,
               t_range: tuple[float, float] = THEOREM_REACH,
               shape: tuple[int, int] = (401, 2001)
               ) -> tuple[float, float, float]:
    """Minimum of F on a lam-by-t grid, as (lam, t, value).

    Exploration only; the rigorous statement comes from the certificates.
    """
    lams = np.linspace(lam_range[0], lam_range[1], shape[0])
    ts = np.linspace(t_range[0], t_range[1], shape[1])
    (grid_lam, grid_t) = np.meshgrid(lams, ts, indexing="ij")
    values = F_float(grid_lam, grid_t, m)
    (i, j) = np.unravel_index(int(np.argmin(values)), values.shape)
    return (float(lams[i]), float(ts[j]), float(values[i, j]))
