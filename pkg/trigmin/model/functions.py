"""The quotients f, g and g-tilde of a pair (m, n), and their values at 0."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
import math

from ..interval.core import (Interval, PolyCoeffs, Real, ONE, horner_eval,
                             to_interval)
from ..interval.elementary import PI, pi_multiple, sin_enclosure

THEOREM_M_MIN = 81
THEOREM_SLOPE_MIN = Fraction(1, 2)
THEOREM_SLOPE_MAX = Fraction(8194, 10000)
# Slope bound used by the intermediate reductions near 0 and far from 0, pi.
REDUCTION_SLOPE_MAX = Fraction(82, 100)

# Series terms kept when k sin(x) -+ sin(kx) is expanded near a multiple of
# pi, and the largest m*|h| for which the expansion is used.
SERIES_TERMS = 9
SERIES_REACH = 2.0


class PairError(ValueError):
    """(m, n) does not satisfy m > n >= 2."""


class DenominatorMayVanish(ArithmeticError):
    """The denominator enclosure contains zero; subdivide the argument."""


@dataclass(frozen=True)
class PairMN:
    """Candidate pair with slope lam = n/m and nu = lam**2."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise PairError(f"m and n must be integers, got {self.m!r}, "
                            f"{self.n!r}")
        if not self.m > self.n >= 2:
            raise PairError(f"need m > n >= 2, got m={self.m}, n={self.n}")

    @property
    def lam(self) -> Fraction:
        return Fraction(self.n, self.m)

    @property
    def nu(self) -> Fraction:
        return self.lam ** 2

    @property
    def m_odd_n_even(self) -> bool:
        return self.m % 2 == 1 and self.n % 2 == 0

    @property
    def same_parity(self) -> bool:
        return self.m % 2 == self.n % 2

    def scope_violations(self) -> list[str]:
        """Reasons the pair falls outside the theorem's hypotheses."""
        reasons = []
        if self.m % 2 == 0:
            reasons.append("m is even")
        if self.n % 2 == 1:
            reasons.append("n is odd")
        if self.lam < THEOREM_SLOPE_MIN:
            reasons.append(f"n/m = {float(self.lam):.4f} < 0.5")
        if self.lam > THEOREM_SLOPE_MAX:
            reasons.append(f"n/m = {float(self.lam):.4f} > 0.8194")
        if self.m < THEOREM_M_MIN:
            reasons.append(f"m = {self.m} < {THEOREM_M_MIN}")
        return reasons

    @property
    def theorem_scope(self) -> bool:
        return not self.scope_violations()

    @property
    def below_conjectured_slope(self) -> bool:
        """n < (4m + 2)/5, the slope conjectured before the 0.8194 result."""
        return 5 * self.n < 4 * self.m + 2

    @property
    def known_condition_2(self) -> bool:
        """Earlier results already give min f = f(0) for this pair."""
        if self.same_parity:
            return True
        return self.m_odd_n_even and 2 * self.n <= self.m + 1

    def __str__(self) -> str:
        return f"({self.m}, {self.n})"


def f_at_zero(pair: PairMN) -> Fraction:
    """(n**3 - n)/(m**3 - m), the limit of f at 0."""
    return Fraction(pair.n ** 3 - pair.n, pair.m ** 3 - pair.m)


def g_at_zero(pair: PairMN) -> Fraction:
    """-n(m**2 - n**2)/(m**2 - 1), the limit of g = m f - n at 0."""
    return Fraction(-pair.n * (pair.m ** 2 - pair.n ** 2), pair.m ** 2 - 1)


def region_threshold(pair: PairMN) -> Fraction:
    """Right side of |sin x| > (m^2 - mn + n^2 - 1)/(mn(m - n)).

    Where this holds, the lower bound on g already exceeds g(0).
    """
    (m, n) = (pair.m, pair.n)
    return Fraction(m * m - m * n + n * n - 1, m * n * (m - n))


def sine_combination(k: int, x: Interval | Real, sign: int = -1) -> Interval:
    """Direct enclosure of k sin(x) + sign * sin(k x)."""
    x = to_interval(x)
    term = sin_enclosure(x * k)
    base = sin_enclosure(x) * k
    return base + term if sign > 0 else base - term


@lru_cache(maxsize=512)
def _combination_series(k: int, epsilon: int
                        ) -> tuple[int, PolyCoeffs, int, Interval]:
    """Expansion of k sin(h) - epsilon sin(k h) = h**order * C(h).

    C is even; it is returned as a polynomial in h**2 together with the
    power and coefficient of the tail bound (k + k**p)|h|**(p - order)/p!.
    """
    first = 1 if epsilon == 1 else 0
    order = 2 * first + 1
    coefficients = []
    for i in range(first, first + SERIES_TERMS):
        coefficients.append(Fraction((-1) ** i * (k - epsilon * k ** (2 * i + 1)),
                                     math.factorial(2 * i + 1)))
    p = 2 * (first + SERIES_TERMS) + 1
    tail = Interval.from_rational(Fraction(k + k ** p, math.factorial(p)))
    return (order, PolyCoeffs(tuple(coefficients)), p - order, tail)


def combination_cofactor(k: int, epsilon: int, h: Interval) -> tuple[int,
                                                                     Interval]:
    """Return (order, C(h)) with k sin(h) - epsilon sin(k h) = h**order C(h)."""
    (order, poly, tail_power, tail) = _combination_series(k, epsilon)
    bound = (Interval.point(h.mag) ** tail_power * tail).hi
    return (order, horner_eval(poly, h.sqr()) + Interval(-bound, bound))


def _offset_from_pi_multiple(x: Interval) -> tuple[int, Interval]:
    j = round(x.mid / math.pi)
    return (j, x - pi_multiple(j))


def _parity_sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _f_series(pair: PairMN, x: Interval) -> Interval:
    """f near j*pi, from the factored expansions of numerator and denominator.

    With x = j*pi + h both combinations carry the same factor (-1)**j, which
    cancels in the quotient.
    """
    (j, h) = _offset_from_pi_multiple(x)
    if pair.m * h.mag > SERIES_REACH:
        raise DenominatorMayVanish(f"f is not expandable on {x}")
    (order_n, c_n) = combination_cofactor(
        pair.n, _parity_sign(j * (pair.n - 1)), h)
    (order_m, c_m) = combination_cofactor(
        pair.m, _parity_sign(j * (pair.m - 1)), h)
    if c_m.contains(0.0):
        raise DenominatorMayVanish(f"series denominator vanishes on {x}")
    ratio = c_n / c_m
    power = order_n - order_m
    if power >= 0:
        return (h ** power) * ratio if power else ratio
    return ratio.divide_unbounded(h ** (-power))


def eval_f(pair: PairMN, x: Interval | Real) -> Interval:
    """Enclosure of f(x) = (n sin x - sin nx)/(m sin x - sin mx).

    Near multiples of pi the removable singularity (or pole) is handled by
    series; the result is unbounded above at a pole.
    """
    x = to_interval(x)
    denominator = sine_combination(pair.m, x)
    if not denominator.contains(0.0):
        return sine_combination(pair.n, x) / denominator
    return _f_series(pair, x)


def eval_g(pair: PairMN, x: Interval | Real) -> Interval:
    """Enclosure of g(x) = (n sin mx - m sin nx)/(m sin x - sin mx)."""
    x = to_interval(x)
    denominator = sine_combination(pair.m, x)
    if not denominator.contains(0.0):
        numerator = (sin_enclosure(x * pair.m) * pair.n
                     - sin_enclosure(x * pair.n) * pair.m)
        return numerator / denominator
    return _f_series(pair, x) * pair.m - pair.n


def eval_g_tilde(pair: PairMN, x: Interval | Real) -> Interval:
    """Enclosure of g(x + pi).

    For m odd and n even this is (n sin mx + m sin nx)/(m sin x - sin mx).
    """
    x = to_interval(x)
    if pair.m_odd_n_even:
        denominator = sine_combination(pair.m, x)
        if not denominator.contains(0.0):
            numerator = (sin_enclosure(x * pair.m) * pair.n
                         + sin_enclosure(x * pair.n) * pair.m)
            return numerator / denominator
    return eval_g(pair, x + PI)


def far_lower_bound(pair: PairMN, x: Interval | Real) -> Interval:
    """-(m + n)/(m |sin x| + 1), a lower bound for g everywhere."""
    s = abs(sin_enclosure(to_interval(x)))
    return -(ONE * (pair.m + pair.n)) / (s * pair.m + 1)


def crude_bound(pair: PairMN, x: Interval | Real) -> Interval:
    """(m + n)/(m |sin x| - 1), an upper bound for |g| where m |sin x| > 1.

    Unbounded above wherever m |sin x| may be 1 or less.
    """
    excess = abs(sin_enclosure(to_interval(x))) * pair.m - 1
    if excess.lo <= 0.0:
        return Interval(0.0, math.inf)
    return (ONE * (pair.m + pair.n)) / excess


class BmnBasis(Enum):
    """Why the minimum of f is known, if it is."""

    M_EVEN_N_ODD = "m even, n odd: B_mn = 0"
    SAME_PARITY = "same parity: minimum at 0"
    SMALL_SLOPE = "m odd, n even, n <= (m+1)/2: minimum at 0"
    THEOREM = "m odd, n even, 0.5 <= n/m <= 0.8194, m >= 81: minimum at 0"
    OPEN = "not covered by a proof"


@dataclass(frozen=True)
class BmnReference:
    """B_mn = min over the reals of f, bound to the pair it describes.

    The minimum is searched on [0, pi]; f is even and 2*pi periodic.
    """

    pair: PairMN
    f_at_zero: Fraction
    basis: BmnBasis
    expected: Fraction | None
    search_interval: tuple[float, float] = (0.0, math.pi)

    @property
    def condition_2_expected(self) -> bool | None:
        if self.basis is BmnBasis.OPEN:
            return None
        return self.expected == self.f_at_zero


def b_mn_reference(pair: PairMN) -> BmnReference:
    """Describe B_mn for the pair; the oracle supplies its numerical value."""
    f0 = f_at_zero(pair)
    if pair.m % 2 == 0 and pair.n % 2 == 1:
        return BmnReference(pair, f0, BmnBasis.M_EVEN_N_ODD, Fraction(0))
    if pair.same_parity:
        return BmnReference(pair, f0, BmnBasis.SAME_PARITY, f0)
    if pair.known_condition_2:
        return BmnReference(pair, f0, BmnBasis.SMALL_SLOPE, f0)
    if pair.theorem_scope:
        return BmnReference(pair, f0, BmnBasis.THEOREM, f0)
    return BmnReference(pair, f0, BmnBasis.OPEN, None)
