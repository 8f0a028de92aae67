"""Polynomial lower and upper bounds for sin, and their certification."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
import logging
import math

from ..interval.core import Interval, PolyCoeffs, horner_eval, to_interval
from ..interval.elementary import cos_enclosure, half_pi_multiple, \
    sin_enclosure
from ..interval.prover import (DEFAULT_MAX_DEPTH, Sign, SignProof,
                               SignRefutation, prove_sign_on_interval)

logger = logging.getLogger(__name__)

# Taylor degree of sin used in the factored gap, and the distance from the
# expansion point within which the factored form is used.
GAP_TAYLOR_DEGREE = 29
FACTORED_REACH = 1.0


class Side(Enum):
    LOWER = "lower"
    UPPER = "upper"


def rational_span(lo: int | Fraction | str, hi: int | Fraction | str
                  ) -> Interval:
    """Smallest float interval containing the exact [lo, hi]."""
    return Interval(Interval.from_rational(Fraction(lo)).lo,
                    Interval.from_rational(Fraction(hi)).hi)


def _sin_derivative_at(k: int, d: int) -> int:
    """d-th derivative of sin at k*pi/2."""
    return (0, 1, 0, -1)[(k + d) % 4]


@dataclass(frozen=True)
class SineBoundPoly:
    """Polynomial in (x - shift_half_pi * pi/2) bounding sin on validity."""

    name: str
    poly: PolyCoeffs
    shift_half_pi: int
    side: Side
    validity: Interval = field(compare=False)

    @property
    def shift(self) -> Interval:
        return half_pi_multiple(self.shift_half_pi)

    def enclose(self, x: Interval | float) -> Interval:
        """Enclosure of the polynomial over x."""
        return horner_eval(self.poly, to_interval(x) - self.shift)

    @cached_property
    def _factored_gap(self) -> tuple[int, PolyCoeffs, Interval]:
        """Gap = y**order * (Q(y) + rho), |rho| <= |y|**(N+1-order)/(N+1)!."""
        taylor = PolyCoeffs(tuple(
            Fraction(_sin_derivative_at(self.shift_half_pi, d),
                     math.factorial(d))
            for d in range(GAP_TAYLOR_DEGREE + 1)))
        difference = taylor - self.poly
        if self.side is Side.UPPER:
            difference = -difference
        order = difference.lowest_order()
        tail = Interval.from_rational(
            Fraction(1, math.factorial(GAP_TAYLOR_DEGREE + 1)))
        return (order, difference.divide_by_power(order), tail)

    def gap(self, x: Interval | float) -> Interval:
        """Enclosure of sin - poly (lower) or poly - sin (upper) over x."""
        x = to_interval(x)
        y = x - self.shift
        if y.mag <= FACTORED_REACH:
            (order, quotient, tail) = self._factored_gap
            bound = (Interval.point(y.mag)
                     ** (GAP_TAYLOR_DEGREE + 1 - order) * tail).hi
            return (y ** order) * (horner_eval(quotient, y)
                                   + Interval(-bound, bound))
        direct = sin_enclosure(x) - self.enclose(x)
        return direct if self.side is Side.LOWER else -direct

    def gap_derivative(self, x: Interval | float) -> Interval:
        x = to_interval(x)
        slope = horner_eval(self.poly.derivative(), x - self.shift)
        direct = cos_enclosure(x) - slope
        return direct if self.side is Side.LOWER else -direct

    def __str__(self) -> str:
        return f"{self.name} ({self.side.value} bound on {self.validity})"


VALIDITY = rational_span(0, "5.78")

NEAR_ZERO_LOWER = SineBoundPoly(
    "near_zero_lower",
    PolyCoeffs.of(0, 1, 0, Fraction(-1, 6), 0, Fraction(1, 120), 0,
                  Fraction(-1, 5040), 0, Fraction(1, 482800)),
    0, Side.LOWER, VALIDITY)
NEAR_ZERO_UPPER = SineBoundPoly(
    "near_zero_upper",
    PolyCoeffs.of(0, 1, 0, Fraction(-1, 6), 0, Fraction(1, 120), 0,
                  Fraction(-1, 5040), 0, Fraction(1, 362880)),
    0, Side.UPPER, VALIDITY)
CUBIC_LOWER = SineBoundPoly(
    "cubic_lower", PolyCoeffs.of(0, 1, 0, Fraction(-1, 6)),
    0, Side.LOWER, VALIDITY)
QUINTIC_UPPER = SineBoundPoly(
    "quintic_upper",
    PolyCoeffs.of(0, 1, 0, Fraction(-1, 6), 0, Fraction(1, 120)),
    0, Side.UPPER, VALIDITY)
QUARTIC_LOWER = SineBoundPoly(
    "quartic_lower_three_halves_pi",
    PolyCoeffs.of(-1, 0, Fraction(1, 2), 0, Fraction(-1, 24)),
    3, Side.LOWER, VALIDITY)
QUADRATIC_UPPER = SineBoundPoly(
    "quadratic_upper_three_halves_pi",
    PolyCoeffs.of(-1, 0, Fraction(1, 2)),
    3, Side.UPPER, VALIDITY)

# The three (lower, upper) pairs, by the region of the proof they serve.
SANDWICHES: dict[str, tuple[SineBoundPoly, SineBoundPoly]] = {
    "near_zero": (NEAR_ZERO_LOWER, NEAR_ZERO_UPPER),
    "near_pi_small": (CUBIC_LOWER, QUINTIC_UPPER),
    "near_pi_large": (QUARTIC_LOWER, QUADRATIC_UPPER),
}


@lru_cache(maxsize=32)
def certify_sine_bound(bound: SineBoundPoly,
                       max_depth: int = DEFAULT_MAX_DEPTH
                       ) -> SignProof | SignRefutation:
    """Prove the gap between sin and the polynomial is >= 0 on validity.

    Raises DepthExceeded when the bisection cannot decide.
    """
    if not bound.validity.is_bounded:
        raise ValueError(f"{bound.name}: validity must be finite")
    outcome = prove_sign_on_interval(bound.gap, bound.validity,
                                     Sign.NONNEGATIVE, max_depth,
                                     derivative=bound.gap_derivative)
    logger.debug("%s certified: %s", bound.name, type(outcome).__name__)
    return outcome
