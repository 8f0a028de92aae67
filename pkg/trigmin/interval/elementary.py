"""Rigorous enclosures of pi, sin, cos and arccos."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .core import (Interval, Real, DomainError, ZERO, UNIT, to_interval)

PI_LOWER = Fraction(314159265358979323846, 10**20)
PI_UPPER = Fraction(314159265358979323847, 10**20)

# Terms kept in the reduced Taylor series; |r| <= pi/4 leaves a remainder
# below 1e-20.
TAYLOR_TERMS = 10
ARCCOS_WIDTH = 1e-13
# Wider arguments than this are answered with [-1, 1] directly.
_FULL_TURN = 6.2


def pi_multiple(q: int | Fraction) -> Interval:
    """Enclosure of q * pi for an exact rational q."""
    q = Fraction(q)
    (a, b) = sorted((q * PI_LOWER, q * PI_UPPER))
    return Interval(Interval.from_rational(a).lo, Interval.from_rational(b).hi)


PI = pi_multiple(1)
HALF_PI = pi_multiple(Fraction(1, 2))
TWO_PI = pi_multiple(2)
THREE_HALVES_PI = pi_multiple(Fraction(3, 2))


@lru_cache(maxsize=4096)
def half_pi_multiple(k: int) -> Interval:
    """Enclosure of k * pi / 2."""
    return pi_multiple(Fraction(k, 2))


def _factorial_series(first: int) -> tuple[Interval, ...]:
    return tuple(Interval.from_rational(
        Fraction((-1) ** j, math.factorial(2 * j + first)))
        for j in range(TAYLOR_TERMS))


_SIN_SERIES = _factorial_series(1)
_COS_SERIES = _factorial_series(0)
_SIN_REMAINDER = Interval.from_rational(
    Fraction(1, math.factorial(2 * TAYLOR_TERMS + 1)))
_COS_REMAINDER = Interval.from_rational(
    Fraction(1, math.factorial(2 * TAYLOR_TERMS)))


def _series_in_square(series: tuple[Interval, ...], r2: Interval) -> Interval:
    acc = series[-1]
    for c in reversed(series[:-1]):
        acc = acc * r2 + c
    return acc


def _remainder(r: Interval, order: int, factor: Interval) -> Interval:
    bound = (Interval.point(r.mag) ** order * factor).hi
    return Interval(-bound, bound)


def sin_taylor(r: Interval) -> Interval:
    """sin on a reduced argument, with Lagrange remainder."""
    body = r * _series_in_square(_SIN_SERIES, r.sqr())
    return body + _remainder(r, 2 * TAYLOR_TERMS + 1, _SIN_REMAINDER)


def cos_taylor(r: Interval) -> Interval:
    """cos on a reduced argument, with Lagrange remainder."""
    body = _series_in_square(_COS_SERIES, r.sqr())
    return body + _remainder(r, 2 * TAYLOR_TERMS, _COS_REMAINDER)


@lru_cache(maxsize=65536)
def _reduce(t: float) -> tuple[int, Interval]:
    """Write t = k*pi/2 + r; return (k mod 4, enclosure of r)."""
    k = round(t / (math.pi / 2))
    r = Interval.point(t) - half_pi_multiple(k)
    return (k % 4, r)


def _clamp(x: Interval) -> Interval:
    return Interval(max(x.lo, -1.0), min(x.hi, 1.0))


@lru_cache(maxsize=65536)
def sin_point(t: float) -> Interval:
    """Enclosure of sin(t) for a float t."""
    if not math.isfinite(t):
        return UNIT
    (quadrant, r) = _reduce(t)
    if quadrant == 0:
        value = sin_taylor(r)
    elif quadrant == 1:
        value = cos_taylor(r)
    elif quadrant == 2:
        value = -sin_taylor(r)
    else:
        value = -cos_taylor(r)
    return _clamp(value)


@lru_cache(maxsize=65536)
def cos_point(t: float) -> Interval:
    """Enclosure of cos(t) for a float t."""
    if not math.isfinite(t):
        return UNIT
    (quadrant, r) = _reduce(t)
    if quadrant == 0:
        value = cos_taylor(r)
    elif quadrant == 1:
        value = -sin_taylor(r)
    elif quadrant == 2:
        value = -cos_taylor(r)
    else:
        value = sin_taylor(r)
    return _clamp(value)


def _periodic_enclosure(x: Interval, point_fn, offset: int) -> Interval:
    """Hull of endpoint values, opened up to +-1 at possible extrema.

    Extrema sit at (2j + offset) * pi/2; even j gives +1, odd j gives -1.
    """
    if not x.is_bounded or x.hi - x.lo >= _FULL_TURN:
        return UNIT
    if x.is_point:
        return point_fn(x.lo)
    left = point_fn(x.lo)
    right = point_fn(x.hi)
    lo = min(left.lo, right.lo)
    hi = max(left.hi, right.hi)
    shift = offset / 2
    first = math.floor(x.lo / math.pi - shift) - 1
    last = math.ceil(x.hi / math.pi - shift) + 1
    for j in range(first, last + 1):
        if half_pi_multiple(2 * j + offset).overlaps(x):
            if j % 2 == 0:
                hi = 1.0
            else:
                lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def sin_enclosure(x: Interval | Real) -> Interval:
    """Enclosure of {sin t : t in x}, always inside [-1, 1]."""
    return _periodic_enclosure(to_interval(x), sin_point, 1)


def cos_enclosure(x: Interval | Real) -> Interval:
    """Enclosure of {cos t : t in x}, always inside [-1, 1]."""
    return _periodic_enclosure(to_interval(x), cos_point, 0)


def arccos_enclosure(a: int | Fraction | str) -> Interval:
    """Enclosure of arccos(a) by bisection on cos, which decreases on [0, pi].

    Raises DomainError when |a| > 1.
    """
    a = Fraction(a)
    if abs(a) > 1:
        raise DomainError(f"arccos is undefined at {a}")
    if a == 1:
        return ZERO
    if a == -1:
        return PI

    # cos(lower) > a is certified at every step
    (lower, trial) = (0.0, PI.hi)
    while trial - lower > ARCCOS_WIDTH:
        mid = 0.5 * (lower + trial)
        if mid in (lower, trial):
            break
        if cos_point(mid).lo > a:
            lower = mid
        else:
            trial = mid

    # cos(upper) < a is certified at every step
    (trial, upper) = (0.0, PI.hi)
    while upper - trial > ARCCOS_WIDTH:
        mid = 0.5 * (trial + upper)
        if mid in (trial, upper):
            break
        if cos_point(mid).hi < a:
            upper = mid
        else:
            trial = mid
    return Interval(lower, upper)
