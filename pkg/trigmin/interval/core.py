"""Outward-rounded interval arithmetic on binary64 endpoints."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

# Error-free transformations are only trusted inside this magnitude window;
# outside it every rounded result is widened by one ulp unconditionally.
_EFT_MAX = 1e290
_EFT_MIN = 1e-200
_SPLITTER = 134217729.0  # 2**27 + 1

Real = Union[int, float, Fraction]


class IntervalError(ValueError):
    """An interval was built from NaN or from reversed endpoints."""


class DivisorContainsZero(ArithmeticError):
    """Division by an interval that contains zero."""


class DomainError(ValueError):
    """Argument outside the domain of an elementary function."""


def _down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


def _sum_error(a: float, b: float, s: float) -> float:
    """Exact value of (a + b) - s (TwoSum)."""
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    high = t - (t - a)
    return (high, a - high)


def _product_error(a: float, b: float, p: float) -> float:
    """Exact value of a * b - p (Dekker TwoProduct)."""
    (ah, al) = _split(a)
    (bh, bl) = _split(b)
    return al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _sum_trusted(a: float, b: float, s: float) -> bool:
    return abs(a) <= _EFT_MAX and abs(b) <= _EFT_MAX and abs(s) <= _EFT_MAX


def _product_trusted(*values: float) -> bool:
    return all(_EFT_MIN <= abs(v) <= _EFT_MAX for v in values)


def add_down(a: float, b: float) -> float:
    """Largest float not above a + b."""
    s = a + b
    if not _sum_trusted(a, b, s):
        return _down(s)
    return s if _sum_error(a, b, s) >= 0.0 else _down(s)


def add_up(a: float, b: float) -> float:
    """Smallest float not below a + b."""
    s = a + b
    if not _sum_trusted(a, b, s):
        return _up(s)
    return s if _sum_error(a, b, s) <= 0.0 else _up(s)


def mul_down(a: float, b: float) -> float:
    """Largest float not above a * b (0 * inf is taken as 0)."""
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if not _product_trusted(a, b, p):
        return _down(p)
    return p if _product_error(a, b, p) >= 0.0 else _down(p)


def mul_up(a: float, b: float) -> float:
    """Smallest float not below a * b (0 * inf is taken as 0)."""
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if not _product_trusted(a, b, p):
        return _up(p)
    return p if _product_error(a, b, p) <= 0.0 else _up(p)


def _quotient_error_sign(a: float, b: float, q: float) -> float:
    """Sign of a / b - q, from the exact residual a - q * b."""
    p = q * b
    residual = (a - p) - _product_error(q, b, p)
    return residual if b > 0.0 else -residual


def div_down(a: float, b: float) -> float:
    """Largest float not above a / b; b must be nonzero."""
    if a == 0.0:
        return 0.0
    q = a / b
    if not _product_trusted(a, b, q):
        return _down(q)
    return q if _quotient_error_sign(a, b, q) >= 0.0 else _down(q)


def div_up(a: float, b: float) -> float:
    """Smallest float not below a / b; b must be nonzero."""
    if a == 0.0:
        return 0.0
    q = a / b
    if not _product_trusted(a, b, q):
        return _up(q)
    return q if _quotient_error_sign(a, b, q) <= 0.0 else _up(q)


def _pow_down(x: float, k: int) -> float:
    result = 1.0
    for _ in range(k):
        result = mul_down(result, x)
    return result


def _pow_up(x: float, k: int) -> float:
    result = 1.0
    for _ in range(k):
        result = mul_up(result, x)
    return result


def _as_endpoint(value: Real) -> float:
    if isinstance(value, float):
        return value
    converted = float(value)
    if converted != value:
        raise IntervalError(f"{value!r} is not exactly representable; "
                            "use Interval.from_rational")
    return converted


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi] that encloses an exact real quantity."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo = _as_endpoint(self.lo)
        hi = _as_endpoint(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise IntervalError("interval endpoint is NaN")
        if lo > hi:
            raise IntervalError(f"reversed endpoints [{lo!r}, {hi!r}]")
        if lo == math.inf or hi == -math.inf:
            raise IntervalError("interval lies entirely at infinity")
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    @classmethod
    def point(cls, x: float) -> Interval:
        return cls(x, x)

    @classmethod
    def from_rational(cls, q: int | Fraction) -> Interval:
        """Tightest float interval around an exact rational."""
        q = Fraction(q)
        f = float(q)
        exact = Fraction(f)
        if exact == q:
            return cls(f, f)
        if exact < q:
            return cls(f, _up(f))
        return cls(_down(f), f)

    @classmethod
    def hull(cls, *items: Interval | Real) -> Interval:
        intervals = [to_interval(item) for item in items]
        return cls(min(x.lo for x in intervals),
                   max(x.hi for x in intervals))

    @property
    def width(self) -> float:
        """Upper bound on hi - lo."""
        return add_up(self.hi, -self.lo)

    @property
    def mid(self) -> float:
        """Midpoint; 0 for the whole line, the finite end of a half-line."""
        if self.lo == self.hi:
            return self.lo
        if not self.is_bounded:
            if math.isinf(self.lo) and math.isinf(self.hi):
                return 0.0
            return self.hi if math.isinf(self.lo) else self.lo
        spread = self.hi - self.lo
        if math.isinf(spread):
            return 0.5 * self.lo + 0.5 * self.hi
        return self.lo + 0.5 * spread

    @property
    def mag(self) -> float:
        """Largest absolute value in the interval."""
        return max(-self.lo, self.hi)

    @property
    def mig(self) -> float:
        """Smallest absolute value in the interval."""
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, value: Interval | Real) -> bool:
        if isinstance(value, Interval):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= value <= self.hi

    def __contains__(self, value: Interval | Real) -> bool:
        return self.contains(value)

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: Interval) -> Interval | None:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def split(self) -> tuple[Interval, Interval]:
        if not self.is_bounded:
            raise IntervalError(f"cannot split unbounded interval {self}")
        m = self.mid
        return (Interval(self.lo, m), Interval(m, self.hi))

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __abs__(self) -> Interval:
        return Interval(self.mig, self.mag)

    def __add__(self, other: Interval | Real) -> Interval:
        other = to_interval(other)
        return Interval(add_down(self.lo, other.lo),
                        add_up(self.hi, other.hi))

    def __radd__(self, other: Real) -> Interval:
        return self + other

    def __sub__(self, other: Interval | Real) -> Interval:
        other = to_interval(other)
        return Interval(add_down(self.lo, -other.hi),
                        add_up(self.hi, -other.lo))

    def __rsub__(self, other: Real) -> Interval:
        return to_interval(other) - self

    def __mul__(self, other: Interval | Real) -> Interval:
        other = to_interval(other)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0.0:
            if c >= 0.0:
                return Interval(mul_down(a, c), mul_up(b, d))
            if d <= 0.0:
                return Interval(mul_down(b, c), mul_up(a, d))
            return Interval(mul_down(b, c), mul_up(b, d))
        if b <= 0.0:
            if c >= 0.0:
                return Interval(mul_down(a, d), mul_up(b, c))
            if d <= 0.0:
                return Interval(mul_down(b, d), mul_up(a, c))
            return Interval(mul_down(a, d), mul_up(a, c))
        if c >= 0.0:
            return Interval(mul_down(a, d), mul_up(b, d))
        if d <= 0.0:
            return Interval(mul_down(b, c), mul_up(a, c))
        return Interval(min(mul_down(a, d), mul_down(b, c)),
                        max(mul_up(a, c), mul_up(b, d)))

    def __rmul__(self, other: Real) -> Interval:
        return self * other

    def __truediv__(self, other: Interval | Real) -> Interval:
        other = to_interval(other)
        if other.lo <= 0.0 <= other.hi:
            raise DivisorContainsZero(f"divisor {other} contains zero")
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if c > 0.0:
            if a >= 0.0:
                return Interval(div_down(a, d), div_up(b, c))
            if b <= 0.0:
                return Interval(div_down(a, c), div_up(b, d))
            return Interval(div_down(a, c), div_up(b, c))
        if a >= 0.0:
            return Interval(div_down(b, d), div_up(a, c))
        if b <= 0.0:
            return Interval(div_down(b, c), div_up(a, d))
        return Interval(div_down(b, d), div_up(a, d))

    def __rtruediv__(self, other: Real) -> Interval:
        return to_interval(other) / self

    def divide_unbounded(self, other: Interval | Real) -> Interval:
        """Quotient that may be unbounded when the divisor touches zero.

        The only way infinite endpoints enter a computation.
        """
        other = to_interval(other)
        if not other.contains(0.0):
            return self / other
        if self.lo > 0.0:
            if other.lo == 0.0 < other.hi:
                return Interval(div_down(self.lo, other.hi), math.inf)
            if other.lo < 0.0 == other.hi:
                return Interval(-math.inf, div_up(self.lo, other.lo))
        elif self.hi < 0.0:
            if other.lo == 0.0 < other.hi:
                return Interval(-math.inf, div_up(self.hi, other.hi))
            if other.lo < 0.0 == other.hi:
                return Interval(div_down(self.hi, other.lo), math.inf)
        return ENTIRE

    def __pow__(self, k: int) -> Interval:
        if k < 0:
            raise ValueError("negative powers are not supported")
        if k == 0:
            return ONE
        if self.lo >= 0.0:
            return Interval(_pow_down(self.lo, k), _pow_up(self.hi, k))
        if self.hi <= 0.0:
            if k % 2 == 0:
                return Interval(_pow_down(-self.hi, k), _pow_up(-self.lo, k))
            return Interval(-_pow_up(-self.lo, k), -_pow_down(-self.hi, k))
        if k % 2 == 0:
            return Interval(0.0, _pow_up(self.mag, k))
        return Interval(-_pow_up(-self.lo, k), _pow_up(self.hi, k))

    def sqr(self) -> Interval:
        return self ** 2

    def __str__(self) -> str:
        return f"[{self.lo:.17g}, {self.hi:.17g}]"


ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)
UNIT = Interval(-1.0, 1.0)
ENTIRE = Interval(-math.inf, math.inf)


def to_interval(value: Interval | Real) -> Interval:
    """Coerce floats to points and exact rationals to tight enclosures."""
    if isinstance(value, Interval):
        return value
    if isinstance(value, float):
        return Interval.point(value)
    if isinstance(value, (int, Fraction)):
        return Interval.from_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Interval")


@dataclass(frozen=True)
class PolyCoeffs:
    """Polynomial with exact rational coefficients, constant term first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coefficients = [Fraction(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, 'coefficients', tuple(coefficients))

    @classmethod
    def of(cls, *coefficients: int | Fraction | str) -> PolyCoeffs:
        return cls(tuple(Fraction(c) for c in coefficients))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def lowest_order(self) -> int:
        """Index of the first nonzero coefficient."""
        for i, c in enumerate(self.coefficients):
            if c != 0:
                return i
        raise ValueError("the zero polynomial has no lowest order term")

    def divide_by_power(self, k: int) -> PolyCoeffs:
        """Exact quotient by x**k; the k lowest coefficients must vanish."""
        if any(c != 0 for c in self.coefficients[:k]):
            raise ValueError(f"polynomial is not divisible by x**{k}")
        return PolyCoeffs(self.coefficients[k:])

    def derivative(self) -> PolyCoeffs:
        return PolyCoeffs(tuple(i * c for i, c in
                                enumerate(self.coefficients) if i > 0))

    def scale(self, factor: int | Fraction) -> PolyCoeffs:
        return PolyCoeffs(tuple(factor * c for c in self.coefficients))

    def compose_scale(self, factor: int | Fraction) -> PolyCoeffs:
        """Coefficients of p(factor * x)."""
        return PolyCoeffs(tuple(c * Fraction(factor) ** i
                                for i, c in enumerate(self.coefficients)))

    def __add__(self, other: PolyCoeffs) -> PolyCoeffs:
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (size - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (size
                                                   - len(other.coefficients))
        return PolyCoeffs(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> PolyCoeffs:
        return self.scale(-1)

    def __sub__(self, other: PolyCoeffs) -> PolyCoeffs:
        return self + (-other)

    def __mul__(self, other: PolyCoeffs) -> PolyCoeffs:
        if not self.coefficients or not other.coefficients:
            return PolyCoeffs(())
        product = [Fraction(0)] * (len(self.coefficients)
                                   + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return PolyCoeffs(tuple(product))

    def __call__(self, x: int | Fraction) -> Fraction:
        """Exact evaluation at a rational point."""
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    @cached_property
    def enclosures(self) -> tuple[Interval, ...]:
        return tuple(Interval.from_rational(c) for c in self.coefficients)


def horner_eval(p: PolyCoeffs, x: Interval | Real) -> Interval:
    """Enclose {p(t) : t in x} by Horner's scheme on interval coefficients."""
    x = to_interval(x)
    if not p.coefficients:
        return ZERO
    coefficients = p.enclosures
    acc = coefficients[-1]
    for c in reversed(coefficients[:-1]):
        acc = acc * x + c
    return acc
