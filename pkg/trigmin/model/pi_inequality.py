"""F(lam, t, m), the reduced inequality near pi, and its partial derivatives.

F = lam s(t) + s(lam t) + lam (1 - lam^2) m^2/(m^2 - 1) P(t) where
s(z) = -1 + (z - 3pi/2)^2/2 - (z - 3pi/2)^4/4! is the quartic lower bound
of sin around 3pi/2 and P(t) = t - t^3/(6 m^2) + 1 - (t - 3pi/2)^2/2.
"""
from __future__ import annotations

from fractions import Fraction

from ..interval.core import Interval
from ..interval.elementary import THREE_HALVES_PI

APPENDIX_M = 81


def inverse_square(m: int) -> Interval:
    return Interval.from_rational(Fraction(1, m * m))


def mass(m: int) -> Interval:
    """m^2/(m^2 - 1) = 1 + 1/(m^2 - 1)."""
    return Interval.from_rational(Fraction(m * m, m * m - 1))


def quartic(s: Interval) -> Interval:
    z = s - THREE_HALVES_PI
    z2 = z.sqr()
    return z2 * 0.5 - 1 - z2.sqr() / 24


def quartic_d1(s: Interval) -> Interval:
    z = s - THREE_HALVES_PI
    return z - (z ** 3) / 6


def quartic_d2(s: Interval) -> Interval:
    return 1 - (s - THREE_HALVES_PI).sqr() * 0.5


def quartic_d3(s: Interval) -> Interval:
    return THREE_HALVES_PI - s


def bracket(t: Interval, u: Interval) -> Interval:
    """t - t^3 u/6 + 1 - (t - 3pi/2)^2/2, with u = 1/m^2."""
    return t + 1 - (t ** 3) * u / 6 - (t - THREE_HALVES_PI).sqr() * 0.5


def bracket_d1(t: Interval, u: Interval) -> Interval:
    return 1 - t.sqr() * u * 0.5 - (t - THREE_HALVES_PI)


def bracket_d2(t: Interval, u: Interval) -> Interval:
    return -(t * u) - 1


def F(lam: Interval, t: Interval, m: int = APPENDIX_M) -> Interval:
    weight = lam * (1 - lam.sqr()) * mass(m)
    return (lam * quartic(t) + quartic(lam * t)
            + weight * bracket(t, inverse_square(m)))


def F_t(lam: Interval, t: Interval, m: int = APPENDIX_M) -> Interval:
    weight = lam * (1 - lam.sqr()) * mass(m)
    return (lam * quartic_d1(t) + lam * quartic_d1(lam * t)
            + weight * bracket_d1(t, inverse_square(m)))


def F_tt(lam: Interval, t: Interval, m: int = APPENDIX_M) -> Interval:
    weight = lam * (1 - lam.sqr()) * mass(m)
    return (lam * quartic_d2(t) + lam.sqr() * quartic_d2(lam * t)
            + weight * bracket_d2(t, inverse_square(m)))


def F_lam(lam: Interval, t: Interval, m: int = APPENDIX_M) -> Interval:
    weight = (1 - lam.sqr() * 3) * mass(m)
    return (quartic(t) + t * quartic_d1(lam * t)
            + weight * bracket(t, inverse_square(m)))


def F_lamlam(lam: Interval, t: Interval, m: int = APPENDIX_M) -> Interval:
    return (t.sqr() * quartic_d2(lam * t)
            - lam * 6 * mass(m) * bracket(t, inverse_square(m)))


def F_lamlamlam(lam: Interval, t: Interval, m: int = APPENDIX_M) -> Interval:
    return (t ** 3 * quartic_d3(lam * t)
            - mass(m) * 6 * bracket(t, inverse_square(m)))


def F_u(lam: Interval, t: Interval, u: Interval) -> Interval:
    """Derivative of F in u = 1/m^2, using 1/(m^2 - 1) = -1 + 1/(1 - u)."""
    return (lam * (1 - lam.sqr()) / (1 - u).sqr()
            * bracket(t, Interval.point(1.0)))
