"""Empirical critical slope: for each odd m, where does min f = f(0) stop holding."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
import logging
import multiprocessing as mp

from ..model.functions import PairMN
from .minimize import global_min_f

logger = logging.getLogger(__name__)


class ScanRangeError(ValueError):
    """m_from and m_to must be odd, at least 3 and in order."""


@dataclass(frozen=True)
class SlopeScanRow:
    """One odd m and the largest even n for which min f = f(0) was found."""

    m: int
    n_max_works: int | None
    first_failure_n: int | None
    conjectured_n_max: int

    @property
    def slope(self) -> Fraction | None:
        if self.n_max_works is None:
            return None
        return Fraction(self.n_max_works, self.m)


def conjectured_n_max(m: int) -> int:
    """Largest even n with n < (4m + 2)/5."""
    n = (4 * m + 1) // 5
    return n - n % 2


def _works(m: int, n: int, density: float, tol: float) -> bool:
    estimate = global_min_f(PairMN(m, n), density, tol)
    logger.debug("(%d, %d): min f - f(0) = %.3g, works = %s", m, n,
                 estimate.margin, estimate.works)
    return estimate.works


def scan_row(m: int, density: float = 1.0, tol: float = 1e-9
             ) -> SlopeScanRow:
    """Binary search over even n for the boundary of the works region.

    The region is taken to be an initial run of even n; the search returns
    the last n inside it and the first n outside.
    """
    evens = list(range(2, m, 2))
    if _works(m, evens[-1], density, tol):
        return SlopeScanRow(m, evens[-1], None, conjectured_n_max(m))
    if not _works(m, evens[0], density, tol):
        return SlopeScanRow(m, None, evens[0], conjectured_n_max(m))
    (lo, hi) = (0, len(evens) - 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _works(m, evens[mid], density, tol):
            lo = mid
        else:
            hi = mid
    logger.info("m = %d: works up to n = %d, fails at n = %d", m, evens[lo],
                evens[hi])
    return SlopeScanRow(m, evens[lo], evens[hi], conjectured_n_max(m))


def check_scan_range(m_from: int, m_to: int) -> None:
    if m_from % 2 == 0 or m_to % 2 == 0:
        raise ScanRangeError(f"m_from and m_to must be odd, got {m_from}, "
                             f"{m_to}")
    if m_from < 3:
        raise ScanRangeError(f"m_from must be at least 3, got {m_from}")
    if m_from > m_to:
        raise ScanRangeError(f"m_from {m_from} exceeds m_to {m_to}")


def scan_slope(m_from: int, m_to: int, density: float = 1.0,
               tol: float = 1e-9, pool_size: int = 1) -> list[SlopeScanRow]:
    """One row per odd m in [m_from, m_to], sorted by m."""
    check_scan_range(m_from, m_to)
    ms = list(range(m_from, m_to + 1, 2))
    pfunc = partial(scan_row, density=density, tol=tol)
    if pool_size == 1:
        rows = [pfunc(m) for m in ms]
    else:
        with mp.Pool(processes=pool_size) as p:
            rows = p.map(pfunc, ms)
    return sorted(rows, key=lambda row: row.m)
