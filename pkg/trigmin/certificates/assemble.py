"""Run every proof step for a pair and merge them into a Certificate."""
from __future__ import annotations

from functools import partial
from typing import Callable, Sequence
import logging
import multiprocessing as mp
import time

from ..model.functions import PairMN
from . import far_region, near_pi, near_zero
from .appendix import APPENDIX_CONSTANTS, APPENDIX_VERIFIERS
from .results import (Certificate, Expectation, ScopeError, StepRecorder,
                      StepResult, ToleranceMode)

STEP_ORDER = (
    far_region.STEP_ID,
    near_zero.STEP_ID,
    near_pi.SMALL_STEP_ID,
    near_pi.LARGE_STEP_ID,
    *APPENDIX_VERIFIERS,
)

ACCEPTED_PAIRS = ((81, 42), (81, 66), (101, 52), (101, 82), (121, 62),
                  (121, 98))
REJECTED_PAIRS = ((81, 68), (82, 42), (79, 40))

logger = logging.getLogger(__name__)

_PAIR_STEPS: dict[str, Callable[..., StepResult]] = {
    near_zero.STEP_ID: near_zero.verify_near_zero,
    near_pi.SMALL_STEP_ID: near_pi.verify_near_pi_small,
    near_pi.LARGE_STEP_ID: near_pi.verify_near_pi_large,
}


def run_step(step_id: str, pair: PairMN,
             mode: ToleranceMode = ToleranceMode.PAPER, max_depth: int = 40,
             seed: int = 0) -> StepResult:
    """Verify one step; top level so that a process pool can pickle it."""
    start = time.perf_counter()
    if step_id == far_region.STEP_ID:
        result = far_region.verify_far_region(pair, mode, max_depth, seed)
    elif step_id in _PAIR_STEPS:
        result = _PAIR_STEPS[step_id](pair, mode, max_depth)
    elif step_id in APPENDIX_VERIFIERS:
        result = APPENDIX_VERIFIERS[step_id](mode, max_depth)
    else:
        raise KeyError(f"unknown step '{step_id}'")
    logger.info("%s for %s took %.2f s", step_id, pair,
                time.perf_counter() - start)
    return result


def check_scope(pair: PairMN) -> None:
    """Raise ScopeError unless the pair satisfies the theorem's hypotheses."""
    reasons = pair.scope_violations()
    if reasons:
        raise ScopeError(pair, reasons)


def assemble_certificate(pair: PairMN,
                         mode: ToleranceMode = ToleranceMode.PAPER,
                         max_depth: int = 40, seed: int = 0,
                         pool_size: int = 1) -> Certificate:
    """Verify all steps for an in-scope pair.

    pool_size=1 runs in this process; otherwise the steps are spread over a
    process pool. Steps are always reported in STEP_ORDER.
    """
    check_scope(pair)
    pfunc = partial(run_step, pair=pair, mode=mode, max_depth=max_depth,
                    seed=seed)
    if pool_size == 1:
        steps = [pfunc(step_id) for step_id in STEP_ORDER]
    else:
        with mp.Pool(processes=pool_size) as p:
            steps = p.map(pfunc, STEP_ORDER)
    certificate = Certificate(pair, tuple(steps), mode)
    logger.info("%s: %s", pair, certificate.verdict_label)
    return certificate


def _certificate_or_scope_error(pair: PairMN, mode: ToleranceMode,
                                max_depth: int, seed: int
                                ) -> Certificate | ScopeError:
    try:
        return assemble_certificate(pair, mode, max_depth, seed)
    except ScopeError as exc:
        logger.warning("%s", exc)
        return exc


def verify_batch(pairs: Sequence[PairMN],
                 mode: ToleranceMode = ToleranceMode.PAPER,
                 max_depth: int = 40, seed: int = 0, pool_size: int = 1
                 ) -> list[Certificate | ScopeError]:
    """Certificates (or scope rejections) for several pairs, in input order."""
    pfunc = partial(_certificate_or_scope_error, mode=mode,
                    max_depth=max_depth, seed=seed)
    if pool_size == 1:
        return [pfunc(pair) for pair in pairs]
    with mp.Pool(processes=pool_size) as p:
        return p.map(pfunc, pairs)


def acceptance_pairs() -> list[PairMN]:
    return [PairMN(m, n) for (m, n) in ACCEPTED_PAIRS + REJECTED_PAIRS]


def collect_constants(mode: ToleranceMode = ToleranceMode.PAPER
                      ) -> list[Expectation]:
    """Every printed approximate value, recomputed and compared."""
    record = StepRecorder("constants", mode)
    near_zero.near_zero_constants(record)
    near_pi.near_pi_large_constants(record)
    for step_id in APPENDIX_VERIFIERS:
        APPENDIX_CONSTANTS[step_id](record)
    return list(record.expectations)
