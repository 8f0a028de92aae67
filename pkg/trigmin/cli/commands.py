"""The five commands; each returns an exit code and the report text."""
from __future__ import annotations

from enum import IntEnum
import logging

from ..certificates.assemble import (acceptance_pairs, assemble_certificate,
                                     collect_constants, verify_batch)
from ..certificates.results import ScopeError, Verdict
from ..model.functions import PairError, PairMN, b_mn_reference
from ..oracle.minimize import global_min_f
from ..oracle.scan import ScanRangeError, scan_slope
from . import reports
from .settings import RunConfig, UsageError

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    DOES_NOT_WORK = 1
    OUT_OF_SCOPE = 2
    NOT_PROVED = 3
    USAGE = 64
    IO_ERROR = 74


CommandOutcome = tuple[ExitCode, str | None]


def pair_from_config(config: RunConfig) -> PairMN:
    try:
        return PairMN(config.m, config.n)  # type: ignore[arg-type]
    except PairError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(config: RunConfig) -> CommandOutcome:
    """Certificate for one pair, or for the acceptance list with --batch."""
    if config.batch:
        items = verify_batch(acceptance_pairs(), config.tolerance_mode,
                             config.max_depth, config.seed, config.pool_size)
        failed = [c for c in items if not isinstance(c, ScopeError)
                  and c.verdict is not Verdict.CONDITION_2_HOLDS]
        code = ExitCode.NOT_PROVED if failed else ExitCode.OK
        return (code, reports.render_certificates(items, config.format,
                                                  batch=True))
    pair = pair_from_config(config)
    try:
        certificate = assemble_certificate(pair, config.tolerance_mode,
                                           config.max_depth, config.seed,
                                           config.pool_size)
    except ScopeError as exc:
        logger.error("%s", exc)
        return (ExitCode.OUT_OF_SCOPE, None)
    code = (ExitCode.OK if certificate.verdict is Verdict.CONDITION_2_HOLDS
            else ExitCode.NOT_PROVED)
    return (code, reports.render_certificates([certificate], config.format))


def cmd_constants(config: RunConfig) -> CommandOutcome:
    expectations = collect_constants(config.tolerance_mode)
    code = (ExitCode.OK if all(e.ok for e in expectations)
            else ExitCode.NOT_PROVED)
    return (code, reports.render_constants(expectations,
                                           config.tolerance_mode,
                                           config.format))


def cmd_oracle(config: RunConfig) -> CommandOutcome:
    estimate = global_min_f(pair_from_config(config), config.density)
    code = ExitCode.OK if estimate.works else ExitCode.DOES_NOT_WORK
    return (code, reports.render_oracle(estimate, config.format))


def cmd_scan(config: RunConfig) -> CommandOutcome:
    try:
        rows = scan_slope(config.m_from, config.m_to,  # type: ignore[arg-type]
                          config.density, pool_size=config.pool_size)
    except ScanRangeError as exc:
        raise UsageError(str(exc)) from None
    return (ExitCode.OK, reports.render_scan(rows, config.format))


def cmd_bmn(config: RunConfig) -> CommandOutcome:
    pair = pair_from_config(config)
    reference = b_mn_reference(pair)
    estimate = global_min_f(pair, config.density)
    return (ExitCode.OK, reports.render_bmn(reference, estimate,
                                            config.format))
