"""Command-line entry point."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence
import argparse
import logging
import sys

from .cli import commands
from .cli.commands import ExitCode
from .cli.settings import (CONFIG_KEYS, DEFAULT_LOG_LEVEL, THREADS_ENV,
                           Command, OutputFormat, UsageError,
                           build_run_config, load_config, resolve_pool_size)

APP_TITLE = "trigmin"
APP_VERSION = "0.1.0"

logger = logging.getLogger(__name__)

COMMANDS = {
    Command.VERIFY: commands.cmd_verify,
    Command.CONSTANTS: commands.cmd_constants,
    Command.ORACLE: commands.cmd_oracle,
    Command.SCAN: commands.cmd_scan,
    Command.BMN: commands.cmd_bmn,
}


class _Parser(argparse.ArgumentParser):
    """Raise UsageError instead of exiting on a bad command line."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def setup_logging(log_level: str) -> None:
    """Format the modular logger; messages go to stderr."""
    if log_level not in logging._nameToLevel.keys():
        raise ValueError(f"'{log_level}' is not a valid log level. "
                         "Use one of: "
                         + ', '.join(logging._nameToLevel.keys()))
    logger = logging.getLogger(__package__)
    logger.setLevel(log_level)
    if logger.handlers:
        return
    handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter(("%(asctime)s %(levelname)s : "
                                   "line %(lineno)d in %(module)s : "
                                   "%(message)s"), datefmt='%H:%M:%S')
    handler.setFormatter(formatter)
    logger.addHandler(handler)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--m', help="odd m of the pair (m, n)")
    common.add_argument('--n', help="even n of the pair (m, n)")
    common.add_argument('--m-from', dest='m_from',
                        help="first odd m of a scan")
    common.add_argument('--m-to', dest='m_to', help="last odd m of a scan")
    common.add_argument('--density',
                        help="oracle grid density multiplier, at least 1")
    common.add_argument('-o', '--output',
                        help="report file; default stdout")
    common.add_argument('--format',
                        choices=[f.value for f in OutputFormat])
    common.add_argument('--max-depth', dest='max_depth',
                        help="bisection depth of the interval proofs")
    common.add_argument('--seed', help="seed of the sampled sanity checks")
    common.add_argument('--paper-tolerances', dest='paper_tolerances',
                        choices=['on', 'off'],
                        help="compare with the printed precision (on) or "
                        "demand correct rounding (off)")
    common.add_argument('--batch', action='store_true', default=None,
                        help="verify: run the acceptance pair list")
    common.add_argument('--config',
                        help="key=value settings file; flags override it")
    help_message = ("Choose stderr logging level."
                    f" Default: {DEFAULT_LOG_LEVEL}."
                    " Valid values: "
                    + ", ".join(logging._nameToLevel.keys()))
    common.add_argument('-log', '--loglevel', help=help_message)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="python -m " + APP_TITLE,
                     description="Certify min f = f(0) for "
                     "f = (n sin x - sin nx)/(m sin x - sin mx).",
                     epilog=f"{THREADS_ENV} caps the number of worker "
                     "processes.")
    parser.add_argument('--version', action='version',
                        version=f"{APP_TITLE} {APP_VERSION}")
    subparsers = parser.add_subparsers(dest='command', required=True)
    common = _common_options()
    for command in Command:
        subparsers.add_parser(command.value, parents=[common])
    return parser


def write_report(report: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(report)
        sys.stdout.flush()
        return
    output.write_text(report, encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    try:
        args = vars(build_parser().parse_args(argv))
        file_values = load_config(args.pop('config'))
        command = args.pop('command')
        flags = {k: v for (k, v) in args.items()
                 if k in CONFIG_KEYS or k == 'batch'}
        config = build_run_config(command, flags, file_values,
                                  pool_size=resolve_pool_size())
    except UsageError as exc:
        print(f"{APP_TITLE}: usage error: {exc}", file=sys.stderr)
        return ExitCode.USAGE
    except OSError as exc:
        print(f"{APP_TITLE}: cannot read config: {exc}", file=sys.stderr)
        return ExitCode.IO_ERROR
    setup_logging(config.loglevel)
    logger.info("running %s", config.command.value)
    try:
        (code, report) = COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"{APP_TITLE}: usage error: {exc}", file=sys.stderr)
        return ExitCode.USAGE
    if report is not None:
        try:
            write_report(report, config.output)
        except OSError as exc:
            logger.error("cannot write report: %s", exc)
            print(f"{APP_TITLE}: cannot write report: {exc}",
                  file=sys.stderr)
            return ExitCode.IO_ERROR
    return code
