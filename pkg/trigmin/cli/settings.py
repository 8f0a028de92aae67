"""Resolve run settings from defaults, the config file and the command line."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto
from pathlib import Path
from typing import Any, Mapping
import logging
import os
import sys

import psutil

from ..certificates.results import ToleranceMode
from ..interval.prover import DEFAULT_MAX_DEPTH

APP_SETTINGS_DIRECTORY_NAME = "trigmin"
CONFIG_FILENAME = "trigmin.conf"
THREADS_ENV = "TRIGMIN_THREADS"
DEFAULT_LOG_LEVEL = "ERROR"
SEED_LIMIT = 2 ** 64

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Invalid command line, config file or environment."""


class Platform(Enum):
    """Supported OS/platforms."""

    LINUX = auto()
    WINDOWS = auto()


class Command(Enum):
    VERIFY = "verify"
    CONSTANTS = "constants"
    ORACLE = "oracle"
    SCAN = "scan"
    BMN = "bmn"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


def get_platform() -> Platform:
    if sys.platform.startswith('win32'):
        return Platform.WINDOWS
    return Platform.LINUX


def get_settings_directory() -> Path:
    """Platform-dependent directory holding the optional config file.

    The directory is not created.
    """
    if get_platform() == Platform.WINDOWS:
        return Path(os.environ['APPDATA']) / APP_SETTINGS_DIRECTORY_NAME
    if 'XDG_CONFIG_HOME' in os.environ:
        return Path(os.environ['XDG_CONFIG_HOME']) / APP_SETTINGS_DIRECTORY_NAME
    if (Path(os.environ['HOME']) / '.config').is_dir():
        return (Path(os.environ['HOME']) / '.config'
                / APP_SETTINGS_DIRECTORY_NAME)
    return Path(os.environ['HOME']) / ('.' + APP_SETTINGS_DIRECTORY_NAME)


# key -> converter; keys mirror the long option names
CONFIG_KEYS = {
    "m": int,
    "n": int,
    "m_from": int,
    "m_to": int,
    "density": float,
    "output": str,
    "format": str,
    "max_depth": int,
    "seed": int,
    "paper_tolerances": str,
    "loglevel": str,
}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Read flat key=value lines; '#' starts a comment."""
    values: dict[str, str] = {}
    for (number, raw) in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise UsageError(f"{source}:{number}: expected key=value, "
                             f"got '{raw.strip()}'")
        (key, value) = (part.strip() for part in line.split('=', 1))
        key = key.replace('-', '_')
        if not key:
            raise UsageError(f"{source}:{number}: missing key")
        if key not in CONFIG_KEYS:
            logger.warning("%s:%d: unknown key '%s' ignored", source, number,
                           key)
            continue
        values[key] = value
    return values


def load_config(path: Path | str | None) -> dict[str, str]:
    """Values from the given file, or from the default file if it exists.

    An explicitly named file must exist; OSError propagates.
    """
    if path is not None:
        path = Path(path)
        return parse_config_text(path.read_text(encoding="utf-8"), str(path))
    try:
        default = get_settings_directory() / CONFIG_FILENAME
    except KeyError:
        logger.debug("No home directory; skipping the default config file.")
        return {}
    if not default.is_file():
        logger.debug("No config file at %s", default)
        return {}
    return parse_config_text(default.read_text(encoding="utf-8"),
                             str(default))


def resolve_pool_size(environ: Mapping[str, str] | None = None) -> int:
    """Worker count: physical cores, capped by TRIGMIN_THREADS if set."""
    environ = os.environ if environ is None else environ
    cores = psutil.cpu_count(logical=False) or 1
    if THREADS_ENV not in environ:
        return cores
    try:
        cap = int(environ[THREADS_ENV])
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got "
                         f"'{environ[THREADS_ENV]}'") from None
    if cap < 1:
        raise UsageError(f"{THREADS_ENV} must be at least 1, got {cap}")
    return min(cap, cores)


def _tolerance_mode(value: str) -> ToleranceMode:
    lowered = value.lower()
    if lowered in ("on", "true", "yes", "1"):
        return ToleranceMode.PAPER
    if lowered in ("off", "false", "no", "0"):
        return ToleranceMode.STRICT
    raise UsageError(f"paper_tolerances must be on or off, got '{value}'")


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, validated."""

    command: Command
    m: int | None = None
    n: int | None = None
    m_from: int | None = None
    m_to: int | None = None
    density: float = 1.0
    output: Path | None = None
    format: OutputFormat = OutputFormat.JSON
    max_depth: int = DEFAULT_MAX_DEPTH
    seed: int = 0
    tolerance_mode: ToleranceMode = ToleranceMode.PAPER
    batch: bool = False
    pool_size: int = 1
    loglevel: str = DEFAULT_LOG_LEVEL


def _convert(key: str, value: Any) -> Any:
    if value is None or not isinstance(value, str):
        return value
    try:
        return CONFIG_KEYS[key](value)
    except ValueError:
        raise UsageError(f"bad value for {key}: '{value}'") from None


def build_run_config(command: str, flags: Mapping[str, Any],
                     file_values: Mapping[str, str] | None = None,
                     pool_size: int = 1) -> RunConfig:
    """Merge defaults < config file < flags and validate the result.

    flags holds None for options not given on the command line.
    """
    merged: dict[str, Any] = {k: _convert(k, v)
                              for (k, v) in (file_values or {}).items()}
    for (key, value) in flags.items():
        if value is not None:
            merged[key] = _convert(key, value) if key in CONFIG_KEYS else value
    try:
        cmd = Command(command)
    except ValueError:
        raise UsageError(f"unknown command '{command}'") from None
    try:
        fmt = OutputFormat(str(merged.get("format", "json")).lower())
    except ValueError:
        raise UsageError(f"unknown format '{merged['format']}'") from None
    mode = _tolerance_mode(str(merged.get("paper_tolerances", "on")))
    output = merged.get("output")
    config = RunConfig(
        command=cmd,
        m=merged.get("m"),
        n=merged.get("n"),
        m_from=merged.get("m_from"),
        m_to=merged.get("m_to"),
        density=merged.get("density", 1.0),
        output=None if output in (None, "", "-") else Path(output),
        format=fmt,
        max_depth=merged.get("max_depth", DEFAULT_MAX_DEPTH),
        seed=merged.get("seed", 0),
        tolerance_mode=mode,
        batch=bool(merged.get("batch", False)),
        pool_size=pool_size,
        loglevel=str(merged.get("loglevel", DEFAULT_LOG_LEVEL)).upper())
    validate_run_config(config)
    return config


def validate_run_config(config: RunConfig) -> None:
    """Raise UsageError if a command-specific field is missing or invalid."""
    needs_pair = (config.command in (Command.ORACLE, Command.BMN)
                  or (config.command is Command.VERIFY and not config.batch))
    if needs_pair and (config.m is None or config.n is None):
        raise UsageError(f"{config.command.value} needs --m and --n")
    if config.command is Command.SCAN and (config.m_from is None
                                           or config.m_to is None):
        raise UsageError("scan needs --m-from and --m-to")
    if config.density < 1.0:
        raise UsageError(f"density must be at least 1, got {config.density}")
    if config.max_depth < 1:
        raise UsageError(f"max_depth must be at least 1, got "
                         f"{config.max_depth}")
    if not 0 <= config.seed < SEED_LIMIT:
        raise UsageError(f"seed must be a 64-bit unsigned integer, got "
                         f"{config.seed}")
    if config.loglevel not in logging._nameToLevel.keys():
        raise UsageError(f"'{config.loglevel}' is not a valid log level. "
                         "Use one of: "
                         + ', '.join(logging._nameToLevel.keys()))
