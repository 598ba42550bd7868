# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Runtime settings from the environment, cavity configuration files and the
# order-preserving worker pool used by the scans.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Literal, TypeVar

from aws_lambda_powertools import Logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .constants import DEFAULT_THREADS, SERVICE_NAME
from .exceptions import InvalidConfigFile
from .types import CavityConfig

logger = Logger(service=SERVICE_NAME, child=True)

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "CAVSQ_THREADS"
LOG_LEVEL_ENV = "POWERTOOLS_LOG_LEVEL"


class RuntimeSettings(BaseModel):
    """Process-wide knobs read from the environment.

    Attributes:
        threads (int): worker threads for grid evaluation (CAVSQ_THREADS)
        log_level (str): logging level (POWERTOOLS_LOG_LEVEL)
    """

    model_config = ConfigDict(frozen=True)

    threads: int = Field(gt=0)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"

    @staticmethod
    def from_env() -> RuntimeSettings:
        default_threads = min(DEFAULT_THREADS, os.cpu_count() or 1)
        return RuntimeSettings(
            threads=os.environ.get(THREADS_ENV, default_threads),
            log_level=os.environ.get(LOG_LEVEL_ENV, "INFO").upper(),
        )


def parse_config_text(text: str, source: str = "<string>") -> CavityConfig:
    """Parse flat `key=value` lines into a CavityConfig.

    Blank lines and `#` comments are ignored; keys are CavityConfig field names.

    Raises:
        InvalidConfigFile: malformed line, duplicate key or failed validation
    """
    values: dict[str, str] = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise InvalidConfigFile(
                path=source, reason=f"line {number}: expected key=value"
            )
        if key in values:
            raise InvalidConfigFile(
                path=source, reason=f"line {number}: duplicate key {key!r}"
            )
        values[key] = value

    try:
        return CavityConfig.model_validate(values)
    except ValidationError as err:
        raise InvalidConfigFile(path=source, reason=str(err))


def load_config_file(path: str | Path) -> CavityConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise InvalidConfigFile(path=str(path), reason=str(err))
    config = parse_config_text(text, source=str(path))
    logger.debug("Loaded cavity configuration", extra={"path": str(path)})
    return config


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], settings: RuntimeSettings | None = None
) -> list[R]:
    """Map `fn` over `items` on a thread pool; results keep the input order."""
    items = list(items)
    settings = settings or RuntimeSettings.from_env()
    if settings.threads == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=settings.threads) as executor:
        return list(executor.map(fn, items))
