import sys
from pathlib import Path
from typing import Any, Optional

import click
from loguru import logger

from application.scenario_service import EXIT_USAGE, run_scenario
from domain.errors import InvalidArgumentError
from infrastructure.persistence.configuration_models import ScenarioConfig


def configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper())


def as_path(value: Optional[str]) -> Optional[Path]:
    return None if value is None else Path(value)


def explicit_overrides(**values: Any) -> dict[str, Any]:
    """Only the example parameters actually given on the command line."""
    return {key: value for key, value in values.items() if value is not None and value != () and value != []}


def build_config(command: str, **options: Any) -> ScenarioConfig:
    for key in ("channels_path", "codebook_path", "out_path", "csv_path", "codebook_out_path"):
        if key in options:
            options[key] = as_path(options[key])
    return ScenarioConfig(command=command, **options)


def run_command(ctx: click.Context, command: str, **options: Any) -> None:
    try:
        config = build_config(command, **options)
    except InvalidArgumentError as e:
        logger.error(str(e))
        ctx.exit(EXIT_USAGE)
    ctx.exit(run_scenario(config))
