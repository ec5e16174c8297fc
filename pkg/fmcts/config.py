"""
Configuration loader for training and evaluation runs.

This module provides functionality to load run configuration from JSON files
and environment overrides from ``.env`` files.
"""

import json
import os
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from .types import EvalConfig, TrainConfig

THREADS_ENV = "FMCTS_THREADS"


def load_config_file(filepath: str | Path) -> dict[str, Any]:
    """Load a configuration file.

    Args:
        filepath: Path to the configuration file

    Returns:
        The parsed configuration
    """
    with open(filepath, encoding="utf-8") as f:
        config = json.load(f)
    if not isinstance(config, dict):
        raise ValueError(f"Configuration in {filepath} must be a JSON object")
    return config


def _merge(path: str | Path | None, overrides: dict[str, Any]) -> dict[str, Any]:
    values = load_config_file(path) if path is not None else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return values


def load_train_config(path: str | Path | None = None, **overrides: Any) -> TrainConfig:
    """Build a TrainConfig from an optional JSON file; keyword overrides win over file values."""
    return TrainConfig.model_validate(_merge(path, overrides))


def load_eval_config(path: str | Path | None = None, **overrides: Any) -> EvalConfig:
    return EvalConfig.model_validate(_merge(path, overrides))


def thread_limit(default: int | None = None) -> int:
    """Maximum number of evaluation games run concurrently.

    Reads ``FMCTS_THREADS`` (after loading a ``.env`` file if present) and falls
    back to ``default`` or the CPU count.
    """
    load_dotenv()
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            limit = int(value)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {value!r}") from None
        if limit < 1:
            raise ValueError(f"{THREADS_ENV} must be positive, got {limit}")
        return limit
    return default or os.cpu_count() or 1
