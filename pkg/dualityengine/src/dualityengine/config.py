# config.py
"""Runtime settings read from the environment."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator

PACKAGE_DATA_DIR = Path(__file__).resolve().parent / "data"


class Settings(BaseModel):
    log_level: str = "WARNING"
    data_dir: Path = PACKAGE_DATA_DIR
    seed: int = 0
    leibniz_trials: int = Field(default=1000, ge=1)
    det_check_limit: int = Field(default=60, ge=0)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if not isinstance(logging.getLevelName(value), int):
            raise ValueError(f"unknown log level: {value}")
        return value

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            log_level=os.getenv("DUALITYENGINE_LOG_LEVEL", "WARNING"),
            data_dir=Path(os.getenv("DUALITYENGINE_DATA_DIR", str(PACKAGE_DATA_DIR))),
            seed=int(os.getenv("DUALITYENGINE_SEED", "0")),
            leibniz_trials=int(os.getenv("DUALITYENGINE_LEIBNIZ_TRIALS", "1000")),
            det_check_limit=int(os.getenv("DUALITYENGINE_DET_CHECK_LIMIT", "60")),
        )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def configure_logging(level: Optional[str] = None) -> None:
    """Send library logs to stderr so report output on stdout stays untouched."""
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
