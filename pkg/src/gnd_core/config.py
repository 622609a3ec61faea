"""
Runtime settings for gnd-core, read from the environment.

    GND_LOG_LEVEL   logging level for the CLI (default WARNING)
    GND_CORPUS_DIR  directory searched for golden scripts before the bundled corpus
"""
import logging
import os
from typing import Optional

from pydantic import BaseModel, field_validator

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class Settings(BaseModel):
    log_level: str = "WARNING"
    corpus_dir: Optional[str] = None

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.strip().upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown log level: {value!r}")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            log_level=os.environ.get("GND_LOG_LEVEL", "WARNING"),
            corpus_dir=os.environ.get("GND_CORPUS_DIR") or None,
        )


def configure_logging(level: str):
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT)
