#!/usr/bin/env python3
"""
Workbench Configuration

Loads config/workbench_config.json into pydantic settings. A missing or
unreadable file falls back to the built-in defaults.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/workbench_config.json"
DEFAULT_SEED = 20240229


class CorpusSettings(BaseModel):
    default_max_order: int = Field(3, ge=1)
    seed: int = DEFAULT_SEED
    sample_size: int = Field(40, ge=1)
    cache_dir: Optional[str] = "data/cache"


class SuiteSettings(BaseModel):
    max_order: Dict[str, int] = Field(default_factory=dict)
    # None checks every member pair
    product_pairs: Optional[int] = Field(None, ge=0)
    equalizer_pairs: Optional[int] = Field(None, ge=0)


class WitnessSearchSettings(BaseModel):
    max_c_order: Optional[int] = Field(None, ge=1)


class ParallelismSettings(BaseModel):
    jobs: int = Field(1, ge=1)


class LoggingSettings(BaseModel):
    level: str = "INFO"


class WorkbenchConfig(BaseModel):
    corpus: CorpusSettings = Field(default_factory=CorpusSettings)
    suites: SuiteSettings = Field(default_factory=SuiteSettings)
    witness_search: WitnessSearchSettings = Field(default_factory=WitnessSearchSettings)
    parallelism: ParallelismSettings = Field(default_factory=ParallelismSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    def suite_max_order(self, suite: str, fallback: int) -> int:
        return self.suites.max_order.get(suite, fallback)


def load_workbench_config(path: Union[str, Path, None] = None) -> WorkbenchConfig:
    """Read the JSON config; any failure logs a warning and yields defaults"""
    config_path = Path(path or DEFAULT_CONFIG_PATH)
    try:
        with open(config_path, "r") as f:
            raw = json.load(f)
        config = WorkbenchConfig.model_validate(raw)
        logger.info(f"✅ Loaded workbench config from {config_path}")
        return config
    except FileNotFoundError:
        logger.warning(f"⚠️  Config file {config_path} not found, using defaults")
    except Exception as e:
        logger.warning(f"⚠️  Failed to load config {config_path}: {e}, using defaults")
    return WorkbenchConfig()
