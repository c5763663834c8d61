"""Configuration management with YAML file and environment variable overrides."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

logger = logging.getLogger(__name__)


@dataclass
class Config:
    """Configuration for the ordrev decision engine and CLI."""

    # Slots instantiated per index class when verifying a witness
    witness_depth: int = 256
    # Sampled elements per coloring spot check
    coloring_samples: int = 64

    # Bounded oracle search
    oracle_max_target: int = 30
    oracle_max_coeff: int = 10
    oracle_workers: int = 1

    log_level: str = "WARNING"

    # Seed for coloring samples and random corpora
    seed: int = 0

    @classmethod
    def load(cls, path: Path | None = None) -> Config:
        """Load config: defaults, then the YAML file ($ORDREV_CONFIG), then env overrides."""
        config = cls()

        path = path or (Path(val).expanduser() if (val := os.environ.get("ORDREV_CONFIG")) else None)
        if path is not None:
            config.apply_file(path)

        if val := os.environ.get("ORDREV_WITNESS_DEPTH"):
            config.witness_depth = int(val)
        if val := os.environ.get("ORDREV_COLORING_SAMPLES"):
            config.coloring_samples = int(val)
        if val := os.environ.get("ORDREV_ORACLE_WORKERS"):
            config.oracle_workers = int(val)
        if val := os.environ.get("ORDREV_LOG_LEVEL"):
            config.log_level = val.upper()
        if val := os.environ.get("ORDREV_SEED"):
            config.seed = int(val)

        return config

    def apply_file(self, path: Path) -> None:
        """Overlay values from a YAML mapping; unknown keys are logged and skipped."""
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(data, dict):
            raise ValueError(f"{path}: expected a mapping at the top level")

        known = {f.name for f in fields(self)}
        for key, value in data.items():
            if key not in known:
                logger.warning(f"{path}: ignoring unknown config key '{key}'")
                continue
            current = getattr(self, key)
            setattr(self, key, type(current)(value))
