#!/usr/bin/env python3
"""
Configuration management for mmm_calc
Loads all configuration from environment variables (optionally from a .env file)
"""

import os
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from .polycore import SOFT_LIMIT_N

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


@dataclass
class ConfigValidationError(Exception):
    """Exception raised for configuration validation errors"""
    field: str
    value: Any
    reason: str

    def __str__(self):
        return f"Configuration error for '{self.field}': {self.reason} (value: {self.value})"


class Config:
    """Configuration for the calculator and its CLI"""

    def _get_int(self, name: str, default: int, minimum: int = 1) -> int:
        raw = os.getenv(name)
        if raw is None or raw.strip() == '':
            return default
        try:
            value = int(raw)
        except ValueError:
            raise ConfigValidationError(name, raw, "not an integer") from None
        if value < minimum:
            raise ConfigValidationError(name, raw, f"must be >= {minimum}")
        return value

    def get_log_level(self) -> int:
        """Get the CLI log level (logs go to stderr)"""
        level = os.getenv('MMM_LOG_LEVEL', 'WARNING').upper()
        if level not in LOG_LEVELS:
            raise ConfigValidationError('MMM_LOG_LEVEL', level, f"must be one of {', '.join(LOG_LEVELS)}")
        return getattr(logging, level)

    def get_soft_limit(self) -> int:
        """n above which expansions print a cost warning"""
        return self._get_int('MMM_SOFT_LIMIT', SOFT_LIMIT_N)

    def get_verify_workers(self) -> int:
        """Thread-pool size for the verify command"""
        return self._get_int('MMM_VERIFY_WORKERS', 1)

    def get_metrics_file(self) -> Optional[str]:
        return os.getenv('MMM_METRICS_FILE') or None

    def get_random_seed(self) -> int:
        return self._get_int('MMM_RANDOM_SEED', 20240101, minimum=0)

    def get_all_config(self) -> Dict[str, Any]:
        """Get all configuration as a dictionary"""
        return {
            'log_level': logging.getLevelName(self.get_log_level()),
            'soft_limit': self.get_soft_limit(),
            'verify_workers': self.get_verify_workers(),
            'metrics_file': self.get_metrics_file(),
            'random_seed': self.get_random_seed(),
        }
