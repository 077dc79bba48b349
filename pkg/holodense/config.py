"""Configuration loading and the shared run log"""
import logging
import os
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional

import yaml

from .errors import InputError

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / 'config' / 'holodense.yaml'
GUARD_ENV_VAR = 'HOLODENSE_GUARD'

_LEVELS = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'SUCCESS': logging.INFO,
    'WARN': logging.WARNING,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
}


def load_config(path=None) -> Dict:
    """Load the YAML config; HOLODENSE_GUARD overrides every enumeration guard."""
    config_path = Path(path) if path else DEFAULT_CONFIG_PATH
    try:
        with open(config_path, encoding='utf-8') as fh:
            config = yaml.safe_load(fh)
    except OSError as e:
        raise InputError(f"Cannot read config {config_path}: {e}") from e

    override = os.environ.get(GUARD_ENV_VAR)
    if override:
        try:
            limit = int(override)
        except ValueError:
            raise InputError(f"{GUARD_ENV_VAR} must be an integer, got {override!r}")
        for key in config['guards']:
            config['guards'][key] = limit
    return config


def setup_logging(config: Dict):
    log_cfg = config['logging']
    logging.basicConfig(
        level=_LEVELS.get(str(log_cfg['level']).upper(), logging.INFO),
        format=log_cfg['format'],
        datefmt=log_cfg['datefmt'],
    )


class LogCapture:
    """Bounded run log; every entry is also forwarded to the logging module."""

    def __init__(self, config: Optional[Dict] = None):
        self.capture_size = config['logging']['capture_size'] if config else 50
        self.logs = []
        self.logger = logging.getLogger('holodense')

    def add(self, message, level="INFO"):
        timestamp = datetime.now().strftime("%H:%M:%S")
        self.logs.append(f"[{timestamp}] [{level}] {message}")
        if len(self.logs) > self.capture_size:
            self.logs = self.logs[-self.capture_size:]
        self.logger.log(_LEVELS.get(level, logging.INFO), message)
        return "\n".join(self.logs)
