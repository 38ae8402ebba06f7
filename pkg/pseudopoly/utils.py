#!/usr/bin/env python3
"""
pseudopoly Utilities
Helper functions for logging setup, configuration management and JSON output
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .errors import FormatError

logger = logging.getLogger('PseudoPoly.Utils')

_installed_handlers: List[logging.Handler] = []


def create_config_dir() -> Path:
    """Create pseudopoly configuration directory"""
    config_dir = Path.home() / '.pseudopoly'
    config_dir.mkdir(exist_ok=True, parents=True)
    (config_dir / 'config').mkdir(exist_ok=True)
    (config_dir / 'logs').mkdir(exist_ok=True)
    return config_dir


def setup_logging(level: str = 'WARNING', log_file: Optional[str] = None):
    """Setup logging configuration for pseudopoly"""
    log_level = getattr(logging, str(level).upper(), logging.WARNING)

    formatter = logging.Formatter(
        '%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    root_logger = logging.getLogger()
    # repeated calls (one per CLI invocation in tests) replace our own handlers only
    for handler in _installed_handlers:
        root_logger.removeHandler(handler)
    _installed_handlers.clear()

    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)
    root_logger.setLevel(log_level)
    root_logger.addHandler(console_handler)
    _installed_handlers.append(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_path)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)
        _installed_handlers.append(file_handler)


def parse_seed_range(text: str) -> Tuple[int, int]:
    """Parse ``A..B`` (inclusive) or a single seed ``A``."""
    try:
        if '..' in text:
            start, end = (int(part) for part in text.split('..', 1))
        else:
            start = end = int(text)
    except ValueError:
        raise FormatError(f"Seed range must look like 'A..B', got {text!r}", seeds=text) from None
    if end < start:
        raise FormatError(f"Empty seed range {text!r}", seeds=text)
    return start, end


def parse_config_value(text: str) -> Any:
    """Interpret a command-line value as JSON when possible, else as a string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def dump_json(data: Any) -> str:
    """Stable JSON text: fixed key order from the producers, UTF-8 names kept."""
    return json.dumps(data, indent=2, ensure_ascii=False, default=str) + '\n'


def write_output(data: Any, output: Optional[str]) -> None:
    """Write JSON to ``output`` or stdout"""
    text = dump_json(data)
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        logger.info(f"Report written to {path}")
    else:
        print(text, end='')


def _merge_defaults(config: Dict[str, Any], defaults: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(defaults)
    for key, value in config.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge_defaults(value, merged[key])
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """Manage pseudopoly configuration files"""

    def __init__(self, config_dir: Optional[Path] = None):
        self.config_dir = Path(config_dir) if config_dir else create_config_dir()
        self.config_file = self.config_dir / 'config' / 'pseudopoly.json'
        self._config: Dict[str, Any] = {}
        self.load_config()

    def load_config(self):
        """Load configuration from file"""
        if self.config_file.exists():
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    self._config = _merge_defaults(json.load(f), self._default_config())
                logger.debug(f"Configuration loaded from {self.config_file}")
            except (OSError, json.JSONDecodeError) as e:
                logger.error(f"Failed to load config: {e}")
                self._config = self._default_config()
        else:
            self._config = self._default_config()
            self.save_config()

    def save_config(self):
        """Save configuration to file"""
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self._config, f, indent=2)
            logger.debug(f"Configuration saved to {self.config_file}")
        except OSError as e:
            logger.error(f"Failed to save config: {e}")

    def _default_config(self) -> dict:
        """Default configuration"""
        return {
            'enumeration': {
                'max_factorizations': 10000,
                'strict': False,
            },
            'chains': {
                'mode': 'auto',
            },
            'oracle': {
                'limits': {'max_arity': 2, 'max_domain': 3, 'max_lattice': 6},
                'max_search': 2000000,
            },
            'closure': {
                'precompute': 'auto',
            },
            'logging': {
                'level': 'WARNING',
                'file': None,
            },
        }

    @property
    def data(self) -> Dict[str, Any]:
        return copy.deepcopy(self._config)

    def get(self, key: str, default=None):
        """Get configuration value"""
        keys = key.split('.')
        value = self._config

        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value):
        """Set configuration value"""
        keys = key.split('.')
        config = self._config

        for k in keys[:-1]:
            if not isinstance(config.get(k), dict):
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value
        self.save_config()

    def reset_to_defaults(self):
        """Reset configuration to defaults"""
        self._config = self._default_config()
        self.save_config()
