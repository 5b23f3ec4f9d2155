"""
Application settings (config/config.yaml) and logging setup.
"""

import sys
import logging
from pathlib import Path
from typing import Dict, Optional, Union

import yaml

project_root = Path(__file__).parent.parent.parent

DEFAULT_SETTINGS_PATH = project_root / 'config' / 'config.yaml'

DEFAULT_SETTINGS = {
    'logging': {
        'level': 'INFO',
        'file': None,
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    },
    'solver': {},
}


def load_settings(path: Optional[Union[str, Path]] = None) -> Dict:
    """
    Load application settings, falling back to built-in defaults.

    Args:
        path: Settings file (config/config.yaml by default)

    Returns:
        Dict with 'logging' and 'solver' sections
    """
    settings = {section: dict(values) for section, values in DEFAULT_SETTINGS.items()}
    path = Path(path) if path is not None else DEFAULT_SETTINGS_PATH

    if path.exists():
        with open(path, 'r', encoding='utf-8') as f:
            loaded = yaml.safe_load(f) or {}
        for section, values in loaded.items():
            settings.setdefault(section, {}).update(values or {})

    return settings


def setup_logging(settings: Dict) -> Optional[Path]:
    """
    Configure root logging on stderr plus an optional log file.

    Args:
        settings: Loaded settings

    Returns:
        Path of the log file, or None when file logging is off
    """
    log_settings = settings.get('logging', {})
    handlers = [logging.StreamHandler(sys.stderr)]

    log_file = log_settings.get('file')
    if log_file:
        log_file = Path(log_file)
        if not log_file.is_absolute():
            log_file = project_root / log_file
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))

    logging.basicConfig(
        level=getattr(logging, str(log_settings.get('level', 'INFO')).upper(), logging.INFO),
        format=log_settings.get('format', DEFAULT_SETTINGS['logging']['format']),
        handlers=handlers,
        force=True,
    )

    return log_file
