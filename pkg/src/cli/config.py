"""
Run configuration.
A run file is a flat YAML mapping of scalar values; command-line overrides
go through the same validation. Errors name the key and, for file entries,
the file and line.
"""

import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union, get_type_hints

import yaml

from ..errors import ConfigError
from ..potential.builtins import BUILTIN_NAMES

POTENTIAL_CHOICES = BUILTIN_NAMES + ('tabulated',)
FORMAT_CHOICES = ('csv', 'json')

COMMAND_LINE = 'command line'


@dataclass(frozen=True)
class RunConfig:
    """All parameters of one solver run."""
    potential: str = 'rectangular'
    potential_file: Optional[str] = None
    v0: float = 0.0
    width: float = 1.0
    center: float = 0.0
    separation: float = 1.0
    x_min: float = -1.0
    x_max: float = 1.0
    mass: float = 1.0
    mass_file: Optional[str] = None
    hbar: float = 1.0
    junctions: int = 1
    delta_x: float = 0.02
    e_min: float = 0.01
    e_max: float = 10.0
    e_points: int = 1000
    scan_points: int = 2000
    level: int = 0
    x_points: int = 401
    oracle: bool = False
    oracle_grid_points: int = 20000
    workers: int = 1
    output: Optional[str] = None
    format: str = 'csv'
    laplace_s_re: float = 1.0
    laplace_s_im: float = 0.0
    laplace_v0: float = 1.0
    laplace_delta_x: float = 0.07
    packet_center: float = 0.0
    packet_width: float = 1.0
    packet_momentum: float = 0.0
    ivt: bool = False


FIELD_TYPES = get_type_hints(RunConfig)

# (source, line) for every key that was set explicitly
Origins = Dict[str, Tuple[str, Optional[int]]]


def _coerce(key: str, value: Any, source: str, line: Optional[int]) -> Any:
    expected = FIELD_TYPES[key]

    if expected is bool:
        if isinstance(value, bool):
            return value
    elif expected is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif expected is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif expected is str:
        if isinstance(value, str):
            return value
    else:
        # Optional[str]
        if value is None or isinstance(value, str):
            return value

    type_name = getattr(expected, '__name__', 'string or null')
    raise ConfigError(key, f"expected {type_name}, got {value!r}", source, line)


def _set(values: Dict[str, Any], origins: Origins, key: str, value: Any,
         source: str, line: Optional[int]):
    if key not in FIELD_TYPES:
        raise ConfigError(key, "unknown configuration key", source, line)
    values[key] = _coerce(key, value, source, line)
    origins[key] = (source, line)


def _read_file(path: Path, values: Dict[str, Any], origins: Origins):
    source = str(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigError('config', f"cannot read run file: {e}", source)

    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        raise ConfigError('config', f"invalid YAML: {e}", source,
                          mark.line + 1 if mark is not None else None)

    if root is None:
        return
    if not isinstance(root, yaml.MappingNode):
        raise ConfigError('config', "run file must be a flat key: value mapping", source, 1)

    for key_node, value_node in root.value:
        key = key_node.value
        line = key_node.start_mark.line + 1
        if not isinstance(value_node, yaml.ScalarNode):
            raise ConfigError(key, "value must be a scalar", source, line)
        _set(values, origins, key, data[key], source, line)


def _validate(config: RunConfig, origins: Origins):
    def fail(key: str, message: str):
        source, line = origins.get(key, ('defaults', None))
        raise ConfigError(key, message, source, line)

    if config.potential not in POTENTIAL_CHOICES:
        fail('potential', f"must be one of {', '.join(POTENTIAL_CHOICES)}, got '{config.potential}'")
    if config.potential == 'tabulated':
        if not config.potential_file:
            fail('potential_file', "required when potential is 'tabulated'")
        if not Path(config.potential_file).exists():
            fail('potential_file', f"file not found: {config.potential_file}")
    if config.mass_file and not Path(config.mass_file).exists():
        fail('mass_file', f"file not found: {config.mass_file}")
    if config.format not in FORMAT_CHOICES:
        fail('format', f"must be csv or json, got '{config.format}'")

    if not config.x_min < config.x_max:
        fail('x_max', f"must exceed x_min ({config.x_min}), got {config.x_max}")
    for key in ('mass', 'hbar', 'width', 'separation', 'delta_x', 'laplace_s_re', 'packet_width'):
        if not getattr(config, key) > 0:
            fail(key, f"must be > 0, got {getattr(config, key)}")
    if config.laplace_delta_x < 0:
        fail('laplace_delta_x', f"must be >= 0, got {config.laplace_delta_x}")

    if config.junctions < 1:
        fail('junctions', f"must be >= 1, got {config.junctions}")
    if config.potential != 'tabulated':
        spacing = (config.x_max - config.x_min) / config.junctions
        if not 2.0 * config.delta_x < spacing:
            fail('delta_x', f"2*delta_x = {2.0 * config.delta_x} must be smaller than the "
                            f"junction spacing {spacing}")

    if not config.e_min < config.e_max:
        fail('e_max', f"must exceed e_min ({config.e_min}), got {config.e_max}")
    if config.e_points < 1:
        fail('e_points', f"must be >= 1, got {config.e_points}")
    if config.scan_points < 100:
        fail('scan_points', f"must be >= 100, got {config.scan_points}")
    if config.level < 0:
        fail('level', f"must be >= 0, got {config.level}")
    if config.x_points < 2:
        fail('x_points', f"must be >= 2, got {config.x_points}")
    if config.oracle_grid_points < 500:
        fail('oracle_grid_points', f"must be >= 500, got {config.oracle_grid_points}")
    if config.workers < 1:
        fail('workers', f"must be >= 1, got {config.workers}")


def parse_override(text: str) -> Tuple[str, Any]:
    """Split a KEY=VALUE override; the value is read as a YAML scalar."""
    if '=' not in text:
        raise ConfigError(text, "override must look like KEY=VALUE", COMMAND_LINE)
    key, raw = text.split('=', 1)
    key = key.strip()
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError:
        raise ConfigError(key, f"cannot parse value '{raw}'", COMMAND_LINE)
    return key, value


def load_run_config(path: Optional[Union[str, Path]] = None,
                    overrides: Optional[Dict[str, Any]] = None,
                    defaults: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Build and validate a run configuration.

    Args:
        path: Flat YAML run file (optional)
        overrides: Command-line values, applied last
        defaults: Solver defaults from the settings file, applied first

    Returns:
        Validated RunConfig
    """
    values: Dict[str, Any] = {}
    origins: Origins = {}

    for key, value in (defaults or {}).items():
        if key in FIELD_TYPES:
            _set(values, origins, key, value, 'settings', None)

    if path is not None:
        _read_file(Path(path), values, origins)

    for key, value in (overrides or {}).items():
        _set(values, origins, key, value, COMMAND_LINE, None)

    config = replace(RunConfig(), **values)
    _validate(config, origins)

    logging.info(f"Run configuration: " + ", ".join(
        f"{f.name}={getattr(config, f.name)!r}" for f in fields(config) if f.name in values
    ))
    return config
