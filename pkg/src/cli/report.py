"""
Result tables: CSV with unit headers or JSON, written deterministically.
"""

import sys
import json
import math
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

FLOAT_FORMAT = '%.17g'


@dataclass
class Report:
    """
    Output of one subcommand.

    Args:
        command: Subcommand name
        table: Result rows; column labels carry their units
        metadata: Run parameters and scalar results, written before the table
    """
    command: str
    table: pd.DataFrame
    metadata: Dict[str, Any] = field(default_factory=dict)


def _plain(value: Any) -> Any:
    """Convert numpy scalars to Python values, NaN to None."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _metadata_text(value: Any) -> str:
    value = _plain(value)
    if value is None:
        return 'nan'
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def render_csv(report: Report) -> str:
    header = ''.join(f"# {key} = {_metadata_text(value)}\n"
                     for key, value in report.metadata.items())
    body = report.table.to_csv(index=False, float_format=FLOAT_FORMAT,
                               na_rep='nan', lineterminator='\n')
    return f"# command = {report.command}\n" + header + body


def render_json(report: Report) -> str:
    payload = {
        'command': report.command,
        'metadata': {key: _plain(value) for key, value in report.metadata.items()},
        'columns': [str(c) for c in report.table.columns],
        'rows': [[_plain(v) for v in row] for row in report.table.itertuples(index=False, name=None)],
    }
    return json.dumps(payload, indent=2, allow_nan=False) + '\n'


def render(report: Report, fmt: str = 'csv') -> str:
    if fmt == 'json':
        return render_json(report)
    return render_csv(report)


def write_report(report: Report, output: Optional[Union[str, Path]] = None,
                 fmt: str = 'csv') -> Optional[Path]:
    """
    Write a report to a file, or to stdout when no path is given.

    Args:
        report: Report to write
        output: Destination path
        fmt: 'csv' or 'json'

    Returns:
        Path written, or None for stdout
    """
    text = render(report, fmt)

    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None

    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)

    logging.info(f"Wrote {len(report.table)} rows to {path}")
    return path
