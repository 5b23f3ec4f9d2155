"""
Tabulated potentials.
File format: one `x V m` triple per line, whitespace-delimited, `#` starts
a comment.
"""

import math
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .models import PotentialProfile, SOURCE_TABULATED
from ..errors import ProfileFormatError

Row = Tuple[float, float, float]


def load_tabulated(rows: Sequence[Row], row_numbers: Optional[Sequence[int]] = None,
                   hbar: float = 1.0) -> PotentialProfile:
    """
    Build a linearly interpolating profile from (x, V, m) rows.

    Args:
        rows: Samples with strictly increasing x and positive m
        row_numbers: Row labels used in error messages (1..len(rows) by default)
        hbar: Reduced Planck constant

    Returns:
        PotentialProfile with asymptotes taken from the first and last rows
    """
    if row_numbers is None:
        row_numbers = list(range(1, len(rows) + 1))

    if len(rows) < 2:
        raise ProfileFormatError(f"need at least 2 rows, got {len(rows)}",
                                 row=row_numbers[0] if row_numbers else None)

    for i, (row, number) in enumerate(zip(rows, row_numbers)):
        x, v, m = row
        if not all(math.isfinite(value) for value in (x, v, m)):
            raise ProfileFormatError(f"non-finite value in {row}", row=number)
        if not m > 0:
            raise ProfileFormatError(f"mass must be positive, got {m!r}", row=number)
        if i > 0 and not x > rows[i - 1][0]:
            raise ProfileFormatError(
                f"x must be strictly increasing ({rows[i - 1][0]!r} then {x!r})", row=number
            )

    table = np.asarray(rows, dtype=float)
    xs, vs, ms = table[:, 0].copy(), table[:, 1].copy(), table[:, 2].copy()

    def potential(x: np.ndarray) -> np.ndarray:
        return np.interp(x, xs, vs)

    def mass(x: np.ndarray) -> np.ndarray:
        return np.interp(x, xs, ms)

    return PotentialProfile(
        potential=potential,
        mass=mass,
        x_min=float(xs[0]),
        x_max=float(xs[-1]),
        v_left=float(vs[0]),
        v_right=float(vs[-1]),
        source=SOURCE_TABULATED,
        hbar=hbar,
    )


def read_tabulated(path: Union[str, Path], hbar: float = 1.0) -> PotentialProfile:
    """
    Parse a tabulated potential file.

    Args:
        path: File with `x V m` lines
        hbar: Reduced Planck constant

    Returns:
        PotentialProfile; errors name the offending line number
    """
    rows: List[Row] = []
    numbers: List[int] = []

    with open(path, 'r', encoding='utf-8') as f:
        for line_no, line in enumerate(f, start=1):
            content = line.split('#', 1)[0].strip()
            if not content:
                continue

            fields = content.split()
            if len(fields) != 3:
                raise ProfileFormatError(f"expected 3 columns (x V m), got {len(fields)}", row=line_no)
            try:
                rows.append((float(fields[0]), float(fields[1]), float(fields[2])))
            except ValueError:
                raise ProfileFormatError(f"cannot parse numbers from '{content}'", row=line_no)
            numbers.append(line_no)

    logging.info(f"Read {len(rows)} tabulated samples from {path}")
    return load_tabulated(rows, row_numbers=numbers or [1], hbar=hbar)
