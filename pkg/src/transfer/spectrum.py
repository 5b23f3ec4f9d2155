"""
Transmission spectra from the total transfer product.
"""

import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .chain import total_transfer
from .matrices import OSCILLATORY, classify_region
from ..errors import NumericalFailure, SolverError
from ..potential.models import SegmentedProfile


@dataclass(frozen=True)
class ScatteringPoint:
    """Transmission and reflection at one energy; NaN when below the asymptote."""
    energy: float
    transmission: float
    reflection: float
    below_asymptote: bool = False


def transmission_point(seg: SegmentedProfile, energy: float) -> ScatteringPoint:
    """
    T = (k_N / k_1) / |t11|^2 and R = 1 - T at a single energy.

    Args:
        seg: Segmented profile
        energy: Energy E

    Returns:
        ScatteringPoint, flagged below_asymptote unless both asymptotic
        regions are oscillatory
    """
    first = classify_region(seg, 1, energy)
    last = classify_region(seg, seg.region_count, energy)

    if first.case != OSCILLATORY or last.case != OSCILLATORY:
        return ScatteringPoint(energy, math.nan, math.nan, below_asymptote=True)

    try:
        product = total_transfer(seg, energy)
    except SolverError as e:
        raise NumericalFailure(energy, str(e)) from e

    log_t11 = product.log_abs(1, 1)
    transmission = last.wavenumber / first.wavenumber * math.exp(-2.0 * log_t11)
    if not math.isfinite(transmission):
        raise NumericalFailure(energy, f"non-finite transmission from log|t11| = {log_t11}")

    return ScatteringPoint(energy, transmission, 1.0 - transmission)


def transmission_spectrum(seg: SegmentedProfile, energies: Iterable[float],
                          workers: Optional[int] = None) -> List[ScatteringPoint]:
    """
    Transmission over an energy grid, in grid order.

    Args:
        seg: Segmented profile
        energies: Energy grid
        workers: Thread count for parallel evaluation (sequential when None)

    Returns:
        One ScatteringPoint per energy
    """
    energies = [float(e) for e in energies]

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            points = list(executor.map(lambda e: transmission_point(seg, e), energies))
    else:
        points = [transmission_point(seg, e) for e in energies]

    skipped = sum(1 for p in points if p.below_asymptote)
    if skipped:
        logging.warning(f"{skipped}/{len(points)} energies lie below the asymptotic potential")

    logging.info(f"Computed transmission at {len(points) - skipped} energies "
                 f"for {seg.region_count} regions")
    return points
