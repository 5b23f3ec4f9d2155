"""
Bound states of a segmented profile.

With the right asymptotic amplitudes fixed to (A_N, B_N) = (0, 1) the left
amplitudes are (t12, t22); B_1 multiplies the basis function that grows
towards -inf, so bound energies are the zeros of t22.
"""

import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from .chain import junction_pair_matrix, total_transfer
from .matrices import CASE_TOLERANCE, EVANESCENT, OSCILLATORY, RegionWave, classify_region
from ..errors import DomainError, StaleEnergyError
from ..potential.models import SegmentedProfile

DEFAULT_SCAN_POINTS = 2000

# Tolerances relative to the bound window width
ROOT_TOLERANCE = 1e-10
DUPLICATE_TOLERANCE = 1e-8
POLISH_BRACKET = 1e-8

# Closest approach of the extra scan samples to the top of the bound window
TAIL_FLOOR = 1e-8

# |det| accepted as a root when no sign change brackets the energy
STALE_TOLERANCE = 1e-12

# Samples below this fraction of the peak are ignored when counting nodes
NODE_THRESHOLD = 1e-10


@dataclass(frozen=True)
class BoundState:
    """
    Normalized bound state.

    Args:
        energy: Absolute eigenvalue
        energy_from_bottom: Eigenvalue measured from the lowest region potential
        node_count: Number of interior zeros
        amplitudes: Wave regions (odd indices) with normalized (A, B) amplitudes
        x: Sample positions
        psi: Real wavefunction samples at x
        continuity_error: Largest jump at a breakpoint relative to max |psi|
    """
    energy: float
    energy_from_bottom: float
    node_count: int
    amplitudes: Tuple[RegionWave, ...]
    x: np.ndarray
    psi: np.ndarray
    continuity_error: float


def _check_window(seg: SegmentedProfile, energy: float) -> Tuple[float, float]:
    lo, hi = seg.bound_window
    if not lo < energy < hi:
        raise DomainError(f"E={energy!r} lies outside the bound window ({lo}, {hi})")
    return lo, hi


def bound_determinant(seg: SegmentedProfile, energy: float) -> float:
    """
    Real function of E vanishing exactly at bound eigenvalues.

    Args:
        seg: Segmented profile
        energy: Energy inside (V_min, min(V_1, V_N))

    Returns:
        Re(t22) divided by the largest entry magnitude of the product
    """
    _check_window(seg, energy)
    mantissa = total_transfer(seg, energy).mantissa
    return float(mantissa[1, 1].real / np.abs(mantissa).max())


def _map(func, values: Sequence[float], workers: Optional[int]) -> List[float]:
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(func, values))
    return [func(v) for v in values]


def _tail_samples(seg: SegmentedProfile, hi: float, step: float, width: float) -> np.ndarray:
    """
    Samples hi - step * 2**-k between the last cell midpoint and the window top.

    They stop before the asymptotic regions enter the linear band, where the
    determinant no longer separates growing and decaying tails.
    """
    mass = min(seg.masses[0], seg.masses[-1])
    band = CASE_TOLERANCE * max(abs(hi), seg.hbar ** 2 / (2.0 * mass * seg.length_scale ** 2))
    floor = max(TAIL_FLOOR * width, 2.0 * band)

    gaps = []
    gap = 0.25 * step
    while gap > floor:
        gaps.append(gap)
        gap *= 0.5
    return hi - np.asarray(gaps)


def eigenvalues(seg: SegmentedProfile, scan_points: int = DEFAULT_SCAN_POINTS,
                workers: Optional[int] = None) -> List[float]:
    """
    Bound eigenvalues by sign-change scan and bisection.

    Args:
        seg: Segmented profile
        scan_points: Number of scan cells over the bound window (>= 100)
        workers: Thread count for the scan (sequential when None)

    Returns:
        Ascending absolute energies; empty when the profile has no well
    """
    if scan_points < 100:
        raise DomainError(f"scan_points must be >= 100, got {scan_points}")

    lo, hi = seg.bound_window
    if not lo < hi:
        logging.warning(f"No bound window: V_min={lo} is not below the asymptotes ({hi})")
        return []

    width = hi - lo
    step = width / scan_points
    grid = np.concatenate([lo + (np.arange(scan_points) + 0.5) * step, _tail_samples(seg, hi, step, width)])
    values = _map(lambda e: bound_determinant(seg, e), grid.tolist(), workers)

    def det(e: float) -> float:
        return bound_determinant(seg, e)

    roots: List[float] = []
    for i, value in enumerate(values):
        if value == 0.0:
            roots.append(float(grid[i]))
        elif i + 1 < len(values) and value * values[i + 1] < 0:
            roots.append(optimize.bisect(det, grid[i], grid[i + 1],
                                         xtol=ROOT_TOLERANCE * width, maxiter=200))

    unique: List[float] = []
    for root in sorted(roots):
        if not unique or root - unique[-1] > DUPLICATE_TOLERANCE * width:
            unique.append(root)

    logging.info(f"Found {len(unique)} bound states in ({lo}, {hi}) "
                 f"with {scan_points} scan points")
    return unique


def _polish(seg: SegmentedProfile, energy: float) -> float:
    lo, hi = _check_window(seg, energy)
    width = hi - lo
    delta = POLISH_BRACKET * width

    def det(e: float) -> float:
        return bound_determinant(seg, e)

    a = max(energy - delta, lo + 0.5 * delta)
    b = min(energy + delta, hi - 0.5 * delta)
    fa, fb = det(a), det(b)

    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb < 0:
        return optimize.brentq(det, a, b, xtol=1e-14 * width)

    value = det(energy)
    if abs(value) < STALE_TOLERANCE:
        return energy
    raise StaleEnergyError(energy, value)


def _region_amplitudes(seg: SegmentedProfile, energy: float) -> Dict[int, RegionWave]:
    """Back-substitute amplitudes from (A_N, B_N) = (0, 1), each with its own log scale."""
    n = seg.region_count
    coefficients = np.array([0.0, 1.0], dtype=complex)
    log_scale = 0.0
    scaled = {n: (coefficients, log_scale)}

    for j in range(n - 2, 0, -2):
        pair = junction_pair_matrix(seg, j, energy)
        coefficients = pair.mantissa @ coefficients
        log_scale += pair.log_scale
        peak = float(np.abs(coefficients).max())
        if peak > 0:
            coefficients = coefficients / peak
            log_scale += math.log(peak)
        scaled[j] = (coefficients, log_scale)

    # Decay towards -inf
    first, first_log = scaled[1]
    scaled[1] = (np.array([first[0], 0.0], dtype=complex), first_log)

    reference = max(log for _, log in scaled.values())
    waves = {}
    for j, (c, log) in scaled.items():
        factor = math.exp(log - reference)
        wave = classify_region(seg, j, energy)
        waves[j] = RegionWave(wave.index, wave.case, wave.wavenumber, wave.origin,
                              (complex(c[0] * factor), complex(c[1] * factor)))
    return waves


def _evaluate(seg: SegmentedProfile, waves: Dict[int, RegionWave], x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    region = np.searchsorted(np.asarray(seg.breakpoints), x, side='right') + 1
    values = np.zeros(x.shape, dtype=complex)

    for j in range(1, seg.region_count + 1):
        mask = region == j
        if not np.any(mask):
            continue
        if j % 2 == 1:
            values[mask] = waves[j].values(x[mask])
        else:
            # psi is flat across a junction
            edge = np.array([seg.breakpoints[j - 2]])
            values[mask] = waves[j - 1].values(edge)[0]
    return values


def _norm_squared(seg: SegmentedProfile, waves: Dict[int, RegionWave]) -> float:
    n = seg.region_count
    first, last = waves[1], waves[n]
    total = abs(first.amplitudes[0]) ** 2 / (2.0 * first.wavenumber)
    total += abs(last.amplitudes[1]) ** 2 / (2.0 * last.wavenumber)

    for j in range(2, n):
        left, right = seg.region_bounds(j)
        if j % 2 == 0:
            edge = np.array([left])
            total += abs(waves[j - 1].values(edge)[0]) ** 2 * (right - left)
        else:
            wave = waves[j]
            value, _ = integrate.quad(
                lambda t: abs(wave.values(np.array([t]))[0]) ** 2,
                left, right, epsabs=0.0, epsrel=1e-12, limit=500
            )
            total += value
    return total


def _node_grid(seg: SegmentedProfile, waves: Dict[int, RegionWave]) -> np.ndarray:
    pieces = []
    for j in range(3, seg.region_count - 1, 2):
        left, right = seg.region_bounds(j)
        count = 32
        if waves[j].case == OSCILLATORY:
            count += int(8 * waves[j].wavenumber * (right - left) / math.pi)
        pieces.append(np.linspace(left, right, count))
    if not pieces:
        return np.asarray(seg.breakpoints, dtype=float)
    return np.concatenate(pieces)


def _count_nodes(values: np.ndarray) -> int:
    peak = np.abs(values).max()
    significant = values[np.abs(values) > NODE_THRESHOLD * peak]
    return int(np.count_nonzero(np.diff(np.sign(significant)) != 0))


def _continuity_error(seg: SegmentedProfile, waves: Dict[int, RegionWave], peak: float) -> float:
    worst = 0.0
    for j in range(2, seg.region_count, 2):
        right_edge = np.array([seg.breakpoints[j - 1]])
        flat = waves[j - 1].values(np.array([seg.breakpoints[j - 2]]))[0]
        following = waves[j + 1].values(right_edge)[0]
        worst = max(worst, abs(flat - following))
    return worst / peak if peak > 0 else 0.0


def eigenfunction(seg: SegmentedProfile, energy: float, sample_grid: Sequence[float]) -> BoundState:
    """
    Normalized eigenfunction at a bound eigenvalue.

    The energy is first polished to the nearby root of the bound determinant;
    an energy with no root in its immediate neighbourhood is rejected.

    Args:
        seg: Segmented profile
        energy: Eigenvalue from eigenvalues()
        sample_grid: Positions where psi is sampled

    Returns:
        BoundState with psi normalized to unit norm and its largest lobe positive
    """
    energy = _polish(seg, energy)
    waves = _region_amplitudes(seg, energy)
    if waves[1].case != EVANESCENT or waves[seg.region_count].case != EVANESCENT:
        raise DomainError(f"E={energy!r} is too close to the asymptotic potential")

    norm = math.sqrt(_norm_squared(seg, waves))
    dense = _node_grid(seg, waves)
    dense_values = _evaluate(seg, waves, dense).real
    sign = 1.0 if dense_values[np.argmax(np.abs(dense_values))] >= 0 else -1.0
    factor = sign / norm

    waves = {
        j: RegionWave(w.index, w.case, w.wavenumber, w.origin,
                      (w.amplitudes[0] * factor, w.amplitudes[1] * factor))
        for j, w in waves.items()
    }

    x = np.asarray(sample_grid, dtype=float)
    psi = _evaluate(seg, waves, x).real
    dense_values = dense_values * factor
    peak = float(np.abs(dense_values).max())

    state = BoundState(
        energy=energy,
        energy_from_bottom=energy - seg.v_min,
        node_count=_count_nodes(dense_values),
        amplitudes=tuple(waves[j] for j in sorted(waves)),
        x=x,
        psi=psi,
        continuity_error=_continuity_error(seg, waves, peak),
    )

    if state.continuity_error > 1e-8:
        logging.warning(f"Eigenfunction at E={energy} has continuity error {state.continuity_error:.2e}")
    return state


def bound_states(seg: SegmentedProfile, sample_grid: Sequence[float],
                 scan_points: int = DEFAULT_SCAN_POINTS,
                 workers: Optional[int] = None) -> List[BoundState]:
    """All bound states with their eigenfunctions, ascending in energy."""
    return [eigenfunction(seg, e, sample_grid)
            for e in eigenvalues(seg, scan_points, workers)]
