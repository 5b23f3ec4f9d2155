"""
Finite-difference eigenvalue oracle.
Three-point discretization of -(hbar^2/2) d/dx (1/m) d/dx + V with hard walls
placed beyond the profile domain, Richardson-extrapolated in the grid step.
"""

import math
import logging
from typing import List, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import AccuracyError, DomainError
from ..potential.models import PotentialProfile

DEFAULT_GRID_POINTS = 20000

# Sub-samples per cell used to average V
CELL_SAMPLES = 16

# Walls sit this many decay lengths beyond the domain
PADDING_DECAY_LENGTHS = 5.0

# Largest eigenvalue shift accepted when the box is doubled
BOX_TOLERANCE = 1e-6
MAX_DOUBLINGS = 6


def _solve_box(profile: PotentialProfile, left: float, right: float, step: float,
               v_top: float, levels: Optional[int]) -> np.ndarray:
    count = int(round((right - left) / step)) - 1
    x = left + step * np.arange(1, count + 1)

    offsets = ((np.arange(CELL_SAMPLES) + 0.5) / CELL_SAMPLES - 0.5) * step
    potential = profile.potential_at((x[:, None] + offsets).ravel())
    potential = potential.reshape(count, CELL_SAMPLES).mean(axis=1)

    inverse_mass = 1.0 / profile.mass_at(left + step * (np.arange(count + 1) + 0.5))
    coupling = profile.hbar ** 2 / (2.0 * step ** 2)

    diagonal = potential + coupling * (inverse_mass[:-1] + inverse_mass[1:])
    off_diagonal = -coupling * inverse_mass[1:-1]

    if levels is not None:
        energies = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                                    select='i', select_range=(0, levels - 1))
    else:
        energies = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                                    select='v', select_range=(potential.min() - 1.0, v_top))

    energies = np.sort(energies)
    return energies[energies < v_top]


def _extrapolated(profile: PotentialProfile, padding: float, step: float,
                  v_top: float, levels: Optional[int]) -> np.ndarray:
    left, right = profile.x_min - padding, profile.x_max + padding
    coarse = _solve_box(profile, left, right, step, v_top, levels)
    fine = _solve_box(profile, left, right, 0.5 * step, v_top, levels)

    count = min(len(coarse), len(fine))
    if count < len(fine):
        logging.debug(f"Richardson step dropped {len(fine) - count} levels near the asymptote")
    return (4.0 * fine[:count] - coarse[:count]) / 3.0


def direct_ode_eigenvalues(profile: PotentialProfile, grid_points: int = DEFAULT_GRID_POINTS,
                           levels: Optional[int] = None) -> List[float]:
    """
    Bound eigenvalues by direct finite differences.

    Args:
        profile: Potential profile
        grid_points: Grid points across the initial box (>= 500); the step
            is kept fixed while the box grows
        levels: Keep only the lowest levels (all states below the asymptote when None)

    Returns:
        Ascending absolute energies below min(V_left, V_right)
    """
    if grid_points < 500:
        raise DomainError(f"grid_points must be >= 500, got {grid_points}")
    if levels is not None and levels < 1:
        raise DomainError(f"levels must be >= 1, got {levels}")

    v_top = profile.v_asymptote
    grid = np.linspace(profile.x_min, profile.x_max, 4097)
    depth = v_top - float(profile.potential_at(grid).min())
    if depth <= 0:
        logging.warning("Profile has no well below its asymptotes")
        return []

    mass = min(profile.m_left, profile.m_right)

    def decay_length(binding: float) -> float:
        return profile.hbar / math.sqrt(2.0 * mass * binding)

    padding = PADDING_DECAY_LENGTHS * decay_length(0.1 * depth)
    step = (profile.width + 2.0 * padding) / grid_points

    energies = _extrapolated(profile, padding, step, v_top, levels)
    if len(energies):
        padding = max(padding, PADDING_DECAY_LENGTHS * decay_length(v_top - energies[-1]))

    previous = _extrapolated(profile, padding, step, v_top, levels)
    shift = math.inf
    for _ in range(MAX_DOUBLINGS):
        padding *= 2.0
        current = _extrapolated(profile, padding, step, v_top, levels)
        if len(current) == len(previous):
            shift = float(np.abs(current - previous).max()) if len(current) else 0.0
            if shift <= BOX_TOLERANCE:
                logging.info(f"Finite-difference oracle converged with {len(current)} levels "
                             f"(padding {padding:.3g}, step {step:.3g})")
                return current.tolist()
        logging.info(f"Doubling oracle box padding to {padding:.3g}")
        previous = current

    raise AccuracyError("Finite-difference eigenvalues did not settle under box doubling", shift)
