"""
Analytic finite square well.
Energies are measured from the well bottom.
"""

import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy import optimize

from ..errors import DomainError

# Bisection tolerance on the dimensionless wavenumber z = k * width / 2
Z_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RectangularWellSpec:
    """
    Finite square well.

    Args:
        depth: Asymptotic potential minus the potential inside (> 0)
        width: Full width of the well (> 0)
        mass: Particle mass
        hbar: Reduced Planck constant
    """
    depth: float
    width: float
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.depth > 0:
            raise DomainError(f"Well depth must be > 0, got {self.depth!r}")
        if not self.width > 0:
            raise DomainError(f"Well width must be > 0, got {self.width!r}")

    @property
    def strength(self) -> float:
        """Dimensionless strength z0 = (width / 2) sqrt(2 m depth) / hbar."""
        return 0.5 * self.width * math.sqrt(2.0 * self.mass * self.depth) / self.hbar

    @property
    def bound_state_count(self) -> int:
        return math.ceil(2.0 * self.strength / math.pi)

    def energy_from_z(self, z: float) -> float:
        return 2.0 * self.hbar ** 2 * z ** 2 / (self.mass * self.width ** 2)


def _roots_in_z(spec: RectangularWellSpec) -> List[float]:
    z0 = spec.strength

    def even(z: float) -> float:
        return z * math.sin(z) - math.sqrt(max(z0 ** 2 - z ** 2, 0.0)) * math.cos(z)

    def odd(z: float) -> float:
        return -z * math.cos(z) - math.sqrt(max(z0 ** 2 - z ** 2, 0.0)) * math.sin(z)

    roots = []
    n = 0
    while True:
        lo = n * math.pi
        if lo >= z0:
            break
        roots.append(optimize.bisect(even, lo, min(lo + 0.5 * math.pi, z0), xtol=Z_TOLERANCE))

        lo = n * math.pi + 0.5 * math.pi
        if lo >= z0:
            break
        roots.append(optimize.bisect(odd, lo, min((n + 1) * math.pi, z0), xtol=Z_TOLERANCE))
        n += 1

    return roots


def rect_well_eigenvalues(spec: RectangularWellSpec) -> List[float]:
    """
    Bound energies of a finite square well from the even/odd matching conditions.

    Args:
        spec: Well parameters

    Returns:
        Ascending energies measured from the well bottom
    """
    return [spec.energy_from_z(z) for z in _roots_in_z(spec)]


def rect_well_eigenfunction(spec: RectangularWellSpec, level: int, x, center: float = 0.0) -> np.ndarray:
    """
    Normalized eigenfunction of a finite square well.

    Args:
        spec: Well parameters
        level: 0-based level index (even levels are even functions)
        x: Sample positions
        center: Well center

    Returns:
        Real samples, largest lobe positive
    """
    roots = _roots_in_z(spec)
    if not 0 <= level < len(roots):
        raise DomainError(f"Level {level} out of range, the well has {len(roots)} states")

    z = roots[level]
    half = 0.5 * spec.width
    k = z / half
    kappa = math.sqrt(spec.strength ** 2 - z ** 2) / half
    inside = np.cos if level % 2 == 0 else np.sin

    def shape(u: np.ndarray) -> np.ndarray:
        edge = inside(k * half)
        return np.where(
            np.abs(u) <= half,
            inside(k * u),
            np.sign(u) ** level * edge * np.exp(-kappa * (np.abs(u) - half)),
        )

    parity = 1.0 if level % 2 == 0 else -1.0
    interior = half + parity * math.sin(k * spec.width) / (2.0 * k)
    exterior = inside(k * half) ** 2 / kappa
    norm = math.sqrt(interior + exterior)

    grid = np.linspace(-half, half, 64 * (level + 1) + 1)
    grid_values = shape(grid)
    sign = 1.0 if grid_values[np.argmax(np.abs(grid_values))] >= 0 else -1.0

    u = np.asarray(x, dtype=float) - center
    return sign * shape(u) / norm
