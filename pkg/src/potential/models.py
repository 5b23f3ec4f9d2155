"""
Potential profile types.
PotentialProfile is the continuous description of V(x) and m(x);
SegmentedProfile is its alternating wave-region / junction decomposition.
"""

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from ..errors import ConfigurationError, DomainError

Sampler = Callable[[np.ndarray], np.ndarray]

# Probe points used to check m(x) > 0 at construction
MASS_CHECK_POINTS = 257

# Source tags
SOURCE_TABULATED = 'tabulated'
SOURCE_CALLBACK = 'callback'


def _sample(sampler: Sampler, x: np.ndarray) -> np.ndarray:
    values = np.asarray(sampler(x), dtype=float)
    return np.broadcast_to(values, x.shape).astype(float)


@dataclass(frozen=True)
class PotentialProfile:
    """
    Potential and effective mass over a finite domain plus asymptotic values.

    Outside [x_min, x_max] the potential takes v_left / v_right and the mass
    takes its value at the nearest domain edge.
    """
    potential: Sampler
    mass: Sampler
    x_min: float
    x_max: float
    v_left: float
    v_right: float
    source: str = SOURCE_CALLBACK
    hbar: float = 1.0

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise DomainError(f"Domain needs x_min < x_max, got ({self.x_min}, {self.x_max})")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be > 0, got {self.hbar!r}")

        grid = np.linspace(self.x_min, self.x_max, MASS_CHECK_POINTS)
        masses = _sample(self.mass, grid)
        if not np.all(masses > 0):
            bad = grid[np.argmin(masses)]
            raise DomainError(f"Mass must be positive, m({bad!r}) = {masses.min()!r}")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def m_left(self) -> float:
        return float(_sample(self.mass, np.array([self.x_min]))[0])

    @property
    def m_right(self) -> float:
        return float(_sample(self.mass, np.array([self.x_max]))[0])

    @property
    def v_asymptote(self) -> float:
        """Lower of the two asymptotic potentials (top of the bound window)."""
        return min(self.v_left, self.v_right)

    def potential_at(self, x) -> np.ndarray:
        """Evaluate V(x) with the asymptotes outside the domain."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        inside = _sample(self.potential, np.clip(x, self.x_min, self.x_max))
        return np.where(x < self.x_min, self.v_left,
                        np.where(x > self.x_max, self.v_right, inside))

    def mass_at(self, x) -> np.ndarray:
        """Evaluate m(x), held constant outside the domain."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return _sample(self.mass, np.clip(x, self.x_min, self.x_max))


@dataclass(frozen=True)
class SegmentedProfile:
    """
    Alternating wave regions and ultra-short junctions.

    Regions are numbered 1..N from the left (N odd); odd regions are wave
    regions, even regions are junctions of width 2*half_width. Region j
    spans [a_{j-1}, a_j] with a_0 = -inf and a_N = +inf. The tuples are
    stored 0-based: potentials[j - 1] is V_j, breakpoints[j - 1] is a_j.
    """
    breakpoints: Tuple[float, ...]
    potentials: Tuple[float, ...]
    masses: Tuple[float, ...]
    half_width: float
    hbar: float = 1.0

    def __post_init__(self):
        n = len(self.potentials)
        if n < 3 or n % 2 == 0:
            raise ConfigurationError(f"Region count must be odd and >= 3, got {n}")
        if len(self.masses) != n or len(self.breakpoints) != n - 1:
            raise ConfigurationError(
                f"Need {n} masses and {n - 1} breakpoints, got "
                f"{len(self.masses)} and {len(self.breakpoints)}"
            )
        if not self.half_width > 0:
            raise ConfigurationError(f"half_width must be > 0, got {self.half_width!r}")
        if any(m <= 0 for m in self.masses):
            raise ConfigurationError("Region masses must be positive")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ConfigurationError("Breakpoints must be strictly increasing")

        junction_width = 2.0 * self.half_width
        for left, right in zip(self.breakpoints[0::2], self.breakpoints[1::2]):
            if abs((right - left) - junction_width) > 1e-9 * max(junction_width, abs(right), abs(left)):
                raise ConfigurationError(
                    f"Junction [{left}, {right}] does not have width 2*delta_x = {junction_width}"
                )

        centers = self.junction_centers
        spacings = np.diff(centers)
        if len(spacings) and not junction_width < spacings.min():
            raise ConfigurationError(
                f"2*delta_x = {junction_width} must be smaller than the junction "
                f"spacing {spacings.min()}"
            )

    @classmethod
    def single_junction(cls, v_junction: float, half_width: float, mass: float = 1.0,
                        hbar: float = 1.0, v_outside: float = 0.0,
                        center: float = 0.0) -> 'SegmentedProfile':
        """One ultra-short junction between two flat asymptotic regions."""
        return cls(
            breakpoints=(center - half_width, center + half_width),
            potentials=(v_outside, v_junction, v_outside),
            masses=(mass, mass, mass),
            half_width=half_width,
            hbar=hbar,
        )

    @property
    def region_count(self) -> int:
        return len(self.potentials)

    @property
    def junction_count(self) -> int:
        return (len(self.potentials) - 1) // 2

    @property
    def junction_centers(self) -> np.ndarray:
        a = np.asarray(self.breakpoints)
        return 0.5 * (a[0::2] + a[1::2])

    @property
    def v_min(self) -> float:
        return min(self.potentials)

    @property
    def bound_window(self) -> Tuple[float, float]:
        """Open energy interval (V_min, min(V_1, V_N)) holding bound states."""
        return self.v_min, min(self.potentials[0], self.potentials[-1])

    @property
    def length_scale(self) -> float:
        return max(self.breakpoints[-1] - self.breakpoints[0], 2.0 * self.half_width)

    def region_bounds(self, j: int) -> Tuple[float, float]:
        """Edges of 1-based region j, infinite for the asymptotic regions."""
        left = self.breakpoints[j - 2] if j > 1 else -np.inf
        right = self.breakpoints[j - 1] if j < self.region_count else np.inf
        return left, right
