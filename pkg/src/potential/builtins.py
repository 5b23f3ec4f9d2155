"""
Named potential shapes and the profiles built from them.
All builtins tend to zero away from their support, so both asymptotes are 0.
"""

import logging
from typing import Dict, Optional

import numpy as np

from .models import PotentialProfile, Sampler
from ..errors import DomainError

BUILTIN_NAMES = ('rectangular', 'gaussian', 'double-barrier')


def rectangular(v0: float, width: float, center: float = 0.0) -> Sampler:
    """
    Rectangle of height v0 (a well when v0 < 0).

    Args:
        v0: Potential inside the rectangle
        width: Full width of the rectangle
        center: Position of the rectangle center

    Returns:
        Vectorized sampler x -> V(x)
    """
    half = 0.5 * width

    def sampler(x: np.ndarray) -> np.ndarray:
        return np.where(np.abs(np.asarray(x) - center) <= half, v0, 0.0)

    return sampler


def gaussian(v0: float, width: float, center: float = 0.0) -> Sampler:
    """
    Gaussian bump v0 * exp(-((x - center) / width)^2).

    Args:
        v0: Peak value (a well when v0 < 0)
        width: e-folding half-width
        center: Position of the peak

    Returns:
        Vectorized sampler x -> V(x)
    """
    def sampler(x: np.ndarray) -> np.ndarray:
        return v0 * np.exp(-((np.asarray(x) - center) / width) ** 2)

    return sampler


def double_barrier(v0: float, width: float, separation: float, center: float = 0.0) -> Sampler:
    """
    Two rectangular barriers of height v0 with a flat gap between them.

    Args:
        v0: Barrier height
        width: Width of each barrier
        separation: Gap between the inner barrier edges
        center: Position of the gap center

    Returns:
        Vectorized sampler x -> V(x)
    """
    offset = 0.5 * (separation + width)
    left = rectangular(v0, width, center - offset)
    right = rectangular(v0, width, center + offset)

    def sampler(x: np.ndarray) -> np.ndarray:
        return left(x) + right(x)

    return sampler


def constant(value: float) -> Sampler:
    """Sampler returning the same value everywhere."""
    def sampler(x: np.ndarray) -> np.ndarray:
        return np.full(np.shape(x), value, dtype=float)

    return sampler


def builtin_profile(name: str, params: Dict[str, float], x_min: float, x_max: float,
                    mass: Optional[Sampler] = None, hbar: float = 1.0) -> PotentialProfile:
    """
    Build a profile from a named shape.

    Args:
        name: One of BUILTIN_NAMES
        params: Shape parameters (v0, width, center, separation)
        x_min: Left domain edge
        x_max: Right domain edge
        mass: Mass sampler (unit mass when omitted)
        hbar: Reduced Planck constant

    Returns:
        PotentialProfile with zero asymptotes
    """
    v0 = params.get('v0', 0.0)
    width = params.get('width', 1.0)
    center = params.get('center', 0.0)

    if not width > 0:
        raise DomainError(f"Builtin width must be > 0, got {width!r}")

    if name == 'rectangular':
        sampler = rectangular(v0, width, center)
    elif name == 'gaussian':
        sampler = gaussian(v0, width, center)
    elif name == 'double-barrier':
        separation = params.get('separation', width)
        if not separation > 0:
            raise DomainError(f"Barrier separation must be > 0, got {separation!r}")
        sampler = double_barrier(v0, width, separation, center)
    else:
        raise DomainError(f"Unknown builtin potential: {name}")

    logging.debug(f"Built {name} profile on [{x_min}, {x_max}] with {params}")

    return PotentialProfile(
        potential=sampler,
        mass=mass if mass is not None else constant(1.0),
        x_min=x_min,
        x_max=x_max,
        v_left=0.0,
        v_right=0.0,
        source=f"builtin:{name}",
        hbar=hbar,
    )
